import numpy as np
import pytest

from arperfect import fixtures
from arperfect import homotopy as ho
from arperfect import io
from arperfect import modrep as mr
from arperfect.artheory import heart_complex, projective_chain_complex
from arperfect.errors import AlgebraMismatch, DimensionMismatch, FormatError


@pytest.fixture(scope="module")
def a3():
    return fixtures.algebra("a3")


@pytest.fixture(scope="module")
def a5():
    return fixtures.algebra("a5")


def V(alg, k):
    return mr.uniserial(alg, 0, k)


def elem(alg, k):
    """Single-entry element matrix holding the basis element b_k."""
    out = ho.ezeros(alg, 1, 1)
    out[0, 0, k] = 1
    return out


def test_differentials_must_square_to_zero(a3):
    x = elem(a3, 1)
    with pytest.raises(DimensionMismatch):
        ho.PerfectComplex(a3, {2: (0,), 1: (0,), 0: (0,)}, {2: x, 1: x})


def test_shift_moves_degrees(a3):
    c = ho.shift(ho.regular_complex(a3), 2)
    assert c.lo == c.hi == 2
    c1 = projective_chain_complex(a3, 0, 1)
    s = ho.shift(c1, 1)
    assert (s.lo, s.hi) == (1, 2)
    assert np.array_equal(s.diff(2), (-c1.diff(1)) % 2)


def test_homology_of_stalk(a3):
    dims = ho.homology_dims(ho.stalk(a3, (0,)))
    assert {n: d for n, d in dims.items() if d} == {0: 3}


def test_homology_of_socle_map(a3):
    c1 = projective_chain_complex(a3, 0, 1)
    assert mr.is_isomorphic(ho.homology(c1, 1), V(a3, 2))
    assert mr.is_isomorphic(ho.homology(c1, 0), V(a3, 2))


def test_resolution_homology(a3):
    pm = ho.from_resolution(V(a3, 1), 1)
    assert mr.is_isomorphic(ho.homology(pm, 0), V(a3, 1))
    # H_1 is the second syzygy, again the simple
    assert mr.is_isomorphic(ho.homology(pm, 1), V(a3, 1))


def test_minimize_contractible(a3):
    idc = ho.identity_map(ho.stalk(a3, (0,)))
    assert ho.minimize(ho.cone(idc)).is_zero()


def test_minimize_keeps_minimal(a3):
    c1 = projective_chain_complex(a3, 0, 1)
    m = ho.minimize(c1)
    assert m.is_minimal() and m.types == c1.types


def test_minimize_strips_contractible_summand(a3):
    lam = ho.regular_complex(a3)
    contractible = ho.cone(ho.identity_map(ho.stalk(a3, (0,), 3)))
    m = ho.minimize(ho.direct_sum(lam, contractible))
    assert m.types == {0: (0,)}


def test_minimize_maps_are_homotopy_inverse(a5):
    c = ho.direct_sum(ho.from_resolution(V(a5, 2), 2), ho.cone(ho.identity_map(ho.stalk(a5, (0,), 1))))
    model = ho.minimize_with_maps(c)
    assert model.complex.total_dim() == 15
    back = model.projection.then(model.inclusion)
    assert ho.hom_space(c, c).is_nullhomotopic(back.scale_add(ho.identity_map(c), -1))
    there_and_back = model.inclusion.then(model.projection)
    m = model.complex
    assert ho.hom_space(m, m).is_nullhomotopic(there_and_back.scale_add(ho.identity_map(m), -1))


def test_cone_of_socle_map_is_presentation(a3):
    p = ho.stalk(a3, (0,))
    f = ho.ChainMap(p, p, {0: elem(a3, 2)})
    c = ho.cone(f)
    omega_inv = mr.cosyzygy(mr.simple(a3, 0))
    assert ho.is_isomorphic(c, ho.from_resolution(omega_inv, 1))


def test_cone_of_zero_map(a5):
    c = ho.from_resolution(V(a5, 2), 1)
    d = ho.stalk(a5, (0,), 4)
    expected = ho.direct_sum(ho.shift(c, 1), d)
    assert ho.is_isomorphic(ho.cone(ho.zero_map(c, d)), expected)


def test_hom_examples(a3):
    lam = ho.regular_complex(a3)
    c1 = projective_chain_complex(a3, 0, 1)
    assert ho.hom_dim(lam, lam) == 3
    assert ho.hom_dim(lam, ho.shift(c1, -1)) == 2
    assert ho.hom_dim(lam, ho.shift(lam, 1)) == 0


def test_hom_is_homology_for_free_source(a5):
    lam = ho.regular_complex(a5)
    c = ho.from_resolution(V(a5, 3), 3)
    for n in range(-1, 5):
        assert ho.hom_dim(lam, ho.shift(c, -n)) == ho.homology(c, n).dim


def test_hom_space_chain_maps(a5):
    c = ho.from_resolution(V(a5, 2), 2)
    space = ho.hom_space(c, c)
    assert space.dim >= 1
    for f in space.basis_maps():
        assert f.is_chain_map()


def test_hom_requires_same_algebra(a3, a5):
    with pytest.raises(AlgebraMismatch):
        ho.hom_dim(ho.regular_complex(a3), ho.regular_complex(a5))


def test_decompose_indecomposable(a3):
    c1 = projective_chain_complex(a3, 0, 1)
    parts = ho.decompose_complex(c1)
    assert len(parts) == 1 and parts[0][1] == 1


def test_decompose_doubled(a5):
    c = ho.from_resolution(V(a5, 2), 2)
    parts = ho.decompose_complex(ho.direct_sum(c, c))
    assert len(parts) == 1 and parts[0][1] == 2
    assert ho.is_isomorphic(parts[0][0], c)


def test_decompose_mixed(a5):
    c = ho.direct_sum(ho.from_resolution(V(a5, 1), 1), ho.stalk(a5, (0,), 1), ho.from_resolution(V(a5, 3), 2))
    parts = ho.decompose_complex(c)
    assert sorted(m.total_dim() for m, _ in parts) == [5, 10, 15]


def test_is_shift_of(a5):
    c = ho.from_resolution(V(a5, 2), 2)
    assert ho.is_shift_of(ho.shift(c, -3), c) == -3
    assert ho.is_shift_of(c, ho.from_resolution(V(a5, 3), 2)) is None


def test_from_resolution_shapes(a3, a5):
    r0 = ho.from_resolution(V(a3, 2), 0)
    assert r0.types == {0: (0,)}
    r1 = ho.from_resolution(V(a3, 1), 1)
    assert r1.types == {0: (0,), 1: (0,)}
    assert r1.diff(1)[0, 0].tolist() == [0, 1, 0]
    r3 = ho.from_resolution(V(a5, 2), 3)
    assert r3.types == {n: (0,) for n in range(4)} and r3.is_minimal()
    assert ho.is_indecomposable(r3)


def test_nakayama_on_nonsymmetric_selfinjective():
    alg = fixtures.algebra("n2l2")
    c = ho.stalk(alg, (0,))
    assert ho.nakayama_complex(c).types == {0: (alg.nakayama_perm[0],)}
    assert ho.is_isomorphic(ho.nakayama_complex(ho.nakayama_complex(c), -1), c)


def test_complex_round_trip(tmp_path):
    for name in ("a3", "n2l2", "n22"):
        alg = fixtures.algebra(name)
        c = heart_complex(alg, 0)
        path = io.write_complex(c, tmp_path / f"{name}.cx")
        back = io.read_complex(path, alg)
        assert ho.is_isomorphic(back, c)


def test_module_round_trip(tmp_path, a5):
    m = V(a5, 3)
    back = io.read_module(io.write_module(m, tmp_path / "m.json"), a5)
    assert np.array_equal(back.action, m.action)


def test_io_errors(tmp_path, a3, a5):
    path = io.write_module(V(a3, 2), tmp_path / "m.json")
    with pytest.raises(AlgebraMismatch):
        io.read_module(path, a5)
    (tmp_path / "junk").write_text("[1, 2]")
    with pytest.raises(FormatError):
        io.read_complex(tmp_path / "junk", a3)
    with pytest.raises(FormatError):
        io.read_complex(tmp_path / "absent", a3)
