import numpy as np
import pytest

from arperfect import exactla as la
from arperfect import fixtures
from arperfect import modrep as mr
from arperfect.algebra import validate
from arperfect.errors import AlgebraMismatch, DimensionMismatch, SimpleProjective, ZeroModule


@pytest.fixture(scope="module")
def a3():
    return fixtures.algebra("a3")


@pytest.fixture(scope="module")
def a5():
    return fixtures.algebra("a5")


def V(alg, k):
    return mr.uniserial(alg, 0, k)


def test_projectives_are_regular(a3, a5):
    assert mr.projective(a3, 0).dim == 3
    assert mr.is_isomorphic(mr.projective(a5, 0), mr.regular_module(a5))


def test_action_is_checked(a3):
    bad = np.zeros((3, 1, 1), dtype=np.int64)
    with pytest.raises(DimensionMismatch):
        mr.ModuleRep(a3, bad)


def test_hom_from_regular_is_dim(a5):
    reg = mr.regular_module(a5)
    for k in range(1, 6):
        assert mr.hom_dim(reg, V(a5, k)) == k


def test_hom_between_distinct_simples():
    alg = fixtures.algebra("n2l2")
    assert mr.hom_basis(mr.simple(alg, 0), mr.simple(alg, 1)) == []
    assert mr.hom_dim(mr.simple(alg, 0), mr.simple(alg, 0)) == 1


def test_hom_basis_are_intertwiners(a5):
    maps = mr.hom_basis(V(a5, 2), V(a5, 4))
    assert len(maps) == 2
    assert all(f.is_intertwiner() for f in maps)


def test_stable_hom_table(a5):
    table = [[mr.stable_hom_dim(V(a5, i), V(a5, j)) for j in range(1, 5)] for i in range(1, 5)]
    assert table == [[1, 1, 1, 1], [1, 2, 2, 1], [1, 2, 2, 1], [1, 1, 1, 1]]


def test_stable_hom_with_projective_vanishes(a5):
    assert mr.stable_hom_dim(V(a5, 5), V(a5, 3)) == 0


def test_projective_cover_of_simple(a3):
    cover, surj = mr.projective_cover(mr.simple(a3, 0))
    assert cover.dim == 3 and la.rank(surj.matrix, 2) == 1


def test_projective_cover_of_v2(a3):
    cover, surj = mr.projective_cover(V(a3, 2))
    assert cover.dim == 3
    assert cover.dim - la.rank(surj.matrix, 2) == 1


def test_projective_cover_of_projective_is_iso(a5):
    cover, surj = mr.projective_cover(mr.projective(a5, 0))
    assert la.is_invertible(surj.matrix, 5)


def test_projective_cover_of_zero(a3):
    with pytest.raises(ZeroModule):
        mr.projective_cover(mr.zero_module(a3))


def test_syzygies(a5):
    for k in range(1, 5):
        assert mr.is_isomorphic(mr.syzygy(V(a5, k)), V(a5, 5 - k))
        assert mr.is_isomorphic(mr.cosyzygy(V(a5, k)), V(a5, 5 - k))
    assert mr.syzygy(mr.projective(a5, 0)).dim == 0


def test_syzygy_over_nakayama():
    alg = fixtures.algebra("n2l2")
    # Omega S_0 is the radical of P_0, a simple of the other type
    om = mr.syzygy(mr.simple(alg, 0))
    assert om.dim == 1 and not mr.is_isomorphic(om, mr.simple(alg, 0))


def test_heart_modules(a3, a5):
    assert mr.heart(a3, 0).dim == 1
    h = mr.heart(a5, 0)
    assert mr.is_isomorphic(h, V(a5, 3))
    assert mr.heart(fixtures.algebra("n2l2"), 0).dim == 0
    field = validate(fixtures.truncated_polynomial("k", 2, 1))
    with pytest.raises(SimpleProjective):
        mr.heart(field, 0)


def test_decompose_local_regular(a5):
    cert = mr.decompose(mr.projective(a5, 0))
    assert cert.class_multiplicities() == [1]


def test_decompose_v1_plus_v3(a5):
    cert = mr.decompose(V(a5, 1).direct_sum(V(a5, 3)))
    assert sorted(m.dim for m, _ in cert.summands) == [1, 3]
    for piece in cert.pieces:
        prod = la.matmul(piece.projection, piece.inclusion, 5)
        assert np.array_equal(prod, la.identity(piece.module.dim))


def test_decompose_repeated_summand(a5):
    cert = mr.decompose(V(a5, 2).direct_sum(V(a5, 2)))
    assert len(cert.summands) == 1 and cert.class_multiplicities() == [2]


def test_decompose_conjugated_sum(a5):
    m = V(a5, 1).direct_sum(V(a5, 4))
    rng = np.random.default_rng(3)
    while True:
        q = rng.integers(0, 5, size=(5, 5))
        if la.is_invertible(q, 5):
            break
    cert = mr.decompose(m.conjugate(q))
    assert sorted(x.dim for x, _ in cert.summands) == [1, 4]


def test_isomorphism_checks(a5):
    m = V(a5, 2)
    assert mr.is_isomorphic(m, m)
    assert not mr.is_isomorphic(V(a5, 2), V(a5, 3))
    q = np.array([[1, 2], [0, 3]])
    assert mr.is_isomorphic(m, m.conjugate(q))


def test_isomorphism_needs_same_algebra(a3, a5):
    with pytest.raises(AlgebraMismatch):
        mr.is_isomorphic(V(a3, 1), V(a5, 1))


def test_indecomposable_and_projective(a3):
    assert mr.is_indecomposable(V(a3, 2))
    assert not mr.is_indecomposable(V(a3, 1).direct_sum(V(a3, 1)))
    assert mr.is_projective(mr.projective(a3, 0))
    assert not mr.is_projective(V(a3, 2))


def test_nakayama_module_permutes_projectives():
    alg = fixtures.algebra("n2l2")
    perm = alg.nakayama_perm
    for s in range(2):
        nu = mr.nakayama_module(mr.projective(alg, s))
        assert mr.is_isomorphic(nu, mr.projective(alg, perm[s]))


def test_nakayama_is_identity_for_symmetric(a5):
    for k in range(1, 6):
        assert mr.is_isomorphic(mr.nakayama_module(V(a5, k)), V(a5, k))


def test_loewy_and_composition_factors(a5):
    m = V(a5, 3)
    assert m.loewy_length() == 3
    assert list(m.composition_factors()) == [3]
    assert mr.radical_module(m).dim == 2
    assert mr.socle_quotient(m).dim == 2
