import pytest

from arperfect import artheory as ar
from arperfect import fixtures
from arperfect import homotopy as ho
from arperfect import modrep as mr
from arperfect.errors import NotIndecomposable, NotOnRim, ProjectiveInput, RadicalTooShort


@pytest.fixture(scope="module")
def a3():
    return fixtures.algebra("a3")


@pytest.fixture(scope="module")
def a5():
    return fixtures.algebra("a5")


def V(alg, k, s=0):
    return mr.uniserial(alg, s, k)


def test_triangle_ending_at_projective(a3):
    p = ho.stalk(a3, (0,))
    tri = ar.ar_triangle_ending_at(p)
    c1 = ar.projective_chain_complex(a3, 0, 1)
    assert ho.is_shift_of(tri.y, c1) == -1
    assert ho.is_isomorphic(tri.x, ho.shift(ho.nakayama_complex(p), -1))
    cert = tri.socle_certificate
    assert cert.annihilated_dim == 1 and cert.hom_dim >= 1


def test_triangle_ending_at_socle_chain(a3):
    c1 = ar.projective_chain_complex(a3, 0, 1)
    tri = ar.ar_triangle_ending_at(c1)
    expected = ho.direct_sum(ho.stalk(a3, (0,)), ar.heart_complex(a3, 0))
    assert ho.is_isomorphic(tri.y, expected)
    assert sorted(y.length for y, _ in tri.y_summands()) == [1, 3]


def test_triangle_is_shift_equivariant(a3):
    base = ar.ar_triangle_ending_at(ho.stalk(a3, (0,)))
    moved = ar.ar_triangle_ending_at(ho.stalk(a3, (0,), 4))
    assert ho.is_shift_of(moved.y, base.y) == 4


def test_triangle_maps_compose_to_zero_up_to_homotopy(a5):
    z = ho.from_resolution(V(a5, 2), 1)
    tri = ar.ar_triangle_ending_at(z)
    for f in (tri.x_to_y, tri.y_to_z, tri.connecting):
        assert f.is_chain_map()
    composite = tri.x_to_y.then(tri.y_to_z)
    assert ho.hom_space(tri.x, tri.z).is_nullhomotopic(composite)


def test_triangle_rejects_decomposable(a3):
    c = ho.stalk(a3, (0, 0))
    with pytest.raises(NotIndecomposable):
        ar.ar_triangle_ending_at(c)


@pytest.mark.parametrize("name", ["a5", "a3", "n22"])
def test_ar_sequences_are_exact_nonsplit(name):
    alg = fixtures.algebra(name)
    for s in range(alg.n_simples):
        for k in range(1, alg.projective_dim(s)):
            seq = ar.ar_sequence(V(alg, k, s))
            assert seq.is_exact() and not seq.has_section()


def test_ar_sequence_v2_over_a5(a5):
    seq = ar.ar_sequence(V(a5, 2))
    assert mr.is_isomorphic(seq.tau_m, V(a5, 2))
    dims = sorted(m.dim for m, _ in mr.decompose(seq.middle).summands)
    assert dims == [1, 3]


def test_ar_sequence_simple_over_a3(a3):
    seq = ar.ar_sequence(V(a3, 1))
    assert mr.is_isomorphic(seq.middle, V(a3, 2))


@pytest.mark.parametrize("name", ["a2q", "a3q"])
def test_ar_sequences_without_self_injectivity(name):
    alg = fixtures.algebra(name)
    for s in range(alg.n_simples):
        m = mr.simple(alg, s)
        if mr.is_projective(m):
            with pytest.raises(ProjectiveInput):
                ar.ar_sequence(m)
            continue
        seq = ar.ar_sequence(m)
        assert seq.is_exact() and not seq.has_section()


def test_ar_sequence_rejects_projective(a3):
    with pytest.raises(ProjectiveInput):
        ar.ar_sequence(mr.projective(a3, 0))


def test_e_complex_homology(a3, a5):
    e = ar.e_complex(V(a3, 1))
    assert [ho.homology(e, n).dim for n in (1, 0, -1)] == [1, 2, 1]
    e5 = ar.e_complex(V(a5, 2))
    mids = sorted(m.dim for m, _ in mr.decompose(ho.homology(e5, 0)).summands)
    assert ho.homology(e5, 1).dim == 2 and mids == [1, 3]


def test_e_complex_for_cosyzygy_of_simple(a5):
    e = ar.e_complex(mr.cosyzygy(mr.simple(a5, 0)))
    lengths = sorted(c.length for c, _ in ho.decompose_complex(e))
    assert lengths == [1, 3]


def test_rim_membership(a3, a5):
    assert ar.is_on_rim(ho.stalk(a3, (0,)))
    assert not ar.is_on_rim(ar.projective_chain_complex(a3, 0, 1))
    assert ar.is_on_rim(ho.from_resolution(V(a5, 1), 1))


def test_distances(a3, a5):
    assert ar.distance_from_rim(ho.stalk(a3, (0,))) == 0
    assert ar.distance_from_rim(ar.heart_complex(a3, 0)) == 2
    for n in range(4):
        assert ar.distance_from_rim(ar.projective_chain_complex(a3, 0, n)) == n
    assert ar.distance_from_rim(ar.e_complex(V(a5, 2))) == 1


def test_projective_chain_homology(a3):
    h = ar.projective_chain_complex(a3, 0, 2)
    assert [ho.homology(h, n).dim for n in (2, 1, 0)] == [2, 1, 2]
    assert ar.projective_chain_complex(a3, 0, 0).types == {0: (0,)}


def test_big_homology_needs_loewy_three():
    with pytest.raises(RadicalTooShort):
        ar.big_homology_complex(fixtures.algebra("a2"), 0, 1)


def test_rigidity(a3, a5):
    assert ar.is_rigid(ho.stalk(a3, (0,)))
    assert not ar.is_rigid(ar.projective_chain_complex(a3, 0, 1))


def test_sectional_path_needs_rim(a3):
    with pytest.raises(NotOnRim):
        ar.sectional_path(ar.projective_chain_complex(a3, 0, 1), 1)


def test_projective_component_diagram(a3):
    diagram = ar.homology_diagram(ho.stalk(a3, (0,)), 3)
    assert diagram.has_projective
    assert all(diagram.mesh_exact[key] for key in diagram.mesh_exact if key not in diagram.flagged)
    assert ar.stabilization_module(ho.stalk(a3, (0,))).dim == 1


def test_diagram_without_projectives(a5):
    diagram = ar.homology_diagram(ho.from_resolution(V(a5, 2), 1), 2)
    assert not diagram.has_projective
    assert all(diagram.mesh_exact.values())
    assert all(diagram.wing_ok.values())
