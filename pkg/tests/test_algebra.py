import numpy as np
import pytest

from arperfect import exactla as la
from arperfect import fixtures
from arperfect.algebra import AlgebraSpec, find_symmetrizing_form, heart_dimension, require_self_injective, validate
from arperfect.errors import (
    FormatError,
    NoUnit,
    NotAssociative,
    NotSelfInjective,
    NotSplitBasic,
    RadicalNotIdeal,
    RadicalNotNilpotent,
    SimpleProjective,
)


@pytest.mark.parametrize("name", fixtures.FIXTURE_NAMES)
def test_fixture_files_match_builders(name):
    built = fixtures.builder_specs()[name]
    loaded = fixtures.load_spec(fixtures.data_dir() / f"{name}.alg")
    assert loaded.to_dict() == built.to_dict()


def test_truncated_polynomial_cube():
    alg = fixtures.algebra("a3")
    assert alg.radical_nilpotency == 3
    assert alg.is_symmetric and alg.is_self_injective


def test_char5_quintic_is_symmetric_selfinjective():
    alg = fixtures.algebra("a5")
    assert alg.p == 5
    assert alg.is_symmetric and alg.is_self_injective
    assert alg.radical_nilpotency == 5


def test_projective_dims():
    assert fixtures.algebra("a3").projective_dim(0) == 3
    assert fixtures.algebra("a5").projective_dim(0) == 5
    n2l2 = fixtures.algebra("n2l2")
    assert [n2l2.projective_dim(i) for i in range(2)] == [2, 2]
    assert n2l2.cartan.sum() == n2l2.dim


def test_nakayama_permutations():
    assert fixtures.algebra("a3").nakayama_perm == (0,)
    assert fixtures.algebra("n2l2").nakayama_perm == (1, 0)
    assert fixtures.algebra("a2q").nakayama_perm is None
    with pytest.raises(NotSelfInjective):
        require_self_injective(fixtures.algebra("a3q"))


def test_symmetrizing_form_is_antidiagonal():
    for name, n in (("a3", 3), ("a5", 5)):
        alg = fixtures.algebra(name)
        gram = find_symmetrizing_form(alg)
        assert gram is not None and la.is_invertible(gram, alg.p)
        support = {(a, b) for a, b in zip(*np.nonzero(gram))}
        assert support == {(a, n - 1 - a) for a in range(n)}


def test_nonsymmetric_algebras_have_no_form():
    assert find_symmetrizing_form(fixtures.algebra("a2q")) is None
    assert not fixtures.algebra("n2l2").is_symmetric


def test_heart_dimension():
    assert heart_dimension(fixtures.algebra("a3"), 0) == 1
    assert heart_dimension(fixtures.algebra("a5"), 0) == 3
    with pytest.raises(SimpleProjective):
        heart_dimension(fixtures.algebra("a2q"), 1)


def _spec(mult, idem=(0,), rad=(1,), p=2):
    mult = np.asarray(mult, dtype=np.int64)
    d = mult.shape[0]
    return AlgebraSpec("t", p, d, tuple(f"b{i}" for i in range(d)), tuple(idem), tuple(rad), mult)


def _dual_numbers():
    mult = np.zeros((2, 2, 2), dtype=np.int64)
    mult[0, 0, 0] = mult[0, 1, 1] = mult[1, 0, 1] = 1
    return mult


def test_dual_numbers_validate():
    assert validate(_spec(_dual_numbers())).radical_nilpotency == 2


def test_no_unit():
    mult = _dual_numbers()
    mult[1, 0] = 0
    with pytest.raises((NoUnit, NotAssociative)):
        validate(_spec(mult))


def test_missing_unit_detected():
    mult = np.zeros((2, 2, 2), dtype=np.int64)
    mult[0, 0, 0] = 1
    with pytest.raises(NoUnit):
        validate(_spec(mult))


def test_radical_not_nilpotent():
    mult = _dual_numbers()
    mult[1, 1, 1] = 1  # x^2 = x
    with pytest.raises((RadicalNotNilpotent, NotAssociative)):
        validate(_spec(mult))


def test_idempotent_x_is_not_nilpotent():
    # basis e, x with x an idempotent living in the declared radical
    mult = np.zeros((2, 2, 2), dtype=np.int64)
    mult[0, 0, 0] = 1
    mult[0, 1, 1] = mult[1, 0, 1] = mult[1, 1, 1] = 1
    with pytest.raises(RadicalNotNilpotent):
        validate(_spec(mult))


def test_radical_not_ideal():
    mult = _dual_numbers()
    mult[1, 1, 0] = 1  # x^2 = 1 leaves the radical
    with pytest.raises((RadicalNotIdeal, NotAssociative)):
        validate(_spec(mult))


def test_non_associative_table():
    mult = np.zeros((3, 3, 3), dtype=np.int64)
    for j in range(3):
        mult[0, j, j] = mult[j, 0, j] = 1
    mult[1, 1, 2] = 1
    mult[1, 2, 2] = 1  # x(x x) = x^2 but (x x) x = x^2 x = 0
    with pytest.raises(NotAssociative) as info:
        validate(_spec(mult, rad=(1, 2)))
    assert len(info.value.indices) == 3


def test_basis_must_partition():
    with pytest.raises(NotSplitBasic):
        validate(_spec(_dual_numbers(), idem=(0,), rad=(0, 1)))


def test_malformed_dict():
    with pytest.raises(FormatError):
        AlgebraSpec.from_dict({"name": "x"})
    good = fixtures.builder_specs()["a2"].to_dict()
    good["mult"] = [[0]]
    with pytest.raises(FormatError):
        AlgebraSpec.from_dict(good)


def test_load_missing_file(tmp_path):
    with pytest.raises(FormatError):
        fixtures.load_spec(tmp_path / "nope.alg")
    bad = tmp_path / "bad.alg"
    bad.write_text("{not json")
    with pytest.raises(FormatError):
        fixtures.load_spec(bad)


def test_spec_round_trip():
    spec = fixtures.builder_specs()["n22"]
    again = AlgebraSpec.from_dict(spec.to_dict())
    assert np.array_equal(again.mult, spec.mult)
    assert validate(again).nakayama_perm == fixtures.algebra("n22").nakayama_perm
