import copy

import pytest

from hochbv.core.exactlinalg import QQ
from hochbv.core.frobenius import (
    algebra_from_dict,
    algebra_to_dict,
    center_element,
    check_propositions,
    derive_open_from_closed,
    validate,
)
from hochbv.exceptions import (
    AlgebraSchemaError,
    DegeneratePairingError,
    DegreeInconsistencyError,
    PairingNotInvariantError,
)

from conftest import NONCOMMUTATIVE, SYMMETRIC

QX3 = {
    "name": "qx3",
    "m": 4,
    "basis": [{"name": "1", "degree": 0}, {"name": "x", "degree": 2}, {"name": "x2", "degree": 4}],
    "product": [["x", "x", "x2", "1"]],
    "pairing": [["1", "x2", "1"], ["x", "x", "1"], ["x2", "1", "1"]],
}


def qx3_variant(**changes):
    data = copy.deepcopy(QX3)
    data.update(changes)
    return data


@pytest.mark.parametrize("name", SYMMETRIC)
def test_fixtures_validate_up_to_commutative(algebras, name):
    report = validate(algebras[name], "commutative")
    assert report.passed, [r for r in report.results if not r.passed]
    assert report.level == "commutative"


def test_trivial_algebra_is_valid(algebras):
    assert validate(algebras["k"], "symmetric_open").passed


def test_derived_coproduct_of_odd_dual_numbers(qx2_odd):
    A = qx2_odd
    assert A.delta(0) == ((0, 1, 1), (1, 0, -1))
    assert A.delta(1) == ((1, 1, -1),)
    assert A.counit == {1: 1}


def test_derived_coproduct_of_truncated_polynomials(qx3):
    assert qx3.delta(0) == ((0, 2, 1), (1, 1, 1), (2, 0, 1))
    assert qx3.delta(1) == ((1, 2, 1), (2, 1, 1))
    assert qx3.delta(2) == ((2, 2, 1),)


def test_derive_open_from_closed_infers_m():
    A = derive_open_from_closed(
        ["1", "x"], [0, 2], {(0, 0): {0: QQ.one}, (0, 1): {1: QQ.one}, (1, 0): {1: QQ.one}},
        {}, {(0, 1): 1, (1, 0): 1},
    )
    assert A.m == 2
    assert A.delta(0) == ((0, 1, 1), (1, 0, 1))


def test_broken_fixture_fails_symmetry_and_right_module(broken):
    report = validate(broken, "symmetric_open")
    assert not report.passed
    assert report.result("symmetry").counterexample == []
    assert not report.result("symmetry").passed
    assert report.result("frobenius_right_module").counterexample == ["1", "x"]
    assert report.result("coassociativity").passed


def test_missing_coproduct_term_breaks_left_module():
    data = qx3_variant(coproduct=[["1", "1", "x2", "1"], ["1", "x2", "1", "1"], ["x", "x", "x2", "1"],
                                 ["x", "x2", "x", "1"], ["x2", "x2", "x2", "1"]])
    report = validate(algebra_from_dict(data), "open")
    assert not report.passed
    assert report.result("frobenius_left_module").counterexample == ["x", "1"]


def test_degenerate_pairing_is_rejected():
    with pytest.raises(DegeneratePairingError):
        algebra_from_dict(qx3_variant(pairing=[["1", "x2", "1"], ["x2", "1", "1"]]))


def test_non_invariant_pairing_is_rejected():
    with pytest.raises(PairingNotInvariantError):
        algebra_from_dict(qx3_variant(pairing=[["1", "x2", "1"], ["x", "x", "2"], ["x2", "1", "1"]]))


def test_asymmetric_pairing_is_rejected():
    with pytest.raises(PairingNotInvariantError):
        algebra_from_dict(qx3_variant(pairing=[["1", "x2", "1"], ["x", "x", "1"], ["x2", "1", "2"]]))


@pytest.mark.parametrize(
    "changes, error",
    [
        ({"product": [["x", "x", "x", "1"]]}, DegreeInconsistencyError),
        ({"product": [["x", "y", "x2", "1"]]}, AlgebraSchemaError),
        ({"product": [["x", "x", "x2"]]}, AlgebraSchemaError),
        ({"product": [["x", "x", "x2", "1/0"]]}, AlgebraSchemaError),
        ({"pairing": None}, AlgebraSchemaError),
        ({"basis": [{"name": "x", "degree": 2}, {"name": "1", "degree": 0}]}, AlgebraSchemaError),
        ({"basis": [{"name": "1", "degree": 0}, {"name": "x", "degree": -2}]}, AlgebraSchemaError),
        ({"m": "four"}, AlgebraSchemaError),
    ],
)
def test_schema_errors(changes, error):
    with pytest.raises(error):
        algebra_from_dict(qx3_variant(**changes))


def test_field_override_reads_constants_mod_p():
    A = algebra_from_dict(qx3_variant(), field_override="Fp:5")
    assert A.field.characteristic == 5
    assert validate(A, "commutative").passed


@pytest.mark.parametrize("name", ("qx2_deg1", "qx3_deg2"))
def test_propositions_hold(algebras, name):
    report = check_propositions(algebras[name])
    assert report.passed, [r for r in report.results if not r.passed]
    assert {r.axiom for r in report.results} >= {"cocommutativity", "center", "counit_left", "pairing_round_trip"}


def test_center_element_of_truncated_polynomials(qx3):
    assert center_element(qx3, 0) == {2: 3}


def test_serialization_keeps_the_derived_coproduct(qx3):
    again = algebra_from_dict(algebra_to_dict(qx3))
    assert again.coproduct == qx3.coproduct
    assert again.product == qx3.product
    assert again.pairing == qx3.pairing


def test_graded_commutativity_detection(exterior, broken):
    assert exterior.is_commutative
    assert broken.is_commutative
    A = algebra_from_dict(NONCOMMUTATIVE)
    assert not A.is_commutative
    assert A.commutativity_counterexample() == ("a", "b")
