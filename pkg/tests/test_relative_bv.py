import pytest

from hochbv.core.frobenius import algebra_from_dict
from hochbv.core.hochschild import Chain, Truncation, make_word
from hochbv.core.relative_bv import (
    RELATIVE_MIN_LENGTH,
    T_words,
    apply_relative_homotopy,
    check_relative_identity,
    relative_bracket_words,
    relative_identities,
    star_words,
)
from hochbv.exceptions import NonCommutativeAlgebraError, UnknownOperationError

from conftest import NONCOMMUTATIVE, NONCOMMUTATIVE_FROBENIUS, SYMMETRIC


def window_for(identity, length: int = 2) -> Truncation:
    return Truncation(length if identity.arity <= 2 else 1)


def test_relative_identities_skip_length_zero_inputs(qx3):
    assert all(identity.min_length == RELATIVE_MIN_LENGTH for identity in relative_identities(qx3).values())


@pytest.mark.parametrize("name", SYMMETRIC)
def test_relative_catalog_holds(algebras, name):
    A = algebras[name]
    for identity in relative_identities(A).values():
        report = check_relative_identity(A, identity, window_for(identity))
        assert report.passed, (identity.name, report.counterexample, report.lhs, report.rhs)


def test_product_of_two_generators(qx3):
    w = make_word(qx3, 0, (1,))
    expected = Chain({make_word(qx3, 0, (1, 2, 1)): -1, make_word(qx3, 1, (1, 1, 1)): -1})
    assert star_words(qx3, w, w) == expected


def test_bracket_is_graded_antisymmetric_on_a_pair(qx3):
    x = make_word(qx3, 0, (1,))
    y = make_word(qx3, 1, (2,))
    s = -1 if (qx3.m - 1 + x.degree * y.degree) % 2 else 1
    assert relative_bracket_words(qx3, y, x) == relative_bracket_words(qx3, x, y) * s


def test_noncommutative_algebra_is_refused():
    A = algebra_from_dict(NONCOMMUTATIVE)
    identity = relative_identities(A)["star_chain_map"]
    with pytest.raises(NonCommutativeAlgebraError) as info:
        check_relative_identity(A, identity, Truncation(1))
    assert info.value.pair == ("a", "b")


def test_broken_coproduct_fails_the_commutativity_homotopy(broken):
    identity = relative_identities(broken)["T_commutativity"]
    report = check_relative_identity(broken, identity, Truncation(2), require_commutative=False)
    assert report.status == "fail"
    assert report.counterexample


def test_H3_places_both_blocks_in_order(qx3):
    x = make_word(qx3, 0, (2,))
    y = make_word(qx3, 0, (1,))
    out = apply_relative_homotopy("H3", qx3, Chain({x: 1}), Chain({y: 1}), Chain({y: 1}))
    assert set(out) == {
        make_word(qx3, 0, (1, 1, 1, 1, 1, 1, 2)),
        make_word(qx3, 0, (1, 1, 1, 2, 1, 1, 1)),
        make_word(qx3, 0, (2, 1, 1, 1, 1, 1, 1)),
    }
    assert all(abs(c) == 1 for _, c in out.items())


def test_H3_vanishes_on_zero(qx3):
    w = Chain({make_word(qx3, 1, (1,)): 1})
    assert not apply_relative_homotopy("H3", qx3, w, Chain(), w)


def test_named_T_matches_the_word_formula(qx3):
    x = make_word(qx3, 0, (1,))
    y = make_word(qx3, 1, (2,))
    assert apply_relative_homotopy("T", qx3, Chain({x: 1}), Chain({y: 1})) == T_words(qx3, x, y)


def test_apply_relative_homotopy_rejects_bad_calls(qx3):
    w = Chain({make_word(qx3, 0, (1,)): 1})
    with pytest.raises(UnknownOperationError):
        apply_relative_homotopy("K", qx3, w, w)
    with pytest.raises(ValueError):
        apply_relative_homotopy("T", qx3, w)
    with pytest.raises(ValueError):
        apply_relative_homotopy("T", qx3, w, Chain({make_word(qx3, 1): 1}))
    A = algebra_from_dict(NONCOMMUTATIVE)
    with pytest.raises(NonCommutativeAlgebraError):
        apply_relative_homotopy("H_rel", A, Chain(), Chain())


def test_left_leibniz_of_T_holds_on_homology(qx3):
    identity = relative_identities(qx3)["T_left_leibniz"]
    assert identity.homology
    assert check_relative_identity(qx3, identity, Truncation(1)).passed


@pytest.mark.slow
@pytest.mark.parametrize("name", SYMMETRIC)
def test_relative_catalog_holds_on_the_length_three_window(algebras, name):
    A = algebras[name]
    for identity in relative_identities(A).values():
        report = check_relative_identity(A, identity, window_for(identity, 3))
        assert report.passed, (identity.name, report.counterexample, report.lhs, report.rhs)


@pytest.mark.parametrize(
    "name, length",
    [
        ("qx3_deg2", 1),
        ("exterior2", 1),
        pytest.param("qx3_deg2", 2, marks=pytest.mark.slow),
        pytest.param("exterior2", 2, marks=pytest.mark.slow),
    ],
)
def test_H3_bounds_the_left_leibniz_defect(algebras, name, length):
    A = algebras[name]
    report = check_relative_identity(A, relative_identities(A)["H3_left_leibniz"], Truncation(length))
    assert report.status == "pass", (report.counterexample, report.lhs, report.rhs)


def test_H3_left_leibniz_sign_on_a_single_word(qx3):
    identity = relative_identities(qx3)["H3_left_leibniz"]
    x = make_word(qx3, 0, (2,))
    y = make_word(qx3, 0, (1,))
    target = make_word(qx3, 1, (2, 1, 1, 1, 1, 1))
    lhs = identity.lhs(x, y, y)
    assert lhs.terms[target] == 1
    assert lhs == identity.rhs(x, y, y)


def test_noncommutative_product_fails_the_commutativity_homotopy():
    A = algebra_from_dict(NONCOMMUTATIVE_FROBENIUS)
    identity = relative_identities(A)["T_commutativity"]
    report = check_relative_identity(A, identity, Truncation(1), require_commutative=False)
    assert report.status == "fail"
    assert report.counterexample
    assert report.lhs != report.rhs
