import pytest

from hochbv.core.cochain_ops import (
    Cochain,
    check_cochain_identities,
    circle,
    cochain_differential,
    cochain_identities,
    cup,
    elementary_cochain,
    elementary_cochains,
    gerstenhaber_bracket,
    odot,
    table_functional,
    tilde,
    tilde_inverse,
    unit_cochain,
    word_functional,
)
from hochbv.core.hochschild import make_word
from hochbv.exceptions import DegeneratePairingError, UnknownOperationError


@pytest.mark.parametrize("name, max_arity", [("qx3_deg2", 2), ("qx2_deg1", 2), ("exterior2", 1)])
def test_cochain_catalog_holds(algebras, name, max_arity):
    A = algebras[name]
    for report in check_cochain_identities(A, max_arity):
        assert report.passed, (report.identity, report.counterexample, report.lhs, report.rhs)


def test_catalog_without_pairing_has_no_tilde_checks(broken):
    names = set(cochain_identities(broken, 1))
    assert "cup_chain_map" in names
    assert not names & {"tilde_intertwines", "tilde_round_trip", "odot_cup", "circle_to_h"}


def test_unknown_identity_is_rejected(qx3):
    with pytest.raises(UnknownOperationError):
        check_cochain_identities(qx3, 1, ["cup_commutative"])


def test_elementary_cochain_degree(qx3):
    f = elementary_cochain(qx3, (1, 1), 2)
    assert f.degree == 2
    assert f(1, 1) == {2: 1}
    assert f(1, 2) == {}
    assert len(elementary_cochains(qx3, 1)) == 3 + 2 * 3


def test_arity_is_enforced(qx3):
    with pytest.raises(ValueError):
        Cochain(1, 0).add((1, 1), {0: 1})
    with pytest.raises(ValueError):
        elementary_cochain(qx3, (1,), 0) + elementary_cochain(qx3, (1, 1), 0)


def test_unit_is_a_cup_unit_and_a_cocycle(exterior):
    one = unit_cochain(exterior)
    f = elementary_cochain(exterior, (1,), 3)
    assert cup(exterior, one, f) == f
    assert cup(exterior, f, one) == f
    internal, external = cochain_differential(exterior, one)
    assert not internal
    assert not external


@pytest.mark.parametrize("name, max_arity", [("qx3_deg2", 2), ("exterior2", 1)])
def test_cochain_differential_squares_to_zero(algebras, name, max_arity):
    A = algebras[name]
    for f in elementary_cochains(A, max_arity):
        _, df = cochain_differential(A, f)
        _, ddf = cochain_differential(A, df)
        assert not ddf, f.render(A)


def test_bracket_with_the_unit_vanishes(qx3):
    one = unit_cochain(qx3)
    for f in elementary_cochains(qx3, 2):
        assert not gerstenhaber_bracket(qx3, f, one)


def test_circle_degree(qx3):
    f = elementary_cochain(qx3, (1,), 1)
    g = elementary_cochain(qx3, (2,), 1)
    h = circle(qx3, f, g)
    assert h.degree == f.degree + g.degree - 1
    assert h(2) == {1: 1}


def test_tilde_of_the_unit_reads_the_counit(qx3):
    phi = tilde(qx3, unit_cochain(qx3))
    assert phi.degree == 0
    assert phi(make_word(qx3, 2)) == 1
    assert phi(make_word(qx3, 1)) == 0
    assert phi(make_word(qx3, 2, (1,))) == 0
    assert tilde_inverse(qx3, phi, 0) == unit_cochain(qx3)


def test_tilde_needs_a_pairing(broken):
    with pytest.raises(DegeneratePairingError):
        tilde(broken, unit_cochain(broken))
    with pytest.raises(DegeneratePairingError):
        tilde_inverse(broken, word_functional(broken, make_word(broken, 1)), 0)


def test_odot_with_zero_is_zero(qx3):
    zero = table_functional(qx3, {}, 0)
    phi = word_functional(qx3, make_word(qx3, 1, (1,)))
    product = odot(qx3, zero, phi)
    assert product.degree == phi.degree
    assert not product.table([make_word(qx3, h, t) for h in range(3) for t in ((), (1,), (1, 1), (2, 1))])
