import pytest

from hochbv.core.bv_chain_ops import closed_identities
from hochbv.core.checks import check_identity
from hochbv.core.exactlinalg import SparseMatrix
from hochbv.core.frobenius import algebra_from_dict
from hochbv.core.hochschild import (
    Chain,
    Truncation,
    WordBasis,
    connes_B_word,
    connes_operator,
    count_words,
    differential_operator,
    differential_word,
    enumerate_words,
    homology_profile,
    induced_ranks,
    make_word,
    operator_matrix,
    tensor,
    word_rank,
)
from hochbv.core.relative_bv import is_relative_subcomplex
from hochbv.exceptions import TruncationOverflow

import oracle
from conftest import NONCOMMUTATIVE, SYMMETRIC


def test_word_degrees(qx3):
    assert make_word(qx3, 0, (1, 1)).degree == 2
    assert make_word(qx3, 2, ()).degree == 4
    assert make_word(qx3, 1, (2,)).degree == 5


@pytest.mark.parametrize("name", ("qx3_deg2", "qx2_deg1"))
def test_length_one_words_of_x_are_cycles(algebras, name):
    A = algebras[name]
    assert not differential_word(A, make_word(A, 0, (1,)))
    assert not differential_word(A, make_word(A, 1, (1,)))


def test_differential_on_a_length_two_word(qx3):
    out = differential_word(qx3, make_word(qx3, 0, (1, 1)))
    expected = Chain({make_word(qx3, 1, (1,)): 2, make_word(qx3, 0, (2,)): -1})
    assert out == expected


def test_connes_operator_on_short_words(qx3):
    assert connes_B_word(qx3, make_word(qx3, 1)) == Chain({make_word(qx3, 0, (1,)): 1})
    assert not connes_B_word(qx3, make_word(qx3, 0, (1, 1)))


def test_odd_generator_picks_up_rotation_signs(qx2_odd):
    # x has shifted degree 0, so every rotation enters with a plus sign
    w = make_word(qx2_odd, 1, (1,))
    assert connes_B_word(qx2_odd, w) == Chain({make_word(qx2_odd, 0, (1, 1)): 2})


def test_word_rank_matches_enumeration(exterior):
    words = enumerate_words(exterior, Truncation(3))
    assert len(words) == count_words(exterior, 3)
    assert [word_rank(exterior, w) for w in words] == list(range(len(words)))


def test_degree_bound_filters_words(qx3):
    words = enumerate_words(qx3, Truncation(2, max_degree=3))
    assert words
    assert all(w.degree <= 3 for w in words)


def test_truncation_rejects_negative_length():
    with pytest.raises(ValueError):
        Truncation(-1)


def test_word_basis_reports_overflow(qx3):
    basis = WordBasis(qx3, Truncation(1))
    with pytest.raises(TruncationOverflow):
        basis.position(make_word(qx3, 0, (1, 1)))


def test_tensor_flattens_keys(qx3):
    u = Chain({make_word(qx3, 1): 2, make_word(qx3, 0, (1, 1)): 1})
    v = Chain({make_word(qx3, 0, (1,)): 3})
    t = tensor(u, v)
    assert len(t) == 2
    assert all(len(key) == 2 for key in t)
    assert t.degree() == 3


@pytest.mark.parametrize("name", SYMMETRIC)
def test_differential_matrix_squares_to_zero(algebras, name):
    A = algebras[name]
    D = operator_matrix(differential_operator(A), A, Truncation(3))
    assert (D @ D).is_zero()


def test_connes_matrix_codomain_grows_by_one(qx3):
    B = operator_matrix(connes_operator(qx3), qx3, Truncation(2))
    assert B.shape == (count_words(qx3, 3), count_words(qx3, 2))
    with pytest.raises(TruncationOverflow):
        operator_matrix(connes_operator(qx3), qx3, Truncation(2), codomain_length=2)


@pytest.mark.parametrize("name", SYMMETRIC)
@pytest.mark.parametrize("identity", ("D_squared", "B_squared", "DB_anticommute"))
def test_mixed_complex(algebras, name, identity):
    A = algebras[name]
    report = check_identity(A, closed_identities(A)[identity], Truncation(3))
    assert report.passed, report


@pytest.mark.parametrize("name, max_length", [("k", 3), ("qx2_deg1", 3), ("qx2_deg2", 3), ("qx3_deg2", 3), ("exterior2", 2)])
def test_homology_matches_brute_force(algebras, name, max_length):
    A = algebras[name]
    profile = homology_profile(A, Truncation(max_length))
    assert profile.as_dict() == oracle.homology(A, max_length)


def test_homology_of_the_ground_field(algebras):
    profile = homology_profile(algebras["k"], Truncation(3))
    assert profile.as_dict() == {(0, 0): 1}
    assert profile.label == "exact"


def test_homology_label_for_truncated_windows(qx3):
    profile = homology_profile(qx3, Truncation(2))
    assert profile.label == "truncated approximation"
    assert profile.dimension(0, 0) == 1
    assert next(e for e in profile.entries if (e.degree, e.length) == (0, 0)).exact


def test_connes_operator_is_injective_on_the_generator(qx3):
    ranks = induced_ranks(qx3, Truncation(2), connes_operator(qx3), -1, 1)
    assert all(r.length <= 2 for r in ranks)
    source = next(r for r in ranks if (r.degree, r.length) == (2, 0))
    assert source.rank == 1


def test_relative_subcomplex_for_commutative_algebras(algebras):
    for name in SYMMETRIC:
        assert is_relative_subcomplex(algebras[name], Truncation(2))
    assert not is_relative_subcomplex(algebra_from_dict(NONCOMMUTATIVE), Truncation(2))


def test_sparse_identity_is_neutral():
    M = SparseMatrix.from_dense([[1, 2], [3, 4]])
    assert SparseMatrix.identity(2) @ M == M
