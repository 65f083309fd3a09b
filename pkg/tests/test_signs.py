import pytest
from hypothesis import given
from hypothesis import strategies as st

from hochbv.core.signs import block_swap_exponent, koszul_sign, pull_back, shift, sign, signed


def test_sign_of_negative_exponents():
    assert sign(-1) == -1
    assert sign(-2) == 1
    assert signed(5, 3) == -5


def test_koszul_sign_of_a_transposition():
    assert koszul_sign([1, 1], [1, 0]) == -1
    assert koszul_sign([1, 2], [1, 0]) == 1
    assert koszul_sign([1, 1, 1], [2, 0, 1]) == 1


def test_koszul_sign_rejects_non_permutations():
    with pytest.raises(ValueError):
        koszul_sign([1, 1], [0, 0])


@given(st.lists(st.integers(min_value=0, max_value=5), min_size=1, max_size=6), st.randoms())
def test_koszul_sign_is_multiplicative(degrees, rnd):
    first = list(range(len(degrees)))
    rnd.shuffle(first)
    second = list(range(len(degrees)))
    rnd.shuffle(second)
    moved = [degrees[i] for i in first]
    composite = [first[j] for j in second]
    assert koszul_sign(degrees, first) * koszul_sign(moved, second) == koszul_sign(degrees, composite)


@given(st.integers(min_value=0, max_value=9), st.integers(min_value=0, max_value=9))
def test_block_swap_matches_koszul(left, right):
    assert sign(block_swap_exponent(left, right)) == koszul_sign([left, right], [1, 0])


class Graded:
    def __init__(self, value, deg):
        self.value = value
        self.deg = deg

    def degree(self):
        return self.deg

    def __bool__(self):
        return bool(self.value)

    def __mul__(self, scalar):
        return Graded(self.value * scalar, self.deg)


def test_pull_back_sign():
    mu = pull_back(lambda a, b: Graded(a.value * b.value, a.deg + b.deg), 1)
    out = mu(shift(Graded(2, 1), 1), shift(Graded(3, 2), 1))
    assert out.unshift().value == -6
    assert out.degree == 4
    with pytest.raises(ValueError):
        mu(shift(Graded(2, 1), 2), shift(Graded(3, 2), 1))
