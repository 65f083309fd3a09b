import os

import pytest

from hochbv.core.session import load_algebra

FIXTURES_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "fixtures")

SYMMETRIC = ("qx2_deg1", "qx2_deg2", "qx3_deg2", "exterior2")
CLOSED = ("qx2_deg1", "qx3_deg2", "exterior2")


def fixture_path(name: str) -> str:
    return os.path.join(FIXTURES_DIR, f"{name}.json")


@pytest.fixture(scope="session")
def algebras():
    names = ("k",) + SYMMETRIC + ("broken_nonsymmetric",)
    return {name: load_algebra(fixture_path(name)) for name in names}


@pytest.fixture(scope="session")
def qx3(algebras):
    return algebras["qx3_deg2"]


@pytest.fixture(scope="session")
def qx2_odd(algebras):
    return algebras["qx2_deg1"]


@pytest.fixture(scope="session")
def exterior(algebras):
    return algebras["exterior2"]


@pytest.fixture(scope="session")
def broken(algebras):
    return algebras["broken_nonsymmetric"]


# graded commutativity fails at (a, b): ab = ba although |a||b| is odd
NONCOMMUTATIVE = {
    "name": "noncommutative",
    "m": 2,
    "basis": [
        {"name": "1", "degree": 0},
        {"name": "a", "degree": 1},
        {"name": "b", "degree": 1},
        {"name": "c", "degree": 2},
    ],
    "product": [["a", "b", "c", "1"], ["b", "a", "c", "1"]],
    "coproduct": [],
}


# qx2_deg2 with delta(x) doubled: delta(1) stays symmetric, but delta(x) is no
# longer x . delta(1), so the module properties of the coproduct break
DOCTORED_COPRODUCT = {
    "name": "doctored_coproduct",
    "m": 2,
    "basis": [{"name": "1", "degree": 0}, {"name": "x", "degree": 2}],
    "product": [],
    "coproduct": [["1", "1", "x", "1"], ["1", "x", "1", "1"], ["x", "x", "x", "2"]],
}

# the coproduct of the commutative algebra with ab = ba = c, over the product
# with ba = 0
NONCOMMUTATIVE_FROBENIUS = {
    "name": "noncommutative_frobenius",
    "m": 4,
    "basis": [
        {"name": "1", "degree": 0},
        {"name": "a", "degree": 2},
        {"name": "b", "degree": 2},
        {"name": "c", "degree": 4},
    ],
    "product": [["a", "b", "c", "1"]],
    "coproduct": [
        ["1", "1", "c", "1"],
        ["1", "c", "1", "1"],
        ["1", "a", "b", "1"],
        ["1", "b", "a", "1"],
        ["a", "a", "c", "1"],
        ["a", "c", "a", "1"],
        ["b", "b", "c", "1"],
        ["b", "c", "b", "1"],
        ["c", "c", "c", "1"],
    ],
}
