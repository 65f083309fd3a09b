# core/signs.py
"""
Sign engine for graded objects.

Every sign in the engine is an integer exponent evaluated modulo 2 from stored
degrees. Nothing here knows about particular algebras.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Sequence


def parity(exponent: int) -> int:
    return exponent & 1


def sign(exponent: int) -> int:
    """(-1)**exponent for any integer exponent, negative ones included."""
    return -1 if exponent & 1 else 1


def signed(value, exponent: int):
    return -value if exponent & 1 else value


def koszul_exponent(degrees: Sequence[int], order: Sequence[int]) -> int:
    """Exponent of the Koszul sign for moving letters of the given degrees into
    ``order`` (position i of the result holds the letter ``order[i]``)."""
    if sorted(order) != list(range(len(degrees))):
        raise ValueError(f"{order} is not a permutation of {len(degrees)} letters")
    exponent = 0
    for i in range(len(order)):
        di = degrees[order[i]]
        if not di & 1:
            continue
        for j in range(i + 1, len(order)):
            if order[j] < order[i]:
                exponent += di * degrees[order[j]]
    return exponent & 1


def koszul_sign(degrees: Sequence[int], order: Sequence[int]) -> int:
    return sign(koszul_exponent(degrees, order))


def block_swap_exponent(left: int, right: int) -> int:
    """Exponent for exchanging two blocks of total degrees ``left`` and ``right``."""
    return (left * right) & 1


@dataclass(frozen=True)
class Shifted:
    """A value regraded by ``m``: degree(s_m v) = degree(v) + m."""

    value: Any
    m: int

    @property
    def degree(self) -> int:
        return self.value.degree() + self.m

    def unshift(self) -> Any:
        return self.value


def shift(value: Any, m: int) -> Shifted:
    if isinstance(value, Shifted):
        return Shifted(value.value, value.m + m) if value.m + m else value.value
    return Shifted(value, m)


def pull_back(op: Callable[[Any, Any], Any], m: int) -> Callable[[Shifted, Shifted], Shifted]:
    """mu_m(s_m a, s_m b) = (-1)^{m|a|} s_m mu(a, b)."""

    def shifted_op(a: Shifted, b: Shifted) -> Shifted:
        if a.m != m or b.m != m:
            raise ValueError(f"Operands must be shifted by {m}")
        x = a.unshift()
        out = op(x, b.unshift())
        if not x:
            return Shifted(out, m)
        return Shifted(out * sign(m * x.degree()), m)

    return shifted_op
