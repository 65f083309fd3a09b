"""
Brute-force reference for the Hochschild homology of a finite algebra with
zero differential. Words, the differential and ranks are computed here from
scratch: dense object arrays and sympy's exact rank.
"""
import itertools
from fractions import Fraction

import numpy as np
import sympy


def words(algebra, length):
    degrees = algebra.degrees
    for head in range(algebra.dim):
        for tail in itertools.product(range(1, algebra.dim), repeat=length):
            yield (head, tail), degrees[head] + sum(degrees[a] - 1 for a in tail)


def _times(algebra, i, j):
    return {k: Fraction(algebra.field.format(c)) for k, c in algebra.product.get((i, j), {}).items()}


def boundary(algebra, head, tail):
    """b(a0[a1..an]) with the displayed signs, as {(head, tail): coefficient}."""
    deg = algebra.degrees
    n = len(tail)
    out = {}

    def put(h, t, c):
        if any(a == 0 for a in t):
            return
        out[(h, t)] = out.get((h, t), 0) + c

    if n == 0:
        return out
    for k, c in _times(algebra, head, tail[0]).items():
        put(k, tail[1:], (-1) ** deg[head] * c)
    for i in range(2, n + 1):
        eps = deg[head] + sum(deg[a] for a in tail[: i - 1]) - i + 1
        for k, c in _times(algebra, tail[i - 2], tail[i - 1]).items():
            put(head, tail[: i - 2] + (k,) + tail[i:], (-1) ** (eps % 2) * c)
    eps = deg[head] + sum(deg[a] for a in tail[:-1]) - n + 1
    for k, c in _times(algebra, tail[-1], head).items():
        put(k, tail[:-1], -((-1) ** ((eps * (deg[tail[-1]] + 1)) % 2)) * c)
    return {key: c for key, c in out.items() if c}


def _rank(block):
    if block.size == 0:
        return 0
    return sympy.Matrix([[sympy.Rational(v.numerator, v.denominator) for v in row] for row in block.tolist()]).rank()


def _matrix(algebra, sources, targets):
    index = {key: i for i, key in enumerate(targets)}
    block = np.empty((len(targets), len(sources)), dtype=object)
    block.fill(Fraction(0))
    for col, (head, tail) in enumerate(sources):
        for key, c in boundary(algebra, head, tail).items():
            block[index[key], col] += c
    return block


def homology(algebra, max_length):
    """{(degree, length): dimension} for lengths up to max_length."""
    cells = {}
    for n in range(max_length + 2):
        for key, degree in words(algebra, n):
            cells.setdefault((degree, n), []).append(key)
    dims = {}
    for (degree, n), keys in cells.items():
        if n > max_length:
            continue
        out_rank = _rank(_matrix(algebra, keys, cells.get((degree + 1, n - 1), [])))
        in_rank = _rank(_matrix(algebra, cells.get((degree - 1, n + 1), []), keys))
        dims[(degree, n)] = len(keys) - out_rank - in_rank
    return dims
