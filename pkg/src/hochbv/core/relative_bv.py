# core/relative_bv.py
"""
The product, its commutativity homotopy and the bracket on the relative
complex of a commutative symmetric open Frobenius algebra.

The relative complex is spanned by words of length at least one. With A
graded commutative the differential never produces length-zero words from it.
"""
from __future__ import annotations

from dataclasses import replace
from enum import Enum
from typing import Callable, Dict, Optional, Tuple

from hochbv.core.bv_chain_ops import bilinear
from hochbv.core.checks import Identity, check_identity
from hochbv.core.frobenius import FrobeniusAlgebra
from hochbv.core.hochschild import (
    Chain,
    ChainWord,
    Truncation,
    connes_B,
    connes_B_terms,
    connes_B_word,
    differential_word,
    emit,
    enumerate_words,
    expand_word,
    factors,
    hochschild_differential,
    render_key,
)
from hochbv.core.signs import sign, signed
from hochbv.exceptions import NonCommutativeAlgebraError, UnknownOperationError
from hochbv.logging_config import logger
from hochbv.models.schemas import IdentityReport

RELATIVE_MIN_LENGTH = 1


def _sum_degrees(A: FrobeniusAlgebra, letters) -> int:
    degs = A.degrees
    return sum(degs[a] for a in letters)


def star_words(A: FrobeniusAlgebra, x: ChainWord, y: ChainWord) -> Chain:
    """x * y = sum (-1)^{|a0'| + (|a0''|+1)(|a1|+..+|ap| + p)} a0'[a1..ap, a0''b0, b1..bq]."""
    degs = A.degrees
    a = x.tail
    shifted = _sum_degrees(A, a) + len(a)
    out = Chain()
    for j, k, c in A.delta(x.head):
        emit(out, A, signed(c, degs[j] + (degs[k] + 1) * shifted), j, a + (A.mul(k, y.head),) + y.tail)
    return out


star = bilinear(star_words)


def star_first_form_words(A: FrobeniusAlgebra, x: ChainWord, y: ChainWord) -> Chain:
    """The product written through the coproduct of a0 b0."""
    degs = A.degrees
    a = x.tail
    shifted = _sum_degrees(A, a) + len(a)
    out = Chain()
    for i, v in A.mul(x.head, y.head).items():
        for j, k, c in A.delta(i):
            e = degs[j] + (degs[k] + degs[y.head] + 1) * shifted
            emit(out, A, signed(c * v, e), j, a + (k,) + y.tail)
    return out


def star_third_form_words(A: FrobeniusAlgebra, x: ChainWord, y: ChainWord) -> Chain:
    """The product written through the coproduct of b0."""
    degs, m = A.degrees, A.m
    a = x.tail
    shifted = _sum_degrees(A, a) + len(a)
    out = Chain()
    for j, k, c in A.delta(y.head):
        e = (m + 1) * degs[x.head] + degs[j] + (degs[k] + degs[y.head] + 1) * shifted
        emit(out, A, signed(c, e), A.mul(x.head, j), a + (k,) + y.tail)
    return out


def _insertions(A: FrobeniusAlgebra, u: ChainWord, head: int, tail: Tuple[int, ...], stop: Optional[int] = None):
    """The terms of T(u, -) on the word head[tail]: the block a0', a1..ap, a0''
    of u placed after the i-th letter, as (i, coefficient, sign exponent, tail)."""
    degs, m = A.degrees, A.m
    a = u.tail
    p = len(a)
    total_a = _sum_degrees(A, a)
    block = m + degs[u.head] + total_a + p
    last = len(tail) if stop is None else stop
    for j, k, c in A.delta(u.head):
        inner = degs[j] + (degs[k] + 1) * (total_a + p)
        left = degs[head]
        for i in range(last + 1):
            if i:
                left += degs[tail[i - 1]] + 1
            yield i, c, left * block + inner, tail[:i] + (j,) + a + (k,) + tail[i:]


def T_words(A: FrobeniusAlgebra, x: ChainWord, y: ChainWord) -> Chain:
    """T(x, y) = sum_{i=0}^{q} (-1)^{mu_i} b0[b1..bi, a0', a1..ap, a0'', b_{i+1}..bq]."""
    out = Chain()
    for _, c, mu, tail in _insertions(A, x, y.head, y.tail):
        emit(out, A, signed(c, mu), y.head, tail)
    return out


T = bilinear(T_words)


def H3_words(A: FrobeniusAlgebra, x: ChainWord, y: ChainWord, z: ChainWord) -> Chain:
    """sum_{i<=j} a0[a1..ai, b0', b1..bq, b0'', a_{i+1}..aj, c0', c1..cr, c0'', a_{j+1}..ap].

    Each term is the i-th term of T(y, -) applied to the j-th term of T(z, x).
    H3 is odd and bounds the left Leibniz defect of T:
    (-1)^{m|y|+1} [D, H3] = T(y * z, x) - (-1)^{|x||z|} T(y, x) * z - (-1)^{m|y|} y * T(z, x),
    where D moves past x, then y, then z."""
    out = Chain()
    for j, cz, mu_z, tail_z in _insertions(A, z, x.head, x.tail):
        for _, cy, mu_y, tail in _insertions(A, y, x.head, tail_z, stop=j):
            emit(out, A, signed(cz * cy, mu_z + mu_y), x.head, tail)
    return out


def H3(A: FrobeniusAlgebra, x: Chain, y: Chain, z: Chain) -> Chain:
    out = Chain()
    for kx, cx in x.items():
        for ky, cy in y.items():
            for kz, cz in z.items():
                out.add(H3_words(A, kx, ky, kz), cx * cy * cz)
    return out


def relative_bracket_words(A: FrobeniusAlgebra, x: ChainWord, y: ChainWord) -> Chain:
    """{x, y} = T(x, y) + (-1)^{m-1+|x||y|} T(y, x)."""
    return T_words(A, x, y) + T_words(A, y, x) * sign(A.m - 1 + x.degree * y.degree)


relative_bracket = bilinear(relative_bracket_words)


def H_rel_words(A: FrobeniusAlgebra, x: ChainWord, y: ChainWord) -> Chain:
    """sum_{0<=j<=i<=q} (-1)^{s_ij} 1[b_{j+1}..bi, a0', a1..ap, a0'', b_{i+1}..bq, b0..bj]."""
    degs, m = A.degrees, A.m
    a, b = x.tail, y.tail
    p, q = len(a), len(b)
    total_a = _sum_degrees(A, a)
    acc = [0]
    for t in b:
        acc.append(acc[-1] + degs[t])

    def Sb(u, v):
        return acc[v] - acc[u - 1] if v >= u else 0

    out = Chain()
    for j, k, c in A.delta(x.head):
        inner = degs[j] + (degs[k] + 1) * (total_a + p)
        for i in range(q + 1):
            mu = (degs[y.head] + Sb(1, i) + i) * (m + degs[x.head] + total_a + p) + inner
            for r in range(i + 1):
                s = mu + (degs[y.head] + Sb(1, r) + r + 1) * (
                    Sb(r + 1, i) + m + degs[x.head] + total_a + Sb(i + 1, q) + q - r + p
                )
                emit(out, A, signed(c, s), 0, b[r:i] + (j,) + a + (k,) + b[i:] + (y.head,) + b[:r])
    return out


H_rel = bilinear(H_rel_words)


def star_B_parts(A: FrobeniusAlgebra, x: ChainWord, y: ChainWord) -> Tuple[Chain, Chain]:
    """Split B(x * y) into the rotations starting in the y-part or at the head
    (first) and those starting in the x-part (second)."""
    degs = A.degrees
    a = x.tail
    p = len(a)
    shifted = _sum_degrees(A, a) + p
    first, second = Chain(), Chain()
    for j, k, c in A.delta(x.head):
        coeff = signed(c, degs[j] + (degs[k] + 1) * shifted)
        for word, v in expand_word(A, j, a + (A.mul(k, y.head),) + y.tail):
            for r, s, rotated in connes_B_terms(A, word):
                (first if r >= p + 2 else second).add_term(rotated, coeff * v * s)
    return first, second


# ---------------------------------------------------------------------------
# named homotopies


class RelativeHomotopyName(str, Enum):
    T = "T"
    H_REL = "H_rel"
    H3 = "H3"


_RELATIVE_HOMOTOPIES: Dict[RelativeHomotopyName, Tuple[int, Callable[..., Chain]]] = {
    RelativeHomotopyName.T: (2, T),
    RelativeHomotopyName.H_REL: (2, H_rel),
    RelativeHomotopyName.H3: (3, H3),
}


def relative_chain(A: FrobeniusAlgebra, chain: Chain) -> Chain:
    """Admit a chain into the relative complex: A must be graded commutative and
    every word must have length at least one."""
    pair = A.commutativity_counterexample()
    if pair is not None:
        raise NonCommutativeAlgebraError(pair)
    for key in chain:
        if any(w.length < RELATIVE_MIN_LENGTH for w in factors(key)):
            raise ValueError(f"{render_key(key, A.names)} is not in the relative complex")
    return chain


def apply_relative_homotopy(name: str, A: FrobeniusAlgebra, *inputs: Chain) -> Chain:
    """Evaluate T, H_rel or H3 on relative chains; the result is projected to
    the relative complex."""
    try:
        key = RelativeHomotopyName(name)
    except ValueError:
        raise UnknownOperationError(name, [h.value for h in RelativeHomotopyName]) from None
    arity, fn = _RELATIVE_HOMOTOPIES[key]
    if len(inputs) != arity:
        raise ValueError(f"{name} takes {arity} inputs, got {len(inputs)}")
    return _relative(fn(A, *(relative_chain(A, c) for c in inputs)))


# ---------------------------------------------------------------------------
# identities


def _relative(chain: Chain) -> Chain:
    """Project to the relative complex."""
    return Chain({key: c for key, c in chain.items() if all(w.length >= RELATIVE_MIN_LENGTH for w in factors(key))})


def is_relative_subcomplex(A: FrobeniusAlgebra, t: Truncation) -> bool:
    """True when D sends every word of length at least one in the window to
    words of length at least one."""
    for w in enumerate_words(A, t):
        if w.length < RELATIVE_MIN_LENGTH:
            continue
        for key in differential_word(A, w):
            if key.length < RELATIVE_MIN_LENGTH:
                logger.info(f"D leaves the relative complex at {w.render(A.names)}")
                return False
    return True


def _one(A: FrobeniusAlgebra, w: ChainWord) -> Chain:
    return Chain.of(w, A.field.one)


def _D_pair(A: FrobeniusAlgebra, op, x: ChainWord, y: ChainWord) -> Chain:
    return op(A, differential_word(A, x), _one(A, y)) + op(A, _one(A, x), differential_word(A, y)) * sign(x.degree)


def relative_identities(A: FrobeniusAlgebra) -> Dict[str, Identity]:
    """All identities of the product and bracket on the relative complex, by name."""
    m = A.m
    D = hochschild_differential

    def rel(fn):
        return lambda *ws: _relative(fn(*ws))

    def star_chain_map_lhs(x, y):
        return D(A, star_words(A, x, y))

    def star_chain_map_rhs(x, y):
        return _D_pair(A, star, x, y) * sign(m - 1)

    def star_assoc_lhs(x, y, z):
        return star(A, star_words(A, x, y), _one(A, z))

    def star_assoc_rhs(x, y, z):
        return star(A, _one(A, x), star_words(A, y, z)) * sign((m - 1) * x.degree)

    def T_lhs(x, y):
        return D(A, T_words(A, x, y)) - _D_pair(A, T, x, y) * sign(m)

    def T_rhs(x, y):
        return star_words(A, x, y) - star_words(A, y, x) * sign(x.degree * y.degree + m - 1)

    def star_B_split_lhs(x, y):
        first, second = star_B_parts(A, x, y)
        return first + second

    def star_B_split_rhs(x, y):
        return connes_B(A, star_words(A, x, y))

    def H_rel_lhs(x, y):
        return D(A, H_rel_words(A, x, y)) + _D_pair(A, H_rel, x, y) * sign(m)

    def H_rel_rhs(x, y):
        first, _ = star_B_parts(A, x, y)
        return -T_words(A, x, y) + star(A, _one(A, x), connes_B_word(A, y)) * sign(m + x.degree) + first

    def T_leibniz_lhs(x, y, z):
        return T(A, _one(A, x), star_words(A, y, z))

    def T_leibniz_rhs(x, y, z):
        return star(A, T_words(A, x, y), _one(A, z)) + star(A, _one(A, y), T_words(A, x, z)) * sign((m + x.degree) * y.degree)

    def bracket_leibniz_defect(x, y, z):
        return (
            relative_bracket(A, _one(A, x), star_words(A, y, z))
            - star(A, relative_bracket_words(A, x, y), _one(A, z))
            - star(A, _one(A, y), relative_bracket_words(A, x, z)) * sign((m + x.degree) * y.degree)
        )

    def T_left_leibniz_defect(x, y, z):
        return (
            T(A, star_words(A, y, z), _one(A, x))
            - star(A, T_words(A, y, x), _one(A, z)) * sign(x.degree * z.degree)
            - star(A, _one(A, y), T_words(A, z, x)) * sign(m * y.degree)
        )

    def H3_lhs(x, y, z):
        ox, oy, oz = _one(A, x), _one(A, y), _one(A, z)
        out = D(A, H3_words(A, x, y, z))
        out = out - H3(A, ox, differential_word(A, y), oz) * sign(m)
        out = out - H3(A, ox, oy, differential_word(A, z)) * sign(y.degree)
        out = out - H3(A, differential_word(A, x), oy, oz) * sign(y.degree + z.degree)
        return out * sign(m * y.degree + 1)

    def antisymmetry_lhs(x, y):
        return relative_bracket_words(A, y, x)

    def antisymmetry_rhs(x, y):
        return relative_bracket_words(A, x, y) * sign(m - 1 + x.degree * y.degree)

    entries = [
        Identity("star_chain_map", 2, rel(star_chain_map_lhs), rel(star_chain_map_rhs),
                 description="D(x * y) = (-1)^{m-1}(Dx * y + (-1)^{|x|} x * Dy)"),
        Identity("star_associative", 3, rel(star_assoc_lhs), rel(star_assoc_rhs),
                 description="(x * y) * z = (-1)^{(m-1)|x|} x * (y * z)"),
        Identity("star_forms_agree", 2, lambda x, y: star_first_form_words(A, x, y), lambda x, y: star_words(A, x, y),
                 description="the product through the coproduct of a0 b0 and of a0 agree"),
        Identity("star_third_form_agrees", 2, lambda x, y: star_third_form_words(A, x, y), lambda x, y: star_words(A, x, y),
                 description="the product through the coproduct of b0 and of a0 agree"),
        Identity("T_commutativity", 2, rel(T_lhs), rel(T_rhs),
                 description="[D, T] = x * y - (-1)^{|x||y|+m-1} y * x"),
        Identity("star_B_split", 2, star_B_split_lhs, star_B_split_rhs,
                 description="B(x * y) splits by where the rotation starts"),
        Identity("H_rel_deviation", 2, rel(H_rel_lhs), rel(H_rel_rhs),
                 description="[D, H_rel] = -T + (-1)^{m+|x|} x * By + B_1"),
        Identity("T_leibniz_strict", 3, T_leibniz_lhs, T_leibniz_rhs,
                 description="T(x, y * z) = T(x, y) * z + (-1)^{(m+|x|)|y|} y * T(x, z)"),
        Identity("relative_bracket_antisymmetric", 2, antisymmetry_lhs, antisymmetry_rhs,
                 description="{y, x} = (-1)^{m-1+|x||y|} {x, y}"),
        Identity("bracket_leibniz", 3, bracket_leibniz_defect, homology=True, outputs=1,
                 description="{x, y * z} = {x, y} * z + (-1)^{(m+|x|)|y|} y * {x, z} on homology"),
        Identity("H3_left_leibniz", 3, rel(H3_lhs), rel(T_left_leibniz_defect),
                 description="(-1)^{m|y|+1} [D, H3] = T(y * z, x) - (-1)^{|x||z|} T(y, x) * z - (-1)^{m|y|} y * T(z, x)"),
        Identity("T_left_leibniz", 3, T_left_leibniz_defect, homology=True, outputs=1,
                 description="T(y * z, x) = (-1)^{|x||z|} T(y, x) * z + (-1)^{m|y|} y * T(z, x) on homology"),
    ]
    return {identity.name: replace(identity, min_length=RELATIVE_MIN_LENGTH) for identity in entries}


def check_relative_identity(
    A: FrobeniusAlgebra,
    identity: Identity,
    t: Truncation,
    require_commutative: bool = True,
    codomain_length: Optional[int] = None,
) -> IdentityReport:
    """Check a relative identity; these need A graded commutative unless the
    caller explicitly opts out."""
    if require_commutative:
        pair = A.commutativity_counterexample()
        if pair is not None:
            raise NonCommutativeAlgebraError(pair)
    return check_identity(A, identity, t, codomain_length)
