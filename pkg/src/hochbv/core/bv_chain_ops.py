# core/bv_chain_ops.py
"""
Chain-level BV operations on the Hochschild chains of an open Frobenius algebra.

Every operation is defined on basis words and extended multilinearly. Degrees
of the operations (m is the degree of the coproduct):

    theta   m        coproduct C -> C (x) C
    bullet  m        product, zero unless the first word has length 0
    h       m - 1    cocommutativity homotopy of theta
    H       m - 2    homotopy for theta B
    G       2m - 2   co-Leibniz homotopy of tau h
    K       m - 1    commutativity homotopy of bullet
    H_b     m - 2    homotopy for the BV deviation
"""
from __future__ import annotations

from enum import Enum
from typing import Callable, Dict, Iterator, List, Sequence, Tuple

from hochbv.core.checks import Identity
from hochbv.core.exactlinalg import Scalar
from hochbv.core.frobenius import FrobeniusAlgebra
from hochbv.core.hochschild import (
    Chain,
    ChainOperator,
    ChainWord,
    apply_on_factor,
    connes_B_terms,
    connes_B_word,
    connes_operator,
    differential_operator,
    differential_word,
    emit,
    factors,
    linear,
    make_word,
    permute_factors,
    swap,
    tensor,
    tensor_differential,
)
from hochbv.core.signs import pull_back, shift, sign, signed
from hochbv.exceptions import UnknownOperationError


def _prefix(A: FrobeniusAlgebra, letters: Sequence[int]) -> Callable[[int, int], int]:
    """S(u, v) = |a_u| + ... + |a_v| for 1-based inclusive ranges, 0 if empty."""
    degs = A.degrees
    acc = [0]
    for a in letters:
        acc.append(acc[-1] + degs[a])

    def S(u: int, v: int) -> int:
        return acc[v] - acc[u - 1] if v >= u else 0

    return S


def bilinear(fn: Callable[[FrobeniusAlgebra, ChainWord, ChainWord], Chain]):
    """Extend a function on pairs of basis words to pairs of chains."""

    def extended(A: FrobeniusAlgebra, x: Chain, y: Chain) -> Chain:
        out = Chain()
        for kx, cx in x.items():
            for ky, cy in y.items():
                out.add(fn(A, kx, ky), cx * cy)
        return out

    extended.__name__ = fn.__name__
    extended.__doc__ = fn.__doc__
    extended.on_words = fn
    return extended


def _one(A: FrobeniusAlgebra, w: ChainWord) -> Chain:
    return Chain.of(w, A.field.one)


# ---------------------------------------------------------------------------
# the coproduct theta


def theta_terms(A: FrobeniusAlgebra, w: ChainWord) -> Iterator[Tuple[int, Scalar, ChainWord, ChainWord]]:
    """The terms (i, coefficient, a0''[a1..ai], a0'[a_{i+1}..an]) of theta(w),
    with sign (-1)^{|a0'| sigma_i} and sigma_i = |a0''| + |a1| + .. + |ai| + i."""
    degs = A.degrees
    tail = w.tail
    for j, k, c in A.delta(w.head):
        sigma = degs[k]
        for i in range(len(tail) + 1):
            if i:
                sigma += degs[tail[i - 1]] + 1
            yield i, signed(c, degs[j] * sigma), make_word(A, k, tail[:i]), make_word(A, j, tail[i:])


def theta_word(A: FrobeniusAlgebra, w: ChainWord) -> Chain:
    out = Chain()
    for _, c, u, v in theta_terms(A, w):
        out.add_term((u, v), c)
    return out


theta = linear(theta_word)


def bullet_words(A: FrobeniusAlgebra, x: ChainWord, y: ChainWord) -> Chain:
    """x . y = sum (-1)^{|a'||a''|} (a'' a' b0)[b1..bq] when x = a[], zero otherwise."""
    out = Chain()
    if x.tail:
        return out
    degs = A.degrees
    for j, k, c in A.delta(x.head):
        emit(out, A, signed(c, degs[j] * degs[k]), A.mul_many(k, j, y.head), y.tail)
    return out


bullet = bilinear(bullet_words)


# ---------------------------------------------------------------------------
# homotopies on the coproduct side


def h_terms(A: FrobeniusAlgebra, w: ChainWord) -> Iterator[Tuple[int, int, Scalar, ChainWord, ChainWord]]:
    """The terms (i, j, coefficient, a0[a1..ai, 1'', aj..an], 1'[a_{i+1}..a_{j-1}]) of h(w);
    the inserted 1'' sits at tail index i of the first word."""
    degs, m = A.degrees, A.m
    a0, a = w.head, w.tail
    n = len(a)
    S = _prefix(A, a)
    for p1, p2, c in A.delta(0):
        if p2 == 0:
            continue
        for i in range(n + 1):
            left = degs[a0] + S(1, i) + i
            for j in range(i + 1, n + 2):
                middle = degs[p1] + S(i + 1, j - 1) + j - i - 1
                right = S(j, n) + n - j + 1
                t = degs[p1] * degs[p2] + (m + 1) * left + middle * right
                first = make_word(A, a0, a[:i] + (p2,) + a[j - 1:])
                yield i, j, signed(c, t), first, make_word(A, p1, a[i:j - 1])


def h_word(A: FrobeniusAlgebra, w: ChainWord) -> Chain:
    """h(a0[a1..an]) = sum_{0<=i<j<=n+1} (-1)^{t_i} a0[a1..ai, 1'', aj..an] (x) 1'[a_{i+1}..a_{j-1}]."""
    out = Chain()
    for _, _, c, first, second in h_terms(A, w):
        out.add_term((first, second), c)
    return out


h = linear(h_word)


def tau_h_word(A: FrobeniusAlgebra, w: ChainWord) -> Chain:
    return swap(h_word(A, w))


def S_word(A: FrobeniusAlgebra, w: ChainWord) -> Chain:
    """S = h + (-1)^m tau h."""
    hw = h_word(A, w)
    return hw + swap(hw) * sign(A.m)


S_map = linear(S_word)


def theta_B_homotopy_word(A: FrobeniusAlgebra, w: ChainWord) -> Chain:
    """H(a0[a1..an]) = sum_{0<=k<=i<j<=n+1} (-1)^nu
    1[a_{k+1}..ai, 1'', aj..an, a0..ak] (x) 1'[a_{i+1}..a_{j-1}]."""
    degs, m = A.degrees, A.m
    a0, a = w.head, w.tail
    out = Chain()
    if a0 == 0:
        return out
    n = len(a)
    S = _prefix(A, a)
    d0 = degs[a0]
    for p1, p2, c in A.delta(0):
        if p2 == 0:
            continue
        e1, e2 = degs[p1], degs[p2]
        for k in range(n + 1):
            for i in range(k, n + 1):
                for j in range(i + 1, n + 2):
                    mid = S(i + 1, j - 1)
                    tail_sum = S(j, n)
                    nu = (
                        (mid + j - i + 1) * (tail_sum + n - j + 1)
                        + (d0 + S(1, k) + k + 1) * (S(k + 1, i) + tail_sum + n - j + i - k + 1)
                        + e1 * (e2 + d0 + S(1, i) + tail_sum + n - j + i)
                        + (e2 + 1) * (S(k + 1, i) + i - k)
                    )
                    first = make_word(A, 0, a[k:i] + (p2,) + a[j - 1:] + (a0,) + a[:k])
                    out.add_term((first, make_word(A, p1, a[i:j - 1])), signed(c, nu))
    return out


theta_B_homotopy = linear(theta_B_homotopy_word)


def theta_B_parts(A: FrobeniusAlgebra, w: ChainWord) -> Tuple[Chain, Chain]:
    """Split theta(B w) by whether a0 lands in the first tensor factor; the
    second part is the one that carries a0 there."""
    without_a0, with_a0 = Chain(), Chain()
    n = w.length
    for r, c, rotated in connes_B_terms(A, w):
        position = n + 1 - r
        for l, v, u, x in theta_terms(A, rotated):
            (with_a0 if l > position else without_a0).add_term((u, x), c * v)
    return without_a0, with_a0


def co_leibniz_homotopy_word(A: FrobeniusAlgebra, w: ChainWord) -> Chain:
    """G(w) = (-1)^{m+1} rho(Gamma w) with rho(u (x) v (x) t) = (-1)^{|u|(|v|+|t|)} v (x) t (x) u.

    Gamma keeps the terms of (h (x) 1) h whose second extracted block ends at
    or before the first inserted 1''. G is even and
    [D, G] = (theta (x) 1) tau h - (1 (x) tau)(tau h (x) 1) theta - (1 (x) tau h) theta.
    """
    gamma = Chain()
    for i, _, c, rest, extracted in h_terms(A, w):
        for _, j, v, remainder, block in h_terms(A, rest):
            if j <= i + 1:
                gamma.add_term((remainder, block, extracted), c * v)
    return permute_factors(gamma, (1, 2, 0)) * sign(A.m + 1)


co_leibniz_homotopy = linear(co_leibniz_homotopy_word)


# ---------------------------------------------------------------------------
# the product side


def K_words(A: FrobeniusAlgebra, x: ChainWord, y: ChainWord) -> Chain:
    """K(x, y) = sum (-1)^{(|a0'|+1)(|a0''| + |a1|+..+|ap| + p)} a0''[a1..ap, a0' b0, b1..bq]."""
    degs = A.degrees
    a = x.tail
    p = len(a)
    total = sum(degs[t] for t in a)
    out = Chain()
    for j, k, c in A.delta(x.head):
        emit(out, A, signed(c, (degs[j] + 1) * (degs[k] + total + p)), k, a + (A.mul(j, y.head),) + y.tail)
    return out


K = bilinear(K_words)


def gers_words(A: FrobeniusAlgebra, x: ChainWord, y: ChainWord) -> Chain:
    """{x, y} = K(x, y) + (-1)^{|x||y| + m} K(y, x)."""
    return K_words(A, x, y) + K_words(A, y, x) * sign(x.degree * y.degree + A.m)


gers = bilinear(gers_words)


def bullet_homotopy_words(A: FrobeniusAlgebra, x: ChainWord, y: ChainWord) -> Chain:
    """H_b(x, y) = sum_{1<=k<=q+1} (-1)^{alpha_k} 1[bk..bq, a0'', a1..ap, a0' b0, b1..b_{k-1}]."""
    degs = A.degrees
    a, b = x.tail, y.tail
    p, q = len(a), len(b)
    total_a = sum(degs[t] for t in a)
    Sb = _prefix(A, b)
    out = Chain()
    for j, k, c in A.delta(x.head):
        base = (degs[j] + 1) * (degs[k] + total_a + p)
        product = A.mul(j, y.head)
        for r in range(1, q + 2):
            alpha = base + (Sb(r, q) + q - r - 1) * (
                degs[j] + degs[k] + total_a + degs[y.head] + Sb(1, r - 1) + r + p + 1
            )
            emit(out, A, signed(c, alpha), 0, b[r - 1:] + (k,) + a + (product,) + b[:r - 1])
    return out


bullet_homotopy = bilinear(bullet_homotopy_words)


def bv_homotopy_words(A: FrobeniusAlgebra, x: ChainWord, y: ChainWord) -> Chain:
    """H_b + (-1)^{1+m} K (1 (x) B), with (1 (x) B)(x (x) y) = (-1)^{|x|} x (x) B y."""
    out = bullet_homotopy_words(A, x, y)
    out.add(K(A, _one(A, x), connes_B_word(A, y)), sign(1 + A.m + x.degree))
    return out


bv_homotopy = bilinear(bv_homotopy_words)


# ---------------------------------------------------------------------------
# homotopies for the right module property of theta


def _on_first_pair(A: FrobeniusAlgebra, fn, chain: Chain) -> Chain:
    """(F (x) 1) on three-fold tensors for a bilinear F on words."""
    out = Chain()
    for key, c in chain.items():
        u, v, t = factors(key)
        out.add(tensor(fn(A, u, v), _one(A, t)), c)
    return out


def frobenius_right_homotopy_words(A: FrobeniusAlgebra, x: ChainWord, y: ChainWord) -> Chain:
    """H_frobR(x, y) = tau((. (x) 1) rho^{-1} (h (x) 1) - theta K - (K (x) 1) sigma (theta (x) 1))(x (x) y)

    with rho^{-1}(u (x) v (x) t) = t (x) u (x) v and sigma(u (x) v (x) t) = t (x) v (x) u, Koszul signs."""
    hx = tensor(h_word(A, x), _one(A, y))
    tx = tensor(theta_word(A, x), _one(A, y))
    out = _on_first_pair(A, bullet_words, permute_factors(hx, (2, 0, 1)))
    out = out - theta(A, K_words(A, x, y))
    out = out - _on_first_pair(A, K_words, permute_factors(tx, (2, 1, 0)))
    return swap(out)


frobenius_right_homotopy = bilinear(frobenius_right_homotopy_words)


def frobenius_right_length0_words(A: FrobeniusAlgebra, x: ChainWord, y: ChainWord) -> Chain:
    """G_frobR(x, y) = h(x . y), zero unless x has length 0."""
    return h(A, bullet_words(A, x, y))


frobenius_right_length0 = bilinear(frobenius_right_length0_words)


# ---------------------------------------------------------------------------
# named homotopies


class HomotopyName(str, Enum):
    H_COCOMMUTATIVITY = "h_cocom"
    H_THETA_B = "H_thetaB"
    G_CO_LEIBNIZ = "G_coLeibniz"
    K_COMMUTATIVITY = "K_com"
    H_BULLET = "H_bullet"
    H_FROBENIUS_RIGHT = "H_frobR"
    G_FROBENIUS_RIGHT = "G_frobR"
    S_COBRACKET = "S_cobracket"


_HOMOTOPIES: Dict[HomotopyName, Tuple[int, Callable]] = {
    HomotopyName.H_COCOMMUTATIVITY: (1, h_word),
    HomotopyName.H_THETA_B: (1, theta_B_homotopy_word),
    HomotopyName.G_CO_LEIBNIZ: (1, co_leibniz_homotopy_word),
    HomotopyName.K_COMMUTATIVITY: (2, K_words),
    HomotopyName.H_BULLET: (2, bullet_homotopy_words),
    HomotopyName.H_FROBENIUS_RIGHT: (2, frobenius_right_homotopy_words),
    HomotopyName.G_FROBENIUS_RIGHT: (2, frobenius_right_length0_words),
    HomotopyName.S_COBRACKET: (1, S_word),
}


def apply_homotopy(name: str, A: FrobeniusAlgebra, *inputs: Chain) -> Chain:
    """Evaluate a named homotopy on chains, multilinearly."""
    try:
        key = HomotopyName(name)
    except ValueError:
        raise UnknownOperationError(name, [h.value for h in HomotopyName]) from None
    arity, fn = _HOMOTOPIES[key]
    if len(inputs) != arity:
        raise ValueError(f"{name} takes {arity} inputs, got {len(inputs)}")
    if arity == 1:
        return linear(fn)(A, inputs[0])
    return bilinear(fn)(A, inputs[0], inputs[1])


def chain_operators(A: FrobeniusAlgebra) -> Dict[str, ChainOperator]:
    """The operators that can be exported as matrices."""
    return {
        "D": differential_operator(A),
        "B": connes_operator(A),
        "theta": ChainOperator("theta", 1, 2, A.m, 0, lambda w: theta_word(A, w)),
        "bullet": ChainOperator("bullet", 2, 1, A.m, 0, lambda x, y: bullet_words(A, x, y)),
        "h": ChainOperator("h", 1, 2, A.m - 1, 1, lambda w: h_word(A, w)),
        "K": ChainOperator("K", 2, 1, A.m - 1, 1, lambda x, y: K_words(A, x, y)),
    }


# ---------------------------------------------------------------------------
# the identity catalog


def _D_on(A: FrobeniusAlgebra, chain: Chain) -> Chain:
    out = Chain()
    for key, c in chain.items():
        out.add(differential_word(A, key), c)
    return out


def _D_pair(A: FrobeniusAlgebra, op, x: ChainWord, y: ChainWord) -> Chain:
    """op(D_tensor(x (x) y)) = op(Dx, y) + (-1)^{|x|} op(x, Dy)."""
    return op(A, differential_word(A, x), _one(A, y)) + op(A, _one(A, x), differential_word(A, y)) * sign(x.degree)


def _leibniz_right(A: FrobeniusAlgebra, fn, fn_degree: int, chain: Chain) -> Chain:
    """(1 (x) F) on two-fold tensors with the Koszul sign of F passing the first factor."""
    return apply_on_factor(fn, fn_degree, A, chain, 1)


def _shifted_bullet_associator(A: FrobeniusAlgebra, x: ChainWord, y: ChainWord, z: ChainWord) -> Chain:
    """mu(mu(sx, sy), sz) - mu(sx, mu(sy, sz)) for the product regraded by m."""
    mu = pull_back(lambda u, v: bullet(A, u, v), A.m)
    sx, sy, sz = (shift(_one(A, w), A.m) for w in (x, y, z))
    return mu(mu(sx, sy), sz).unshift() - mu(sx, mu(sy, sz)).unshift()


def closed_identities(A: FrobeniusAlgebra) -> Dict[str, Identity]:
    """All identities of the string-topology structure on C_*(A, A), by name."""
    m = A.m

    def theta_chain_map_lhs(w):
        return theta(A, differential_word(A, w))

    def theta_chain_map_rhs(w):
        return tensor_differential(A, theta_word(A, w)) * sign(m)

    def h_lhs(w):
        return tensor_differential(A, h_word(A, w)) - h(A, differential_word(A, w)) * sign(m + 1)

    def h_rhs(w):
        tw = theta_word(A, w)
        return swap(tw) * sign(m) - tw

    def H_lhs(w):
        return tensor_differential(A, theta_B_homotopy_word(A, w)) - theta_B_homotopy(A, differential_word(A, w)) * sign(m)

    def H_rhs(w):
        _, with_a0 = theta_B_parts(A, w)
        B_first = apply_on_factor(connes_B_word, -1, A, theta_word(A, w), 0)
        return h_word(A, w) * sign(m) + with_a0 - B_first * sign(m)

    def theta_B_split_lhs(w):
        without_a0, with_a0 = theta_B_parts(A, w)
        return without_a0 + with_a0

    def theta_B_split_rhs(w):
        return theta(A, connes_B_word(A, w))

    def S_co_leibniz_defect(w):
        Sw = S_word(A, w)
        tw = theta_word(A, w)
        lhs = apply_on_factor(theta_word, m, A, Sw, 0)
        first = permute_factors(apply_on_factor(S_word, m - 1, A, tw, 0), (0, 2, 1))
        second = _leibniz_right(A, S_word, m - 1, tw)
        return lhs - first - second

    def h_co_leibniz_lhs(w):
        return apply_on_factor(theta_word, m, A, h_word(A, w), 0)

    def h_co_leibniz_rhs(w):
        tw = theta_word(A, w)
        return permute_factors(apply_on_factor(h_word, m - 1, A, tw, 0), (0, 2, 1)) + _leibniz_right(A, h_word, m - 1, tw)

    def G_lhs(w):
        return tensor_differential(A, co_leibniz_homotopy_word(A, w)) - co_leibniz_homotopy(A, differential_word(A, w))

    def G_rhs(w):
        tw = theta_word(A, w)
        first = apply_on_factor(theta_word, m, A, tau_h_word(A, w), 0)
        second = permute_factors(apply_on_factor(tau_h_word, m - 1, A, tw, 0), (0, 2, 1))
        return first - second - _leibniz_right(A, tau_h_word, m - 1, tw)

    def theta_coassociative_lhs(w):
        return apply_on_factor(theta_word, m, A, theta_word(A, w), 0)

    def theta_coassociative_rhs(w):
        return _leibniz_right(A, theta_word, m, theta_word(A, w)) * sign(m)

    def S_coantisymmetric_lhs(w):
        return swap(S_word(A, w))

    def S_coantisymmetric_rhs(w):
        return S_word(A, w) * sign(m)

    def bullet_chain_map_lhs(x, y):
        return _D_on(A, bullet_words(A, x, y))

    def bullet_chain_map_rhs(x, y):
        return _D_pair(A, bullet, x, y) * sign(m)

    def bullet_assoc_lhs(x, y, z):
        return bullet(A, bullet_words(A, x, y), _one(A, z))

    def bullet_assoc_rhs(x, y, z):
        return bullet(A, _one(A, x), bullet_words(A, y, z)) * sign(m * x.degree + m)

    def K_lhs(x, y):
        return _D_on(A, K_words(A, x, y)) - _D_pair(A, K, x, y) * sign(m - 1)

    def K_rhs(x, y):
        return bullet_words(A, x, y) - bullet_words(A, y, x) * sign(x.degree * y.degree + m)

    def bv_lhs(x, y):
        return _D_on(A, bv_homotopy_words(A, x, y)) - _D_pair(A, bv_homotopy, x, y) * sign(m)

    def bv_rhs(x, y):
        return (
            gers_words(A, x, y)
            - apply_on_chain_B(A, bullet_words(A, x, y))
            - bullet(A, _one(A, x), connes_B_word(A, y)) * sign(m + x.degree)
        )

    def K_left_lhs(x, y, z):
        return K(A, _one(A, x), bullet_words(A, y, z))

    def K_left_rhs(x, y, z):
        return bullet(A, _one(A, y), K_words(A, x, z)) * sign((m - 1 + x.degree) * y.degree)

    def K_right_lhs(x, y, z):
        return K(A, bullet_words(A, y, z), _one(A, x))

    def K_right_rhs(x, y, z):
        return bullet(A, _one(A, y), K_words(A, z, x)) * sign((m - 1 + x.degree) * y.degree + x.degree * y.degree + m)

    def frobenius_right_defect(x, y):
        out = Chain()
        for u, v, c in _pairs(theta_word(A, x)):
            out.add(tensor(_one(A, u), bullet_words(A, v, y)), signed(c, m * u.degree + m))
        return out - theta(A, bullet_words(A, x, y))

    def frobenius_right_homotopy_lhs(x, y):
        phi = frobenius_right_homotopy_words(A, x, y) + frobenius_right_length0_words(A, x, y)
        pair = _D_pair(A, frobenius_right_homotopy, x, y) + _D_pair(A, frobenius_right_length0, x, y)
        return tensor_differential(A, phi) + pair

    def frobenius_left_lhs(x, y):
        return theta(A, bullet_words(A, x, y)) * sign(m)

    def frobenius_left_rhs(x, y):
        out = Chain()
        for u, v, c in _pairs(theta_word(A, y)):
            out.add(tensor(bullet_words(A, x, u), _one(A, v)), c)
        return out * sign(m * x.degree)

    def gers_antisymmetric_lhs(x, y):
        return gers_words(A, y, x)

    def gers_antisymmetric_rhs(x, y):
        return gers_words(A, x, y) * sign(x.degree * y.degree + m)

    def zero(*_):
        return Chain()

    entries = [
        Identity("D_squared", 1, lambda w: _D_on(A, differential_word(A, w)), zero,
                 description="D D = 0"),
        Identity("B_squared", 1, lambda w: apply_on_chain_B(A, connes_B_word(A, w)), zero,
                 description="B B = 0"),
        Identity("DB_anticommute", 1,
                 lambda w: _D_on(A, connes_B_word(A, w)) + apply_on_chain_B(A, differential_word(A, w)), zero,
                 description="D B + B D = 0"),
        Identity("theta_chain_map", 1, theta_chain_map_lhs, theta_chain_map_rhs,
                 description="theta D = (-1)^m (D (x) 1 + 1 (x) D) theta"),
        Identity("theta_coassociative", 1, theta_coassociative_lhs, theta_coassociative_rhs,
                 description="(theta (x) 1) theta = (-1)^m (1 (x) theta) theta"),
        Identity("h_cocommutativity", 1, h_lhs, h_rhs,
                 description="[D, h] = (-1)^m tau theta - theta"),
        Identity("theta_B_split", 1, theta_B_split_lhs, theta_B_split_rhs,
                 description="theta B splits by the position of a0"),
        Identity("H_thetaB", 1, H_lhs, H_rhs,
                 description="[D, H] = (-1)^m h + (theta B)_2 - (-1)^m (B (x) 1) theta"),
        Identity("G_coLeibniz", 1, G_lhs, G_rhs,
                 description="[D, G] = (theta (x) 1) tau h - (1 (x) tau)(tau h (x) 1) theta - (1 (x) tau h) theta"),
        Identity("h_coLeibniz_strict", 1, h_co_leibniz_lhs, h_co_leibniz_rhs,
                 description="(theta (x) 1) h = (1 (x) tau)(h (x) 1) theta + (1 (x) h) theta"),
        Identity("S_coantisymmetric", 1, S_coantisymmetric_lhs, S_coantisymmetric_rhs,
                 description="tau S = (-1)^m S"),
        Identity("S_coLeibniz", 1, S_co_leibniz_defect, homology=True, outputs=3,
                 description="(theta (x) 1) S = (1 (x) tau)(S (x) 1) theta + (1 (x) S) theta on homology"),
        Identity("bullet_chain_map", 2, bullet_chain_map_lhs, bullet_chain_map_rhs,
                 description="D(x . y) = (-1)^m (Dx . y + (-1)^{|x|} x . Dy)"),
        Identity("bullet_associative", 3, bullet_assoc_lhs, bullet_assoc_rhs,
                 description="(x . y) . z = (-1)^{m|x| + m} x . (y . z)"),
        Identity("bullet_shifted_associative", 3, lambda x, y, z: _shifted_bullet_associator(A, x, y, z), zero,
                 description="the product regraded by m is strictly associative"),
        Identity("K_commutativity", 2, K_lhs, K_rhs,
                 description="[D, K] = x . y - (-1)^{|x||y| + m} y . x"),
        Identity("gers_antisymmetric", 2, gers_antisymmetric_lhs, gers_antisymmetric_rhs,
                 description="{y, x} = (-1)^{|x||y| + m} {x, y}"),
        Identity("bv_deviation", 2, bv_lhs, bv_rhs,
                 description="[D, H_b + (-1)^{1+m} K (1 (x) B)] = {x, y} - B(x . y) - (-1)^{m+|x|} x . By"),
        Identity("K_left_leibniz", 3, K_left_lhs, K_left_rhs,
                 description="K(x, y . z) = (-1)^{(m-1+|x|)|y|} y . K(x, z); both sides vanish once y has positive length"),
        Identity("K_right_leibniz", 3, K_right_lhs, K_right_rhs,
                 description="K(y . z, x) = (-1)^{(m-1+|x|)|y| + |x||y| + m} y . K(z, x); both sides vanish once y has positive length"),
        Identity("frobenius_left_module", 2, frobenius_left_lhs, frobenius_left_rhs,
                 description="(-1)^m theta(x . y) = (. (x) 1)(1 (x) theta)(x (x) y)"),
        Identity("frobenius_right_homotopy", 2, frobenius_right_homotopy_lhs, frobenius_right_defect,
                 description="[D, H_frobR + G_frobR] = (-1)^m (1 (x) .)(theta (x) 1) - theta ."),
        Identity("frobenius_right_module", 2, frobenius_right_defect, homology=True, outputs=2,
                 description="(-1)^m (1 (x) .)(theta (x) 1) = theta . on homology"),
    ]
    return {identity.name: identity for identity in entries}


def apply_on_chain_B(A: FrobeniusAlgebra, chain: Chain) -> Chain:
    out = Chain()
    for key, c in chain.items():
        out.add(connes_B_word(A, key), c)
    return out


def _pairs(chain: Chain) -> List[Tuple[ChainWord, ChainWord, Scalar]]:
    return [(*factors(key), c) for key, c in chain.items()]
