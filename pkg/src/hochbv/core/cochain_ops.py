# core/cochain_ops.py
"""
The cochain side: normalized Hochschild cochains C^*(A, A) with cup, circle and
the Gerstenhaber bracket, functionals on the chain complex, and the
identification f -> f~ of a closed Frobenius algebra.

Degree conventions. A cochain f of arity n has degree |f| when every output
f(a1..an) has degree |f| + sum(|ai| - 1). A functional phi has degree |phi| when
it is supported on words of degree m - |phi|; with this convention |f~| = |f|.
"""
from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Tuple

from hochbv.core.bv_chain_ops import h_word, theta_terms
from hochbv.core.checks import run_equation
from hochbv.core.exactlinalg import Scalar, Vector, add_into
from hochbv.core.frobenius import FrobeniusAlgebra
from hochbv.core.hochschild import (
    Chain,
    ChainWord,
    Truncation,
    connes_B_word,
    differential_word,
    enumerate_words,
    make_word,
)
from hochbv.core.signs import sign, signed
from hochbv.exceptions import DegeneratePairingError, UnknownOperationError
from hochbv.models.schemas import IdentityReport, Window

Args = Tuple[int, ...]


class Cochain:
    """A normalized cochain as a sparse table ``{(a1, .., an): vector in A}``.

    Arguments run over the reduced basis only; a missing entry is zero.
    """

    __slots__ = ("arity", "degree", "values")

    def __init__(self, arity: int, degree: int, values: Optional[Mapping[Args, Mapping[int, Scalar]]] = None):
        self.arity = arity
        self.degree = degree
        self.values: Dict[Args, Vector] = {}
        for args, vec in (values or {}).items():
            self.add(tuple(args), vec)

    def add(self, args: Args, vec: Mapping[int, Scalar], factor=1) -> "Cochain":
        if len(args) != self.arity:
            raise ValueError(f"expected {self.arity} arguments, got {len(args)}")
        current = add_into(dict(self.values.get(args, {})), vec, factor)
        if current:
            self.values[args] = current
        else:
            self.values.pop(args, None)
        return self

    def __call__(self, *args: int) -> Vector:
        return self.values.get(tuple(args), {})

    def items(self):
        return self.values.items()

    def _combine(self, other: "Cochain", factor) -> "Cochain":
        if not other.values:
            return self * 1
        if not self.values:
            return other * factor
        if other.arity != self.arity:
            raise ValueError(f"cannot add cochains of arity {self.arity} and {other.arity}")
        out = Cochain(self.arity, self.degree, self.values)
        for args, vec in other.items():
            out.add(args, vec, factor)
        return out

    def __add__(self, other: "Cochain") -> "Cochain":
        return self._combine(other, 1)

    def __sub__(self, other: "Cochain") -> "Cochain":
        return self._combine(other, -1)

    def __mul__(self, scalar) -> "Cochain":
        out = Cochain(self.arity, self.degree)
        for args, vec in self.items():
            out.add(args, vec, scalar)
        return out

    __rmul__ = __mul__

    def __neg__(self) -> "Cochain":
        return self * -1

    def __eq__(self, other):
        if not isinstance(other, Cochain):
            return NotImplemented
        if not self.values and not other.values:
            return True
        return self.arity == other.arity and self.values == other.values

    __hash__ = None

    def __bool__(self):
        return bool(self.values)

    def __repr__(self):
        return f"Cochain(arity={self.arity}, degree={self.degree}, {len(self.values)} entries)"

    def render(self, A: FrobeniusAlgebra) -> str:
        if not self.values:
            return "0"
        return "; ".join(
            f"({','.join(A.names[a] for a in args)}) -> {A.format_vector(vec)}" for args, vec in sorted(self.items())
        )


def _shifted(A: FrobeniusAlgebra, args: Iterable[int]) -> int:
    degs = A.degrees
    return sum(degs[a] - 1 for a in args)


def elementary_cochain(A: FrobeniusAlgebra, args: Args, k: int) -> Cochain:
    """The cochain sending (a1..an) to e_k and every other argument to zero."""
    return Cochain(len(args), A.deg(k) - _shifted(A, args), {tuple(args): {k: A.field.one}})


def unit_cochain(A: FrobeniusAlgebra) -> Cochain:
    return elementary_cochain(A, (), 0)


def elementary_cochains(A: FrobeniusAlgebra, max_arity: int) -> List[Cochain]:
    return [
        elementary_cochain(A, args, k)
        for n in range(max_arity + 1)
        for args in itertools.product(A.reduced, repeat=n)
        for k in range(A.dim)
    ]


# ---------------------------------------------------------------------------
# products and the differential


def cup(A: FrobeniusAlgebra, f: Cochain, g: Cochain) -> Cochain:
    """(f u g)(a1..a_{p+q}) = (-1)^{|g| sum_{i<=p}(|ai|+1)} f(a1..ap) g(a_{p+1}..a_{p+q})."""
    out = Cochain(f.arity + g.arity, f.degree + g.degree)
    for fa, fv in f.items():
        s = sign(g.degree * _shifted(A, fa))
        for ga, gv in g.items():
            out.add(fa + ga, A.mul_vec(fv, gv), s)
    return out


def circle_at(A: FrobeniusAlgebra, f: Cochain, g: Cochain, j: int) -> Cochain:
    """f o_j g: g inserted into slot j+1 of f, with sign (-1)^{(|g|+1) sum_{i<=j}(|ai|+1)}.

    Only the reduced part of g's value can be inserted."""
    out = Cochain(f.arity + g.arity - 1, f.degree + g.degree - 1)
    for fa, fv in f.items():
        k = fa[j]
        s = sign((g.degree + 1) * _shifted(A, fa[:j]))
        for ga, gv in g.items():
            c = gv.get(k)
            if c:
                out.add(fa[:j] + ga + fa[j + 1:], fv, s * c)
    return out


def circle(A: FrobeniusAlgebra, f: Cochain, g: Cochain) -> Cochain:
    out = Cochain(max(f.arity + g.arity - 1, 0), f.degree + g.degree - 1)
    for j in range(f.arity):
        out = out + circle_at(A, f, g, j)
    return out


def gerstenhaber_bracket(A: FrobeniusAlgebra, f: Cochain, g: Cochain) -> Cochain:
    """[f, g] = f o g - (-1)^{(|f|+1)(|g|+1)} g o f."""
    return circle(A, f, g) - circle(A, g, f) * sign((f.degree + 1) * (g.degree + 1))


def _external_differential(A: FrobeniusAlgebra, f: Cochain, args: Args) -> Vector:
    degs = A.degrees
    one = A.field.one
    n = len(args)
    out: Vector = {}
    add_into(out, A.mul_vec({args[0]: one}, f(*args[1:])), -sign((degs[args[0]] + 1) * f.degree))
    eps = f.degree + degs[args[0]] - 1
    for i in range(2, n + 1):
        # eps_i = |f| + |a1| + .. + |a_{i-1}| - i + 1
        for k, c in A.mul(args[i - 2], args[i - 1]).items():
            if k:
                add_into(out, f(*(args[: i - 2] + (k,) + args[i:])), -signed(c, eps))
        eps += degs[args[i - 1]] - 1
    eps_n = f.degree + sum(degs[a] for a in args[:-1]) - n + 1
    add_into(out, A.mul_vec(f(*args[:-1]), {args[-1]: one}), sign(eps_n))
    return out


def _internal_differential(A: FrobeniusAlgebra, f: Cochain, args: Args) -> Vector:
    degs = A.degrees
    out: Vector = add_into({}, A.d_vec(f(*args)))
    eps = f.degree
    for i, a in enumerate(args):
        for k, c in A.d(a).items():
            if k:
                add_into(out, f(*(args[:i] + (k,) + args[i + 1:])), signed(c, eps))
        eps += degs[a] - 1
    return out


def cochain_differential(A: FrobeniusAlgebra, f: Cochain) -> Tuple[Cochain, Cochain]:
    """d f = d0 f + d1 f, returned as the pair (d0 f, d1 f) of arities n and n + 1."""
    internal = Cochain(f.arity, f.degree + 1)
    if A.has_differential:
        for args in itertools.product(A.reduced, repeat=f.arity):
            internal.add(args, _internal_differential(A, f, args))
    external = Cochain(f.arity + 1, f.degree + 1)
    for args in itertools.product(A.reduced, repeat=f.arity + 1):
        external.add(args, _external_differential(A, f, args))
    return internal, external


# ---------------------------------------------------------------------------
# functionals on the chain complex


class Functional:
    """A linear form on Hochschild chains, evaluated lazily on basis words."""

    __slots__ = ("degree", "_evaluate", "name")

    def __init__(self, degree: int, evaluate: Callable[[ChainWord], Scalar], name: str = ""):
        self.degree = degree
        self._evaluate = lru_cache(maxsize=None)(evaluate)
        self.name = name

    def __call__(self, w: ChainWord) -> Scalar:
        return self._evaluate(w)

    def on_chain(self, A: FrobeniusAlgebra, chain: Chain) -> Scalar:
        return sum((c * self(w) for w, c in chain.items()), A.field.zero)

    def table(self, words: Iterable[ChainWord]) -> Dict[ChainWord, Scalar]:
        values = {}
        for w in words:
            v = self(w)
            if v:
                values[w] = v
        return values

    def __repr__(self):
        return f"Functional({self.name or '?'}, degree={self.degree})"


def table_functional(A: FrobeniusAlgebra, values: Mapping[ChainWord, Scalar], degree: int, name: str = "") -> Functional:
    zero = A.field.zero
    frozen = dict(values)
    return Functional(degree, lambda w: frozen.get(w, zero), name or "table")


def word_functional(A: FrobeniusAlgebra, w: ChainWord) -> Functional:
    """The dual basis element of a word."""
    return table_functional(A, {w: A.field.one}, A.m - w.degree, f"<{w.render(A.names)}>")


def D_dual(A: FrobeniusAlgebra, phi: Functional) -> Functional:
    """phi -> (-1)^{|phi|} phi o D."""
    s = sign(phi.degree)
    return Functional(phi.degree + 1, lambda w: phi.on_chain(A, differential_word(A, w)) * s, f"Dv({phi.name})")


def B_dual(A: FrobeniusAlgebra, phi: Functional) -> Functional:
    """phi -> (-1)^{|phi|} phi o B."""
    s = sign(phi.degree)
    return Functional(phi.degree - 1, lambda w: phi.on_chain(A, connes_B_word(A, w)) * s, f"Bv({phi.name})")


def odot(A: FrobeniusAlgebra, phi: Functional, psi: Functional) -> Functional:
    """(phi . psi)(w) = (-1)^{|phi|(m+|psi|)} sum phi(u) psi(v) over theta(w) = sum u (x) v."""
    s = sign(phi.degree * (A.m + psi.degree))

    def evaluate(w: ChainWord) -> Scalar:
        total = A.field.zero
        for _, c, u, v in theta_terms(A, w):
            a = phi(u)
            if a:
                total = total + c * a * psi(v)
        return total * s

    return Functional(phi.degree + psi.degree, evaluate, f"({phi.name} . {psi.name})")


def h_transport(A: FrobeniusAlgebra, phi: Functional, psi: Functional) -> Functional:
    """The pairing of phi (x) psi with the cocommutativity homotopy h, with the
    sign (-1)^{m|phi| + |phi||psi| + |psi| + m + 1}; it is the image of f o g."""
    m = A.m
    s = sign(m * phi.degree + phi.degree * psi.degree + psi.degree + m + 1)

    def evaluate(w: ChainWord) -> Scalar:
        total = A.field.zero
        for (u, v), c in h_word(A, w).items():
            a = phi(u)
            if a:
                total = total + c * a * psi(v)
        return total * s

    return Functional(phi.degree + psi.degree - 1, evaluate, f"h({phi.name}, {psi.name})")


# ---------------------------------------------------------------------------
# the identification f -> f~


def _require_pairing(A: FrobeniusAlgebra) -> Mapping[Tuple[int, int], Scalar]:
    if A.pairing is None:
        raise DegeneratePairingError()
    return A.pairing


def tilde(A: FrobeniusAlgebra, f: Cochain) -> Functional:
    """f~(a0[a1..an]) = (-1)^{(|a0|+1)|f|} <a0, f(a1..an)>."""
    pairing = _require_pairing(A)
    degs = A.degrees
    zero = A.field.zero

    def evaluate(w: ChainWord) -> Scalar:
        if w.length != f.arity:
            return zero
        value = f(*w.tail)
        total = sum((c * pairing.get((w.head, k), zero) for k, c in value.items()), zero)
        return signed(total, (degs[w.head] + 1) * f.degree)

    return Functional(f.degree, evaluate, "f~")


def tilde_inverse(A: FrobeniusAlgebra, phi: Functional, arity: int) -> Cochain:
    """f(a1..an) = sum (-1)^{|phi|(1+|1''|) + m|1'|} phi(1''[a1..an]) 1' over delta(1)."""
    _require_pairing(A)
    degs, m = A.degrees, A.m
    out = Cochain(arity, phi.degree)
    for args in itertools.product(A.reduced, repeat=arity):
        value: Vector = {}
        for p1, p2, c in A.delta(0):
            v = phi(make_word(A, p2, args))
            if v:
                add_into(value, {p1: v}, signed(c, phi.degree * (1 + degs[p2]) + m * degs[p1]))
        out.add(args, value)
    return out


# ---------------------------------------------------------------------------
# identities


def _render_cochains(A: FrobeniusAlgebra, fs) -> List[str]:
    return [f.render(A) for f in fs]


def _render_table(A: FrobeniusAlgebra, table: Mapping[ChainWord, Scalar]) -> str:
    if not table:
        return "0"
    ordered = sorted(table.items(), key=lambda kv: kv[0].sort_key)
    return " + ".join(f"({A.field.format(c)}) <{w.render(A.names)}>" for w, c in ordered)


def _cochain_pairs(A: FrobeniusAlgebra, max_arity: int):
    basis = elementary_cochains(A, max_arity)
    return [(f, g) for f in basis for g in basis]


def _d(A: FrobeniusAlgebra, f: Cochain) -> Cochain:
    internal, external = cochain_differential(A, f)
    if internal:
        raise ValueError("cochain identities are stated for d_A = 0")
    return external


def cochain_identities(A: FrobeniusAlgebra, max_arity: int = 2) -> Dict[str, Callable[[], IdentityReport]]:
    """The cochain-side identities as zero-argument checks.

    The identities involving f~ need a pairing and are only listed when A has one.
    """
    window = Window(max_length=max_arity)
    words = enumerate_words(A, Truncation(2 * max_arity + 1))
    one = unit_cochain(A)

    def render(fs):
        return _render_cochains(A, fs)

    def on_cochains(name, inputs, lhs, rhs):
        return lambda: run_equation(name, window, inputs(), lhs, rhs, render, lambda f: f.render(A))

    def on_functionals(name, inputs, lhs, rhs, render_inputs=render):
        return lambda: run_equation(
            name,
            window,
            inputs(),
            lambda *xs: lhs(*xs).table(words),
            lambda *xs: rhs(*xs).table(words),
            render_inputs,
            lambda table: _render_table(A, table),
        )

    def singles():
        return [(f,) for f in elementary_cochains(A, max_arity)]

    def pairs():
        return _cochain_pairs(A, max_arity)

    def triples():
        basis = elementary_cochains(A, max(max_arity - 1, 1))
        return list(itertools.product(basis, repeat=3))

    def cup_chain_map_lhs(f, g):
        return _d(A, cup(A, f, g))

    def cup_chain_map_rhs(f, g):
        return cup(A, _d(A, f), g) + cup(A, f, _d(A, g)) * sign(f.degree)

    def homotopy_lhs(f, g):
        return (
            _d(A, circle(A, f, g))
            - circle(A, _d(A, f), g)
            + circle(A, f, _d(A, g)) * sign(f.degree)
        )

    def homotopy_rhs(f, g):
        return cup(A, g, f) * sign(f.degree + f.degree * g.degree) - cup(A, f, g) * sign(f.degree)

    def word_inputs():
        return [(word_functional(A, w),) for w in enumerate_words(A, Truncation(2 * max_arity - 1))]

    def render_functionals(phis):
        return [phi.name for phi in phis]

    def zero_functional(phi):
        return table_functional(A, {}, phi.degree)

    checks: Dict[str, Callable[[], IdentityReport]] = {
        "cup_chain_map": on_cochains("cup_chain_map", pairs, cup_chain_map_lhs, cup_chain_map_rhs),
        "cup_associative": on_cochains(
            "cup_associative",
            triples,
            lambda f, g, h: cup(A, cup(A, f, g), h),
            lambda f, g, h: cup(A, f, cup(A, g, h)),
        ),
        "cup_unit": on_cochains(
            "cup_unit",
            singles,
            lambda f: cup(A, one, f) + cup(A, f, one),
            lambda f: f * 2,
        ),
        "cup_commutativity_homotopy": on_cochains("cup_commutativity_homotopy", pairs, homotopy_lhs, homotopy_rhs),
        "gerstenhaber_antisymmetric": on_cochains(
            "gerstenhaber_antisymmetric",
            pairs,
            lambda f, g: gerstenhaber_bracket(A, g, f),
            lambda f, g: gerstenhaber_bracket(A, f, g) * -sign((f.degree + 1) * (g.degree + 1)),
        ),
        "D_dual_squared": on_functionals(
            "D_dual_squared", word_inputs, lambda phi: D_dual(A, D_dual(A, phi)), zero_functional, render_functionals
        ),
        "B_dual_squared": on_functionals(
            "B_dual_squared", word_inputs, lambda phi: B_dual(A, B_dual(A, phi)), zero_functional, render_functionals
        ),
    }
    if A.pairing is None:
        return checks

    checks.update(
        {
            "tilde_intertwines": on_functionals(
                "tilde_intertwines", singles, lambda f: tilde(A, _d(A, f)), lambda f: D_dual(A, tilde(A, f))
            ),
            "tilde_round_trip": on_cochains(
                "tilde_round_trip", singles, lambda f: tilde_inverse(A, tilde(A, f), f.arity), lambda f: f
            ),
            "odot_cup": on_functionals(
                "odot_cup", pairs, lambda f, g: tilde(A, cup(A, f, g)), lambda f, g: odot(A, tilde(A, f), tilde(A, g))
            ),
            "circle_to_h": on_functionals(
                "circle_to_h",
                pairs,
                lambda f, g: tilde(A, circle(A, f, g)),
                lambda f, g: h_transport(A, tilde(A, f), tilde(A, g)),
            ),
        }
    )
    return checks


def check_cochain_identities(
    A: FrobeniusAlgebra, max_arity: int = 2, names: Optional[Iterable[str]] = None
) -> List[IdentityReport]:
    catalog = cochain_identities(A, max_arity)
    selected = list(catalog) if not names else list(names)
    for name in selected:
        if name not in catalog:
            raise UnknownOperationError(name, sorted(catalog))
    return [catalog[name]() for name in selected]
