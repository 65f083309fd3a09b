# core/hochschild.py
"""
The normalized Hochschild chain complex C_*(A, A) = A (x) T(sA-bar).

A word ``a0[a1, ..., an]`` is read as the letters a0, s a1, ..., s an, where a0
has degree |a0| and each s ai has degree |ai| - 1. Chains are sparse
combinations of words; tensor powers of the complex use tuples of words as keys.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from hochbv.core.exactlinalg import Scalar, SparseMatrix, Vector, homology_dims, induced_rank, rank, rank_kernel
from hochbv.core.frobenius import FrobeniusAlgebra
from hochbv.core.signs import sign, signed
from hochbv.exceptions import TruncationOverflow
from hochbv.logging_config import logger
from hochbv.models.schemas import HomologyEntry, HomologyProfile, InducedRank, Window


@dataclass(frozen=True, slots=True)
class ChainWord:
    head: int
    tail: Tuple[int, ...] = ()
    degree: int = field(default=0, compare=False)

    @property
    def length(self) -> int:
        return len(self.tail)

    @property
    def sort_key(self) -> Tuple[int, int, Tuple[int, ...]]:
        return (len(self.tail), self.head, self.tail)

    def render(self, names: Sequence[str]) -> str:
        return f"{names[self.head]}[{','.join(names[a] for a in self.tail)}]"


Key = Union[ChainWord, Tuple[ChainWord, ...]]


def make_word(A: FrobeniusAlgebra, head: int, tail: Sequence[int] = ()) -> ChainWord:
    degs = A.degrees
    tail = tuple(tail)
    return ChainWord(head, tail, degs[head] + sum(degs[a] for a in tail) - len(tail))


def factors(key: Key) -> Tuple[ChainWord, ...]:
    return (key,) if isinstance(key, ChainWord) else key


def key_degree(key: Key) -> int:
    if isinstance(key, ChainWord):
        return key.degree
    return sum(w.degree for w in key)


def key_sort(key: Key):
    return tuple(w.sort_key for w in factors(key))


def render_key(key: Key, names: Sequence[str]) -> str:
    return " (x) ".join(w.render(names) for w in factors(key))


class Chain:
    """A finitely supported combination of words (or of tuples of words)."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Mapping[Key, Scalar]] = None):
        self.terms: Dict[Key, Scalar] = {}
        if terms:
            for key, c in terms.items():
                self.add_term(key, c)

    @classmethod
    def of(cls, key: Key, coeff: Scalar) -> "Chain":
        return cls({key: coeff})

    def add_term(self, key: Key, coeff: Scalar) -> "Chain":
        if key in self.terms:
            nv = self.terms[key] + coeff
            if nv:
                self.terms[key] = nv
            else:
                del self.terms[key]
        elif coeff:
            self.terms[key] = coeff
        return self

    def add(self, other: "Chain", factor=1) -> "Chain":
        for key, c in other.terms.items():
            self.add_term(key, c * factor)
        return self

    def items(self):
        return self.terms.items()

    def sorted_items(self) -> List[Tuple[Key, Scalar]]:
        return sorted(self.terms.items(), key=lambda kv: key_sort(kv[0]))

    def copy(self) -> "Chain":
        out = Chain()
        out.terms = dict(self.terms)
        return out

    def degree(self) -> Optional[int]:
        """The common degree of all terms; None for the zero chain."""
        degrees = {key_degree(key) for key in self.terms}
        if len(degrees) > 1:
            raise ValueError(f"Inhomogeneous chain with degrees {sorted(degrees)}")
        return degrees.pop() if degrees else None

    def max_length(self) -> int:
        return max((max(w.length for w in factors(key)) for key in self.terms), default=-1)

    def __add__(self, other: "Chain") -> "Chain":
        return self.copy().add(other)

    def __sub__(self, other: "Chain") -> "Chain":
        return self.copy().add(other, -1)

    def __neg__(self) -> "Chain":
        return Chain({key: -c for key, c in self.terms.items()})

    def __mul__(self, scalar) -> "Chain":
        if not scalar:
            return Chain()
        return Chain({key: c * scalar for key, c in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, Chain):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    __hash__ = None

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __iter__(self) -> Iterator[Key]:
        return iter(self.terms)

    def __repr__(self):
        return f"Chain({len(self.terms)} terms)"

    def render(self, A: FrobeniusAlgebra) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"({A.field.format(c)}) {render_key(k, A.names)}" for k, c in self.sorted_items())


# ---------------------------------------------------------------------------
# expansion of words whose letters are vectors


Letter = Union[int, Mapping[int, Scalar]]


def _letter_terms(letter: Letter, slot: bool):
    if isinstance(letter, int):
        if slot and letter == 0:
            return ()
        return ((letter, None),)
    # the unit component of a tensor slot is projected away by the splitting A = k + A-bar
    return tuple((k, v) for k, v in letter.items() if not (slot and k == 0))


def expand_word(A: FrobeniusAlgebra, head: Letter, slots: Sequence[Letter]) -> List[Tuple[ChainWord, Optional[Scalar]]]:
    """All basis words of a word with vector letters, with their coefficients."""
    parts = [_letter_terms(head, False)] + [_letter_terms(s, True) for s in slots]
    out = []
    for combo in itertools.product(*parts):
        coeff = None
        for _, v in combo:
            if v is not None:
                coeff = v if coeff is None else coeff * v
        out.append((make_word(A, combo[0][0], [k for k, _ in combo[1:]]), coeff))
    return out


def emit(out: Chain, A: FrobeniusAlgebra, coeff: Scalar, head: Letter, slots: Sequence[Letter]) -> None:
    for word, c in expand_word(A, head, slots):
        out.add_term(word, coeff if c is None else coeff * c)


def linear(fn: Callable[[FrobeniusAlgebra, ChainWord], Chain]) -> Callable[[FrobeniusAlgebra, Chain], Chain]:
    """Extend a function on basis words to chains."""

    def extended(A: FrobeniusAlgebra, chain: Chain) -> Chain:
        out = Chain()
        for key, c in chain.items():
            out.add(fn(A, key), c)
        return out

    extended.__name__ = fn.__name__
    extended.__doc__ = fn.__doc__
    extended.on_word = fn
    return extended


# ---------------------------------------------------------------------------
# the differential and the Connes operator


def differential_word(A: FrobeniusAlgebra, w: ChainWord) -> Chain:
    """D = d0 + d1 on one word, with eps_i = |a0| + |a1| + ... + |a_{i-1}| - i + 1."""
    degs = A.degrees
    one = A.field.one
    out = Chain()
    a0, tail = w.head, w.tail
    n = len(tail)

    if A.has_differential:
        emit(out, A, one, A.d(a0), tail)
        eps = degs[a0]
        for i in range(1, n + 1):
            da = A.d(tail[i - 1])
            if da:
                emit(out, A, -signed(one, eps), a0, tail[: i - 1] + (da,) + tail[i:])
            eps += degs[tail[i - 1]] - 1

    if n == 0:
        return out
    emit(out, A, signed(one, degs[a0]), A.mul(a0, tail[0]), tail[1:])
    eps = degs[a0] + degs[tail[0]] - 1
    for i in range(2, n + 1):
        emit(out, A, signed(one, eps), a0, tail[: i - 2] + (A.mul(tail[i - 2], tail[i - 1]),) + tail[i:])
        eps += degs[tail[i - 1]] - 1
    eps_n = degs[a0] + sum(degs[a] for a in tail[:-1]) - n + 1
    emit(out, A, -signed(one, eps_n * (degs[tail[-1]] + 1)), A.mul(tail[-1], a0), tail[:-1])
    return out


hochschild_differential = linear(differential_word)


def connes_B_terms(A: FrobeniusAlgebra, w: ChainWord) -> Iterator[Tuple[int, Scalar, ChainWord]]:
    """The rotations of B one at a time as (r, sign, word); a0 sits at
    position len(tail) - r + 1 of the rotated tail."""
    if w.head == 0:
        return
    degs = A.degrees
    one = A.field.one
    letters = (w.head,) + w.tail
    shifted = [degs[a] - 1 for a in letters]
    total = sum(shifted)
    left = 0
    for r in range(1, len(letters) + 1):
        left += shifted[r - 1]
        yield r, signed(one, left * (total - left)), make_word(A, 0, letters[r:] + letters[:r])


def connes_B_word(A: FrobeniusAlgebra, w: ChainWord) -> Chain:
    """B(a0[a1..an]) = sum_i (-1)^{eps_i} 1[ai..an, a0, a1..a_{i-1}]."""
    out = Chain()
    for _, c, word in connes_B_terms(A, w):
        out.add_term(word, c)
    return out


connes_B = linear(connes_B_word)


# ---------------------------------------------------------------------------
# tensor powers of the complex


def tensor(*chains: Chain) -> Chain:
    """u (x) v (x) ... with keys flattened into tuples of words."""
    if not chains:
        return Chain()
    out = Chain({factors(k): c for k, c in chains[0].items()})
    for chain in chains[1:]:
        nxt = Chain()
        for k1, c1 in out.items():
            for k2, c2 in chain.items():
                nxt.add_term(k1 + factors(k2), c1 * c2)
        out = nxt
    return out


def apply_on_factor(
    fn: Callable[[FrobeniusAlgebra, ChainWord], Chain],
    fn_degree: int,
    A: FrobeniusAlgebra,
    chain: Chain,
    position: int,
) -> Chain:
    """(1 (x) .. (x) F (x) .. (x) 1) with the Koszul sign of F passing the
    factors in front of ``position``; tensor outputs of F are spliced in."""
    out = Chain()
    for key, c in chain.items():
        ws = factors(key)
        passed = sum(w.degree for w in ws[:position])
        s = signed(c, fn_degree * passed)
        for k, v in fn(A, ws[position]).items():
            out.add_term(ws[:position] + factors(k) + ws[position + 1:], s * v)
    return out


def tensor_differential(A: FrobeniusAlgebra, chain: Chain) -> Chain:
    """Sum over positions of 1 (x) .. (x) D (x) .. (x) 1."""
    out = Chain()
    width = next((len(factors(key)) for key in chain), 0)
    for position in range(width):
        out.add(apply_on_factor(differential_word, 1, A, chain, position))
    return out


def permute_factors(chain: Chain, order: Sequence[int]) -> Chain:
    """Reorder tensor factors (position i receives factor order[i]) with the Koszul sign."""
    out = Chain()
    for key, c in chain.items():
        ws = factors(key)
        exponent = 0
        for i in range(len(order)):
            for j in range(i + 1, len(order)):
                if order[j] < order[i]:
                    exponent += ws[order[i]].degree * ws[order[j]].degree
        out.add_term(tuple(ws[k] for k in order), signed(c, exponent))
    return out


def swap(chain: Chain) -> Chain:
    """tau(u (x) v) = (-1)^{|u||v|} v (x) u."""
    return permute_factors(chain, (1, 0))


def apply_word_op(fn: Callable[[FrobeniusAlgebra, ChainWord], Chain], A: FrobeniusAlgebra, chain: Chain) -> Chain:
    out = Chain()
    for key, c in chain.items():
        out.add(fn(A, key), c)
    return out


# ---------------------------------------------------------------------------
# windows


@dataclass(frozen=True)
class Truncation:
    max_length: int
    max_degree: Optional[int] = None

    def __post_init__(self):
        if self.max_length < 0:
            raise ValueError("max_length must be non-negative")

    @property
    def window(self) -> Window:
        return Window(max_length=self.max_length, max_degree=self.max_degree)

    def contains(self, w: ChainWord) -> bool:
        return w.length <= self.max_length and (self.max_degree is None or w.degree <= self.max_degree)


def enumerate_words(A: FrobeniusAlgebra, t: Truncation) -> List[ChainWord]:
    """All normalized words in the window, ordered by length, head, then tail."""
    words = []
    for n in range(t.max_length + 1):
        for head in range(A.dim):
            for tail in itertools.product(A.reduced, repeat=n):
                w = make_word(A, head, tail)
                if t.max_degree is None or w.degree <= t.max_degree:
                    words.append(w)
    return words


class WordBasis:
    """The enumerated basis of a window together with its index."""

    def __init__(self, A: FrobeniusAlgebra, t: Truncation):
        self.algebra = A
        self.truncation = t
        self.words = enumerate_words(A, t)
        self.index = {w: i for i, w in enumerate(self.words)}

    def __len__(self):
        return len(self.words)

    def position(self, w: ChainWord) -> int:
        try:
            return self.index[w]
        except KeyError:
            raise TruncationOverflow(w.render(self.algebra.names), self.truncation.max_length) from None


def word_rank(A: FrobeniusAlgebra, w: ChainWord) -> int:
    """Position of a word in the length-lexicographic order of all words,
    without enumerating anything."""
    r = A.dim - 1
    n = w.length
    offset = A.dim * sum(r ** k for k in range(n))
    inner = w.head * r ** n
    for i, a in enumerate(w.tail):
        inner += (a - 1) * r ** (n - 1 - i)
    return offset + inner


def count_words(A: FrobeniusAlgebra, max_length: int) -> int:
    r = A.dim - 1
    return A.dim * sum(r ** k for k in range(max_length + 1))


@dataclass(frozen=True)
class ChainOperator:
    """A multilinear chain operation evaluated on basis words.

    Output words are at most ``arity * L + growth`` letters long on inputs of
    length at most L; this sizes the default codomain window.
    """

    name: str
    arity: int
    outputs: int
    degree: int
    growth: int
    evaluate: Callable[..., Chain]

    def __call__(self, *words: ChainWord) -> Chain:
        return self.evaluate(*words)


def operator_matrix(
    op: ChainOperator,
    A: FrobeniusAlgebra,
    t: Truncation,
    codomain_length: Optional[int] = None,
) -> SparseMatrix:
    """Column j is op(word j) in the enumerated basis; multilinear operators use
    Kronecker-indexed domains and tensor outputs Kronecker-indexed codomains."""
    domain = WordBasis(A, t)
    out_length = op.arity * t.max_length + op.growth if codomain_length is None else codomain_length
    n_out = count_words(A, out_length)
    columns = []
    for inputs in itertools.product(domain.words, repeat=op.arity):
        col: Vector = {}
        for key, c in op(*inputs).items():
            row = 0
            for w in factors(key):
                if w.length > out_length:
                    raise TruncationOverflow(render_key(key, A.names), out_length)
                row = row * n_out + word_rank(A, w)
            col[row] = c
        columns.append(col)
    matrix = SparseMatrix.from_columns(n_out ** op.outputs, columns, A.field)
    logger.debug(f"operator_matrix({op.name}) on L={t.max_length}: {matrix.rows}x{matrix.cols}, nnz={matrix.nnz}")
    return matrix


def differential_operator(A: FrobeniusAlgebra) -> ChainOperator:
    return ChainOperator("D", 1, 1, 1, 0, lambda w: differential_word(A, w))


def connes_operator(A: FrobeniusAlgebra) -> ChainOperator:
    return ChainOperator("B", 1, 1, -1, 1, lambda w: connes_B_word(A, w))


# ---------------------------------------------------------------------------
# homology of the truncated complex


def _block(A, words_from, index_to, fn) -> SparseMatrix:
    columns = []
    for w in words_from:
        col = {}
        for key, c in fn(A, w).items():
            col[index_to[key]] = c
        columns.append(col)
    return SparseMatrix.from_columns(len(index_to), columns, A.field)


def _is_exact(A: FrobeniusAlgebra, t: Truncation, degree: int) -> bool:
    concentrated = all(A.degrees[i] >= 2 for i in A.reduced)
    return concentrated and degree <= t.max_length + 1


def homology_profile(A: FrobeniusAlgebra, t: Truncation) -> HomologyProfile:
    """Homology dimensions of the truncated complex.

    With d_A = 0 the differential lowers word length by one, so dimensions are
    reported per (internal degree, word length); otherwise per internal degree.
    """
    bigraded = not A.has_differential
    # one step beyond the window so the incoming and outgoing differentials stay inside the index
    reach = Truncation(t.max_length + (1 if bigraded else 0), None if t.max_degree is None else t.max_degree + 1)
    words = enumerate_words(A, reach)
    groups: Dict[Tuple[int, Optional[int]], List[ChainWord]] = {}
    for w in words:
        groups.setdefault((w.degree, w.length if bigraded else None), []).append(w)
    index = {key: {w: i for i, w in enumerate(ws)} for key, ws in groups.items()}

    def neighbour(key, step):
        deg, n = key
        return (deg + step, None if n is None else n - step)

    entries = []
    for key in sorted(groups, key=lambda k: (k[0], -1 if k[1] is None else k[1])):
        if t.max_degree is not None and key[0] > t.max_degree:
            continue
        if bigraded and key[1] > t.max_length:
            continue
        ws = groups[key]
        out_key = neighbour(key, 1)
        in_key = neighbour(key, -1)
        out_index = index.get(out_key, {})
        D_out = _block(A, ws, out_index, differential_word)
        if in_key in groups:
            D_in = _block(A, groups[in_key], index[key], differential_word)
        else:
            D_in = SparseMatrix.zeros(len(ws), 0, A.field)
        entries.append(
            HomologyEntry(
                degree=key[0],
                length=key[1],
                dimension=homology_dims(D_in, D_out),
                exact=_is_exact(A, t, key[0]),
            )
        )
    profile = HomologyProfile(algebra=A.name, window=t.window, entries=entries)
    logger.info(f"homology_profile({A.name}, L={t.max_length}): {len(entries)} bidegrees, {profile.label}")
    return profile


def induced_ranks(A: FrobeniusAlgebra, t: Truncation, op: ChainOperator, degree_step: int, length_step: int) -> List[InducedRank]:
    """Rank of the map induced on homology by a chain map of bidegree
    (degree_step, length_step), for every source bidegree whose image stays in
    the window. Requires d_A = 0."""
    if A.has_differential:
        raise ValueError("Induced ranks are computed on the bigraded complex only (d_A = 0)")
    reach = max(length_step, 0) + 1
    words = enumerate_words(A, Truncation(t.max_length + reach, t.max_degree))
    groups: Dict[Tuple[int, int], List[ChainWord]] = {}
    for w in words:
        groups.setdefault((w.degree, w.length), []).append(w)
    index = {key: {w: i for i, w in enumerate(ws)} for key, ws in groups.items()}
    out = []
    for (deg, n), ws in sorted(groups.items()):
        if n > t.max_length:
            continue
        target = (deg + degree_step, n + length_step)
        if target not in groups:
            continue
        D_out = _block(A, ws, index.get((deg + 1, n - 1), {}), differential_word)
        _, cycles = rank_kernel(D_out)
        source = (target[0] - 1, target[1] + 1)
        if source in groups:
            boundary = _block(A, groups[source], index[target], differential_word)
        else:
            boundary = SparseMatrix.zeros(len(groups[target]), 0, A.field)
        F = _block(A, ws, index[target], lambda _A, w: op(w))
        exact = _is_exact(A, t, deg) and _is_exact(A, t, target[0])
        out.append(
            InducedRank(operator=op.name, degree=deg, length=n, rank=induced_rank(F, cycles, boundary), exact=exact)
        )
    return out
