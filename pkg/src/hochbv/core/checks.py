# core/checks.py
"""
Runner for identity checks over a window of basis words.

Chain-level identities compare both sides exactly on every basis input tuple
and stop at the first disagreement. Homology-level identities evaluate a defect
map on tensor products of cycles of the word complex and ask whether each image is
a boundary in the target complex.
"""
from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from typing import Callable, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from hochbv.config.constants import STATUS_FAIL, STATUS_NEEDS_LARGER_WINDOW, STATUS_PASS
from hochbv.core.exactlinalg import INCONSISTENT, SparseMatrix, rank_kernel, solve
from hochbv.core.frobenius import FrobeniusAlgebra
from hochbv.core.hochschild import (
    Chain,
    ChainWord,
    Key,
    Truncation,
    differential_word,
    enumerate_words,
    factors,
    make_word,
    render_key,
    tensor_differential,
)
from hochbv.exceptions import TruncationOverflow, UnknownOperationError
from hochbv.logging_config import logger
from hochbv.models.schemas import IdentityReport, Window


@dataclass(frozen=True)
class Identity:
    """An equation between two multilinear chain expressions.

    With ``homology=True`` only ``lhs`` is used: it is a defect map that must
    send cycles to boundaries of the ``outputs``-fold tensor complex.
    """

    name: str
    arity: int
    lhs: Callable[..., Chain]
    rhs: Optional[Callable[..., Chain]] = None
    homology: bool = False
    outputs: int = 1
    min_length: int = 0
    description: str = ""


def word_weight(w: ChainWord) -> int:
    """Sum of the unshifted letter degrees; D preserves it when d_A = 0."""
    return w.degree + w.length


def _inputs(A: FrobeniusAlgebra, identity: Identity, t: Truncation) -> List[Tuple[ChainWord, ...]]:
    words = [w for w in enumerate_words(A, t) if w.length >= identity.min_length]
    return list(itertools.product(words, repeat=identity.arity))


def _check_length(A: FrobeniusAlgebra, chain: Chain, limit: Optional[int]) -> None:
    if limit is None:
        return
    for key in chain:
        for w in factors(key):
            if w.length > limit:
                raise TruncationOverflow(render_key(key, A.names), limit)


def _render_inputs(A: FrobeniusAlgebra, inputs: Sequence[ChainWord]) -> List[str]:
    return [w.render(A.names) for w in inputs]


def run_equation(
    name: str,
    window: Window,
    inputs: Iterable[Tuple],
    lhs: Callable[..., object],
    rhs: Callable[..., object],
    render_inputs: Callable[[Tuple], List[str]],
    render_value: Callable[[object], str],
) -> IdentityReport:
    """Compare ``lhs(*tup)`` with ``rhs(*tup)`` for every input tuple."""
    start = time.perf_counter()
    checked = 0
    try:
        for tup in inputs:
            left, right = lhs(*tup), rhs(*tup)
            checked += 1
            if left != right:
                logger.info(f"{name}: fails at {render_inputs(tup)}")
                return IdentityReport(
                    identity=name,
                    window=window,
                    status=STATUS_FAIL,
                    counterexample=render_inputs(tup),
                    lhs=render_value(left),
                    rhs=render_value(right),
                    wall_time=time.perf_counter() - start,
                )
    except TruncationOverflow as e:
        logger.warning(f"{name}: {e}")
        return IdentityReport(
            identity=name,
            window=window,
            status=STATUS_NEEDS_LARGER_WINDOW,
            detail=str(e),
            wall_time=time.perf_counter() - start,
        )
    elapsed = time.perf_counter() - start
    logger.info(f"{name}: pass on {checked} input tuples in {elapsed:.3f}s")
    return IdentityReport(identity=name, window=window, status=STATUS_PASS, detail=f"{checked} input tuples", wall_time=elapsed)


def check_identity(
    A: FrobeniusAlgebra,
    identity: Identity,
    t: Truncation,
    codomain_length: Optional[int] = None,
) -> IdentityReport:
    """Check one identity on all basis input tuples of the window."""
    if identity.homology:
        return _check_on_homology(A, identity, t)

    def left(*ws):
        value = identity.lhs(*ws)
        _check_length(A, value, codomain_length)
        return value

    def right(*ws):
        value = identity.rhs(*ws)
        _check_length(A, value, codomain_length)
        return value

    return run_equation(
        identity.name,
        t.window,
        _inputs(A, identity, t),
        left,
        right,
        lambda tup: _render_inputs(A, tup),
        lambda chain: chain.render(A),
    )


# ---------------------------------------------------------------------------
# homology-level checks


def tuple_bigrading(key: Key) -> Tuple[int, int]:
    ws = factors(key)
    return sum(word_weight(w) for w in ws), sum(w.length for w in ws)


class _WordTable:
    """Basis words grouped by (length, weight), built on demand."""

    def __init__(self, A: FrobeniusAlgebra):
        self.algebra = A
        self._by_length: Dict[int, Dict[int, List[ChainWord]]] = {}

    def words(self, length: int, weight: int) -> List[ChainWord]:
        if length not in self._by_length:
            table: Dict[int, List[ChainWord]] = {}
            A = self.algebra
            for head in range(A.dim):
                for tail in itertools.product(A.reduced, repeat=length):
                    w = make_word(A, head, tail)
                    table.setdefault(word_weight(w), []).append(w)
            self._by_length[length] = table
        return self._by_length[length].get(weight, [])

    def weights(self, length: int) -> List[int]:
        self.words(length, 0)
        return sorted(self._by_length[length])


def tensor_block(
    table: _WordTable, width: int, weight: int, total_length: int, min_length: int = 0
) -> Iterator[Tuple[ChainWord, ...]]:
    """All ``width``-fold tuples of words with the given total weight and length."""
    if width == 0:
        if weight == 0 and total_length == 0:
            yield ()
        return
    if width == 1:
        if total_length >= min_length:
            for w in table.words(total_length, weight):
                yield (w,)
        return
    for n in range(min_length, total_length - min_length * (width - 1) + 1):
        for wt in table.weights(n):
            if wt > weight:
                continue
            for w in table.words(n, wt):
                for rest in tensor_block(table, width - 1, weight - wt, total_length - n, min_length):
                    yield (w,) + rest


def _boundary_block(
    A: FrobeniusAlgebra, source: Sequence[Tuple[ChainWord, ...]], target_index: Dict[Tuple[ChainWord, ...], int]
) -> SparseMatrix:
    columns = []
    for key in source:
        col = {}
        for k, c in tensor_differential(A, Chain.of(key, A.field.one)).items():
            k = factors(k)
            if k not in target_index:
                raise ValueError(f"D leaves the complex at {render_key(k, A.names)}")
            col[target_index[k]] = c
        columns.append(col)
    return SparseMatrix.from_columns(len(target_index), columns, A.field)


def _is_boundary(A: FrobeniusAlgebra, chain: Chain, table: _WordTable, width: int, min_length: int, cache: Dict) -> bool:
    parts: Dict[Tuple[int, int], Chain] = {}
    for key, c in chain.items():
        parts.setdefault(tuple_bigrading(key), Chain()).add_term(factors(key), c)
    for (weight, length), part in parts.items():
        if (weight, length) not in cache:
            index = {key: i for i, key in enumerate(tensor_block(table, width, weight, length, min_length))}
            source = list(tensor_block(table, width, weight, length + 1, min_length))
            cache[(weight, length)] = (index, _boundary_block(A, source, index))
        index, boundary = cache[(weight, length)]
        b = {}
        for key, c in part.items():
            if key not in index:
                return False
            b[index[key]] = c
        if solve(boundary, b) is INCONSISTENT:
            return False
    return True


def _factor_cycles(A: FrobeniusAlgebra, t: Truncation, min_length: int, table: _WordTable) -> List[Chain]:
    """A basis of the cycles among the window's words, each homogeneous in
    weight and length."""
    groups: Dict[Tuple[int, int], List[ChainWord]] = {}
    for w in enumerate_words(A, t):
        if w.length >= min_length:
            groups.setdefault((word_weight(w), w.length), []).append(w)
    cycles = []
    for (weight, length), words in sorted(groups.items()):
        target = {w: i for i, w in enumerate(table.words(length - 1, weight))} if length else {}
        columns = [{target[k]: c for k, c in differential_word(A, w).items()} for w in words]
        _, kernel = rank_kernel(SparseMatrix.from_columns(len(target), columns, A.field))
        cycles.extend(Chain({words[i]: c for i, c in z.items()}) for z in kernel)
    return cycles


def _check_on_homology(A: FrobeniusAlgebra, identity: Identity, t: Truncation) -> IdentityReport:
    """Over a field the tensor products of factor cycles span the homology of
    the input complex, so the defect is evaluated on those."""
    if A.has_differential:
        raise ValueError(f"{identity.name} is checked on homology, which needs d_A = 0")
    start = time.perf_counter()
    table = _WordTable(A)
    cycles = _factor_cycles(A, t, identity.min_length, table)
    cache: Dict = {}
    n_cycles = 0
    for combo in itertools.product(cycles, repeat=identity.arity):
        n_cycles += 1
        image = Chain()
        for terms in itertools.product(*(z.items() for z in combo)):
            coeff = A.field.one
            for _, c in terms:
                coeff = coeff * c
            image.add(identity.lhs(*(w for w, _ in terms)), coeff)
        if image and not _is_boundary(A, image, table, identity.outputs, identity.min_length, cache):
            logger.info(f"{identity.name}: defect of a cycle is not a boundary")
            return IdentityReport(
                identity=identity.name,
                window=t.window,
                status=STATUS_FAIL,
                counterexample=[z.render(A) for z in combo],
                lhs=image.render(A),
                rhs="not a boundary",
                detail="homology-level check",
                wall_time=time.perf_counter() - start,
            )
    elapsed = time.perf_counter() - start
    logger.info(f"{identity.name}: pass on {n_cycles} cycles in {elapsed:.3f}s")
    return IdentityReport(
        identity=identity.name,
        window=t.window,
        status=STATUS_PASS,
        detail=f"homology-level check on {n_cycles} cycles",
        wall_time=elapsed,
    )


def check_all(
    A: FrobeniusAlgebra,
    catalog: Dict[str, Identity],
    t: Truncation,
    names: Optional[Sequence[str]] = None,
    codomain_length: Optional[int] = None,
) -> List[IdentityReport]:
    selected = list(catalog) if not names else list(names)
    for name in selected:
        if name not in catalog:
            raise UnknownOperationError(name, sorted(catalog))
    return [check_identity(A, catalog[name], t, codomain_length) for name in selected]
