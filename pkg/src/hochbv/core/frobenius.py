# core/frobenius.py
"""
Finite-dimensional graded open (and closed) Frobenius algebras given by
structure constants.

Basis element 0 is always the unit. Coproducts are stored as Sweedler triple
lists: ``coproduct[i]`` holds ``(j, k, c)`` for the terms ``c e_j (x) e_k`` of
``delta(e_i)``.
"""
from __future__ import annotations

import dataclasses
import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from pydantic import ValidationError

from hochbv.config.constants import LEVEL_AXIOMS, LEVELS
from hochbv.core.exactlinalg import (
    INCONSISTENT,
    QQ,
    Field,
    Scalar,
    SparseMatrix,
    Vector,
    add_into,
    parse_field,
    rank,
    solve,
)
from hochbv.core.signs import sign, signed
from hochbv.exceptions import (
    AlgebraSchemaError,
    DegeneratePairingError,
    DegreeInconsistencyError,
    PairingNotInvariantError,
)
from hochbv.logging_config import logger
from hochbv.models.schemas import AlgebraFile, AxiomResult, BasisEntry, ValidationReport

Triple = Tuple[int, int, Scalar]
Tensor2 = Dict[Tuple[int, int], Scalar]
Tensor3 = Dict[Tuple[int, int, int], Scalar]


@dataclass(frozen=True)
class BasisElement:
    name: str
    degree: int


@dataclass(frozen=True, eq=False)
class FrobeniusAlgebra:
    """Structure constants of a graded open Frobenius algebra.

    The tables are complete: ``product`` contains the unit rows, missing keys
    mean zero. Instances are treated as immutable.
    """

    name: str
    basis: Tuple[BasisElement, ...]
    m: int
    product: Mapping[Tuple[int, int], Vector]
    differential: Mapping[int, Vector]
    coproduct: Mapping[int, Tuple[Triple, ...]]
    field: Field = QQ
    pairing: Optional[Mapping[Tuple[int, int], Scalar]] = None
    counit: Optional[Mapping[int, Scalar]] = None

    @cached_property
    def degrees(self) -> Tuple[int, ...]:
        return tuple(b.degree for b in self.basis)

    @cached_property
    def names(self) -> Tuple[str, ...]:
        return tuple(b.name for b in self.basis)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def reduced(self) -> range:
        """Indices of the basis of A-bar."""
        return range(1, len(self.basis))

    @cached_property
    def has_differential(self) -> bool:
        return any(self.differential.get(i) for i in range(self.dim))

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"No basis element named '{name}' in {self.name}") from None

    def deg(self, i: int) -> int:
        return self.basis[i].degree

    def mul(self, i: int, j: int) -> Vector:
        return self.product.get((i, j), {})

    def d(self, i: int) -> Vector:
        return self.differential.get(i, {})

    def delta(self, i: int) -> Tuple[Triple, ...]:
        return self.coproduct.get(i, ())

    def mul_vec(self, u: Mapping[int, Scalar], v: Mapping[int, Scalar]) -> Vector:
        out: Vector = {}
        for i, a in u.items():
            for j, b in v.items():
                add_into(out, self.mul(i, j), a * b)
        return out

    def mul_many(self, *indices: int) -> Vector:
        """Left-to-right product e_{i1} e_{i2} ... as a vector."""
        vec: Vector = {indices[0]: self.field.one}
        for j in indices[1:]:
            vec = self.mul_vec(vec, {j: self.field.one})
        return vec

    def d_vec(self, u: Mapping[int, Scalar]) -> Vector:
        out: Vector = {}
        for i, a in u.items():
            add_into(out, self.d(i), a)
        return out

    def unit_vector(self, i: int) -> Vector:
        return {i: self.field.one}

    def commutativity_counterexample(self) -> Optional[Tuple[str, str]]:
        degs = self.degrees
        for i, j in itertools.product(range(self.dim), repeat=2):
            left = self.mul(i, j)
            right = {k: signed(v, degs[i] * degs[j]) for k, v in self.mul(j, i).items()}
            if left != right:
                return (self.names[i], self.names[j])
        return None

    @cached_property
    def is_commutative(self) -> bool:
        return self.commutativity_counterexample() is None

    def replace(self, **changes: Any) -> "FrobeniusAlgebra":
        return dataclasses.replace(self, **changes)

    def format_vector(self, vec: Mapping[int, Scalar]) -> str:
        if not vec:
            return "0"
        return " + ".join(f"{self.field.format(c)}*{self.names[k]}" for k, c in sorted(vec.items()))


# ---------------------------------------------------------------------------
# loading


def _resolve(names: Sequence[str], token: Any, where: str) -> int:
    if isinstance(token, bool):
        raise AlgebraSchemaError(where, f"expected a basis index or name, got {token!r}")
    if isinstance(token, int):
        if not 0 <= token < len(names):
            raise AlgebraSchemaError(where, f"basis index {token} out of range")
        return token
    if isinstance(token, str) and token in names:
        return names.index(token)
    raise AlgebraSchemaError(where, f"unknown basis element {token!r}")


def _scalar(fld: Field, token: Any, where: str) -> Scalar:
    try:
        return fld(token if isinstance(token, (int, str)) else str(token))
    except (ValueError, ZeroDivisionError, TypeError) as e:
        raise AlgebraSchemaError(where, f"bad scalar {token!r}: {e}") from e


def _entries(fld, names, rows, arity: int, table: str):
    for n, row in enumerate(rows):
        where = f"{table}[{n}]"
        if len(row) != arity + 1:
            raise AlgebraSchemaError(where, f"expected {arity} indices and a scalar, got {len(row)} items")
        idx = tuple(_resolve(names, tok, f"{where}[{k}]") for k, tok in enumerate(row[:arity]))
        yield where, idx, _scalar(fld, row[arity], f"{where}[{arity}]")


def algebra_from_dict(data: Mapping[str, Any], field_override: Any = None) -> FrobeniusAlgebra:
    """Build an algebra from a parsed JSON document. Closed inputs (a pairing
    and no coproduct) get their coproduct derived from the pairing."""
    try:
        doc = AlgebraFile.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        raise AlgebraSchemaError(".".join(str(p) for p in first["loc"]) or "<root>", first["msg"]) from e

    fld = parse_field(field_override if field_override is not None else doc.field)
    names = [b.name for b in doc.basis]
    if len(set(names)) != len(names):
        raise AlgebraSchemaError("basis", "duplicate basis names")
    if doc.basis[0].degree != 0:
        raise AlgebraSchemaError("basis[0]", "basis element 0 is the unit and must have degree 0")
    basis = tuple(BasisElement(b.name, b.degree) for b in doc.basis)

    product: Dict[Tuple[int, int], Vector] = {}
    for where, (i, j, k), c in _entries(fld, names, doc.product, 3, "product"):
        add_into(product.setdefault((i, j), {}), {k: c})
    for i in range(len(names)):
        product.setdefault((0, i), {i: fld.one})
        product.setdefault((i, 0), {i: fld.one})
    product = {key: vec for key, vec in product.items() if vec}

    differential: Dict[int, Vector] = {}
    for where, (i, k), c in _entries(fld, names, doc.differential, 2, "differential"):
        add_into(differential.setdefault(i, {}), {k: c})

    pairing = None
    if doc.pairing is not None:
        pairing = {}
        for where, (i, j), c in _entries(fld, names, doc.pairing, 2, "pairing"):
            pairing[(i, j)] = pairing.get((i, j), fld.zero) + c
        pairing = {key: c for key, c in pairing.items() if c}

    counit = None
    if doc.counit is not None:
        counit = {}
        for where, (i,), c in _entries(fld, names, doc.counit, 1, "counit"):
            counit[i] = counit.get(i, fld.zero) + c
        counit = {key: c for key, c in counit.items() if c}

    if doc.coproduct is None:
        if pairing is None:
            raise AlgebraSchemaError("coproduct", "either a coproduct or a pairing is required")
        closed = derive_open_from_closed(
            [b.name for b in basis], [b.degree for b in basis], product, differential, pairing,
            m=doc.m, field=fld, name=doc.name,
        )
        if counit is not None:
            closed = closed.replace(counit=counit)
        return closed

    coproduct: Dict[int, Dict[Tuple[int, int], Scalar]] = {}
    for where, (i, j, k), c in _entries(fld, names, doc.coproduct, 3, "coproduct"):
        add_into(coproduct.setdefault(i, {}), {(j, k): c})

    algebra = FrobeniusAlgebra(
        name=doc.name,
        basis=basis,
        m=doc.m,
        product=product,
        differential={i: v for i, v in differential.items() if v},
        coproduct={i: tuple((j, k, c) for (j, k), c in sorted(t.items())) for i, t in coproduct.items() if t},
        field=fld,
        pairing=pairing,
        counit=counit if counit is not None else (counit_from_pairing(pairing) if pairing else None),
    )
    check_tables(algebra)
    return algebra


def algebra_to_dict(A: FrobeniusAlgebra) -> Dict[str, Any]:
    """Serialize to the algebra file format (coproduct always written out)."""
    fmt = A.field.format
    names = A.names
    doc: Dict[str, Any] = {
        "name": A.name,
        "field": "Q" if A.field.characteristic == 0 else {"Fp": A.field.characteristic},
        "m": A.m,
        "basis": [{"name": b.name, "degree": b.degree} for b in A.basis],
        "product": [
            [names[i], names[j], names[k], fmt(c)]
            for (i, j), vec in sorted(A.product.items())
            if i and j
            for k, c in sorted(vec.items())
        ],
        "differential": [[names[i], names[k], fmt(c)] for i, vec in sorted(A.differential.items()) for k, c in sorted(vec.items())],
        "coproduct": [[names[i], names[j], names[k], fmt(c)] for i in sorted(A.coproduct) for j, k, c in A.coproduct[i]],
    }
    if A.pairing is not None:
        doc["pairing"] = [[names[i], names[j], fmt(c)] for (i, j), c in sorted(A.pairing.items())]
    if A.counit is not None:
        doc["counit"] = [[names[i], fmt(c)] for i, c in sorted(A.counit.items())]
    return doc


def check_tables(A: FrobeniusAlgebra) -> None:
    """Reject degree-inconsistent structure constants before any checking."""
    degs = A.degrees
    n = A.dim
    for b in A.basis:
        if b.degree < 0:
            raise DegreeInconsistencyError("basis", b.name, 0, b.degree)
    for (i, j), vec in A.product.items():
        for k in vec:
            if not (0 <= i < n and 0 <= j < n and 0 <= k < n):
                raise AlgebraSchemaError("product", f"index out of range in {(i, j, k)}")
            if degs[k] != degs[i] + degs[j]:
                raise DegreeInconsistencyError("product", (A.names[i], A.names[j], A.names[k]), degs[i] + degs[j], degs[k])
    for i, vec in A.differential.items():
        for k in vec:
            if degs[k] != degs[i] + 1:
                raise DegreeInconsistencyError("differential", (A.names[i], A.names[k]), degs[i] + 1, degs[k])
    for i, triples in A.coproduct.items():
        for j, k, _ in triples:
            if degs[j] + degs[k] != degs[i] + A.m:
                raise DegreeInconsistencyError(
                    "coproduct", (A.names[i], A.names[j], A.names[k]), degs[i] + A.m, degs[j] + degs[k]
                )
    for (i, j) in (A.pairing or {}):
        if degs[i] + degs[j] != A.m:
            raise DegreeInconsistencyError("pairing", (A.names[i], A.names[j]), A.m, degs[i] + degs[j])
    for i in (A.counit or {}):
        if degs[i] != A.m:
            raise DegreeInconsistencyError("counit", A.names[i], A.m, degs[i])


# ---------------------------------------------------------------------------
# tensor helpers on A itself


def _coproduct_of(A: FrobeniusAlgebra, vec: Mapping[int, Scalar]) -> Tensor2:
    out: Tensor2 = {}
    for i, c in vec.items():
        for j, k, v in A.delta(i):
            add_into(out, {(j, k): v}, c)
    return out


def _left_action(A: FrobeniusAlgebra, x: int, t: Mapping[Tuple[int, int], Scalar]) -> Tensor2:
    """x . (u (x) v) = xu (x) v."""
    out: Tensor2 = {}
    for (j, k), c in t.items():
        for p, v in A.mul(x, j).items():
            add_into(out, {(p, k): v}, c)
    return out


def _right_action(A: FrobeniusAlgebra, t: Mapping[Tuple[int, int], Scalar], y: int) -> Tensor2:
    """(u (x) v) . y = u (x) vy."""
    out: Tensor2 = {}
    for (j, k), c in t.items():
        for p, v in A.mul(k, y).items():
            add_into(out, {(j, p): v}, c)
    return out


def swap2(A: FrobeniusAlgebra, t: Mapping[Tuple[int, int], Scalar]) -> Tensor2:
    """tau(u (x) v) = (-1)^{|u||v|} v (x) u."""
    degs = A.degrees
    return {(k, j): signed(c, degs[j] * degs[k]) for (j, k), c in t.items()}


def center_element(A: FrobeniusAlgebra, z: int) -> Vector:
    """c(z) = sum (-1)^{|z''||z'|} z'' z'."""
    degs = A.degrees
    out: Vector = {}
    for j, k, c in A.delta(z):
        add_into(out, A.mul(k, j), signed(c, degs[j] * degs[k]))
    return out


def counit_from_pairing(pairing: Mapping[Tuple[int, int], Scalar]) -> Dict[int, Scalar]:
    """eta(x) = <x, 1>."""
    return {i: c for (i, j), c in pairing.items() if j == 0 and c}


# ---------------------------------------------------------------------------
# validation


def _first_failure(tuples: Iterable[Tuple[int, ...]], holds) -> Optional[Tuple[int, ...]]:
    for tup in tuples:
        if not holds(*tup):
            return tup
    return None


def _axiom_checks(A: FrobeniusAlgebra) -> Dict[str, Tuple[int, Any]]:
    """axiom name -> (arity, predicate on basis indices)."""
    degs = A.degrees
    m = A.m
    one = A.field.one

    def unitality(i):
        return A.mul(0, i) == {i: one} and A.mul(i, 0) == {i: one}

    def associativity(i, j, k):
        return A.mul_vec(A.mul(i, j), {k: one}) == A.mul_vec({i: one}, A.mul(j, k))

    def d_squared(i):
        return not A.d_vec(A.d(i))

    def d_derivation(i, j):
        lhs = A.d_vec(A.mul(i, j))
        rhs = A.mul_vec(A.d(i), {j: one})
        add_into(rhs, A.mul_vec({i: one}, A.d(j)), sign(degs[i]))
        return lhs == rhs

    def coassociativity(i):
        lhs: Tensor3 = {}
        rhs: Tensor3 = {}
        for j, k, c in A.delta(i):
            for p, q, v in A.delta(j):
                add_into(lhs, {(p, q, k): v}, c)
            for p, q, v in A.delta(k):
                add_into(rhs, {(j, p, q): v}, signed(c, m + m * degs[j]))
        return lhs == rhs

    def coproduct_chain_map(i):
        lhs = _coproduct_of(A, A.d(i))
        rhs: Tensor2 = {}
        for j, k, c in A.delta(i):
            for p, v in A.d(j).items():
                add_into(rhs, {(p, k): v}, signed(c, m))
            for p, v in A.d(k).items():
                add_into(rhs, {(j, p): v}, signed(c, m + degs[j]))
        return lhs == rhs

    def frobenius_left_module(i, j):
        lhs = _coproduct_of(A, A.mul(i, j))
        rhs = _left_action(A, i, _coproduct_of(A, {j: one}))
        return lhs == {key: signed(c, m * degs[i]) for key, c in rhs.items()}

    def frobenius_right_module(i, j):
        lhs = _coproduct_of(A, A.mul(i, j))
        return lhs == _right_action(A, _coproduct_of(A, {i: one}), j)

    def symmetry():
        t = _coproduct_of(A, {0: one})
        return t == {key: signed(c, m) for key, c in swap2(A, t).items()}

    def commutativity(i, j):
        return A.mul(i, j) == {k: signed(v, degs[i] * degs[j]) for k, v in A.mul(j, i).items()}

    def structural(*_):
        return True

    return {
        "unitality": (1, unitality),
        "product_degree": (0, structural),
        "differential_degree": (0, structural),
        "associativity": (3, associativity),
        "d_squared": (1, d_squared),
        "d_derivation": (2, d_derivation),
        "coproduct_degree": (0, structural),
        "coassociativity": (1, coassociativity),
        "coproduct_chain_map": (1, coproduct_chain_map),
        "frobenius_left_module": (2, frobenius_left_module),
        "frobenius_right_module": (2, frobenius_right_module),
        "symmetry": (0, symmetry),
        "commutativity": (2, commutativity),
    }


def validate(A: FrobeniusAlgebra, level: str = "symmetric_open") -> ValidationReport:
    """Check every axiom up to ``level`` on all basis tuples."""
    if level not in LEVELS:
        raise ValueError(f"Unknown level '{level}'; expected one of {LEVELS}")
    check_tables(A)
    checks = _axiom_checks(A)
    results: List[AxiomResult] = []
    for lvl in LEVELS[: LEVELS.index(level) + 1]:
        for axiom in LEVEL_AXIOMS[lvl]:
            arity, holds = checks[axiom]
            failure = _first_failure(itertools.product(range(A.dim), repeat=arity), holds)
            results.append(
                AxiomResult(
                    axiom=axiom,
                    passed=failure is None,
                    counterexample=None if failure is None else [A.names[i] for i in failure],
                )
            )
    report = ValidationReport(algebra=A.name, level=level, results=results)
    logger.info(f"validate({A.name}, {level}): {'pass' if report.passed else 'fail'}")
    return report


def check_propositions(A: FrobeniusAlgebra) -> ValidationReport:
    """Cocommutativity (commutative A), centrality of c(z), counit identities."""
    degs = A.degrees
    m = A.m
    one = A.field.one
    results: List[AxiomResult] = []

    def record(item: str, failure: Optional[Tuple[int, ...]]):
        results.append(
            AxiomResult(
                axiom=item,
                passed=failure is None,
                counterexample=None if failure is None else [A.names[i] for i in failure],
            )
        )

    if A.is_commutative:
        def cocommutative(z):
            t = _coproduct_of(A, {z: one})
            return t == {key: signed(c, m) for key, c in swap2(A, t).items()}

        record("cocommutativity", _first_failure(((z,) for z in range(A.dim)), cocommutative))

    def central(z, x):
        c = center_element(A, z)
        return A.mul_vec(c, {x: one}) == {
            k: signed(v, (m + degs[z]) * degs[x]) for k, v in A.mul_vec({x: one}, c).items()
        }

    record("center", _first_failure(itertools.product(range(A.dim), repeat=2), central))

    if A.counit is not None:
        eta = A.counit

        def ev(vec: Mapping[int, Scalar]) -> Scalar:
            return sum((c * eta[k] for k, c in vec.items() if k in eta), A.field.zero)

        def counit_left(x):
            first: Vector = {}
            second: Vector = {}
            for j, k, c in A.delta(x):
                add_into(first, {k: eta.get(j, A.field.zero)}, signed(c, m * degs[j]))
                add_into(second, {j: eta.get(k, A.field.zero)}, signed(c, m * degs[j]))
            return first == {x: one} == second

        def counit_unit(x, twisted=False):
            first: Vector = {}
            second: Vector = {}
            for j, k, c in A.delta(0):
                s = degs[j] if twisted else m * degs[j]
                left = A.mul(j, x) if twisted else A.mul(x, j)
                right = A.mul(x, k) if twisted else A.mul(k, x)
                add_into(first, {k: ev(left)}, signed(c, s))
                add_into(second, {j: ev(right)}, signed(c, s))
            return first == {x: one} == second

        record("counit_left", _first_failure(((x,) for x in range(A.dim)), counit_left))
        record("counit_unit", _first_failure(((x,) for x in range(A.dim)), counit_unit))
        record(
            "counit_unit_twisted",
            _first_failure(((x,) for x in range(A.dim)), lambda x: counit_unit(x, twisted=True)),
        )
        if A.pairing is not None:
            def round_trip(x, y):
                return A.pairing.get((x, y), A.field.zero) == ev(A.mul(x, y))

            record("pairing_round_trip", _first_failure(itertools.product(range(A.dim), repeat=2), round_trip))

    report = ValidationReport(algebra=A.name, level="propositions", results=results)
    logger.info(f"check_propositions({A.name}): {'pass' if report.passed else 'fail'}")
    return report


# ---------------------------------------------------------------------------
# closed Frobenius algebras


def _gram_blocks(degrees: Sequence[int], pairing, m: int, fld: Field):
    by_degree: Dict[int, List[int]] = {}
    for i, d in enumerate(degrees):
        by_degree.setdefault(d, []).append(i)
    for d, rows in sorted(by_degree.items()):
        cols = by_degree.get(m - d, [])
        block = SparseMatrix(
            len(rows),
            len(cols),
            {(r, c): pairing[(i, j)] for r, i in enumerate(rows) for c, j in enumerate(cols) if (i, j) in pairing},
            fld,
        )
        yield d, rows, cols, block


def derive_open_from_closed(
    basis: Sequence[str],
    degrees: Sequence[int],
    product: Mapping[Tuple[int, int], Vector],
    differential: Mapping[int, Vector],
    pairing: Mapping[Tuple[int, int], Scalar],
    m: Optional[int] = None,
    field: Field = QQ,
    name: str = "closed",
) -> FrobeniusAlgebra:
    """The coproduct determined by <x, ab> = sum (-1)^{m|x'|} <x'', a><x', b>."""
    n = len(basis)
    pairing = {key: field(c) for key, c in pairing.items() if c}
    if m is None:
        if not pairing:
            raise DegeneratePairingError()
        i, j = next(iter(sorted(pairing)))
        m = degrees[i] + degrees[j]
    shell = FrobeniusAlgebra(
        name=name,
        basis=tuple(BasisElement(b, d) for b, d in zip(basis, degrees)),
        m=m,
        product=dict(product),
        differential=dict(differential),
        coproduct={},
        field=field,
        pairing=pairing,
        counit=counit_from_pairing(pairing),
    )
    check_tables(shell)
    degs = shell.degrees
    one = field.one

    def pair(i, j):
        return pairing.get((i, j), field.zero)

    def pair_vec(u: Mapping[int, Scalar], v: Mapping[int, Scalar]):
        return sum((a * b * pair(i, j) for i, a in u.items() for j, b in v.items()), field.zero)

    for i, j in itertools.product(range(n), repeat=2):
        if pair(i, j) != signed(pair(j, i), degs[i] * degs[j]):
            raise PairingNotInvariantError(f"not graded symmetric at ({basis[i]}, {basis[j]})")
    for d, rows, cols, block in _gram_blocks(degs, pairing, m, field):
        if len(rows) != len(cols) or rank(block) != len(rows):
            logger.error(f"Gram block of degree {d} is singular")
            raise DegeneratePairingError(d)
    for i, j, k in itertools.product(range(n), repeat=3):
        if pair_vec(shell.mul(i, j), {k: one}) != pair_vec({i: one}, shell.mul(j, k)):
            raise PairingNotInvariantError(f"<xy,z> != <x,yz> at ({basis[i]}, {basis[j]}, {basis[k]})")
    for i, j in itertools.product(range(n), repeat=2):
        lhs = pair_vec(shell.d(i), {j: one})
        rhs = signed(pair_vec({i: one}, shell.d(j)), degs[i] + 1)
        if lhs != rhs:
            raise PairingNotInvariantError(f"<dx,y> != -(-1)^|x| <x,dy> at ({basis[i]}, {basis[j]})")

    # unknowns: coefficient of e_j (x) e_k in delta(e_x), degree-admissible pairs only
    coproduct: Dict[int, Tuple[Triple, ...]] = {}
    equations = list(itertools.product(range(n), repeat=2))
    for x in range(n):
        unknowns = [(j, k) for j, k in itertools.product(range(n), repeat=2) if degs[j] + degs[k] == degs[x] + m]
        entries = {}
        for r, (a, b) in enumerate(equations):
            for c, (j, k) in enumerate(unknowns):
                v = signed(pair(k, a) * pair(j, b), m * degs[j])
                if v:
                    entries[(r, c)] = v
        rhs = {r: pair_vec({x: one}, shell.mul(a, b)) for r, (a, b) in enumerate(equations)}
        rhs = {r: v for r, v in rhs.items() if v}
        solution = solve(SparseMatrix(len(equations), len(unknowns), entries, field), rhs)
        if solution is INCONSISTENT:
            raise PairingNotInvariantError(f"no coproduct satisfies the defining identity at {basis[x]}")
        coproduct[x] = tuple((unknowns[c][0], unknowns[c][1], v) for c, v in sorted(solution.items()))

    algebra = shell.replace(coproduct={x: t for x, t in coproduct.items() if t})
    logger.info(f"Derived coproduct of {name} (m={m}) from its pairing")
    return algebra
