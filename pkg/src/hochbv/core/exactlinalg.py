# core/exactlinalg.py
"""
Exact scalars over Q and F_p, and sparse linear algebra on sympy's
``DomainMatrix``.

Scalars are elements of a sympy polys domain (``QQ`` or ``GF(p)``). Vectors
are plain ``dict[int, Scalar]`` with no stored zeros. ``SparseMatrix`` wraps a
sparse ``DomainMatrix`` over the field's domain; rank, kernel and solve go
through its ``rref`` and ``nullspace``, so every result is deterministic.
"""
from __future__ import annotations

from abc import ABC, abstractmethod
from fractions import Fraction
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple, Union

import sympy
from sympy.polys.domains import GF
from sympy.polys.domains import QQ as RATIONALS
from sympy.polys.domains.domain import Domain
from sympy.polys.matrices import DomainMatrix

from hochbv.exceptions import BrokenComplexError, ConfigurationError
from hochbv.logging_config import logger

Scalar = Any  # an element of Field.domain
Vector = Dict[int, Scalar]


class Field(ABC):
    """The ground field of a session, backed by a sympy domain."""

    characteristic: int
    domain: Domain

    @property
    @abstractmethod
    def spec(self) -> str:
        """Canonical text form: 'Q' or 'Fp:<p>'."""

    @abstractmethod
    def _from_fraction(self, value: Fraction) -> Scalar:
        ...

    @abstractmethod
    def format(self, value: Scalar) -> str:
        ...

    def __call__(self, value: Union[int, Fraction, str, Scalar]) -> Scalar:
        """Coerce an int, Fraction, 'num/den' string or domain element into the field."""
        if isinstance(value, bool):
            value = int(value)
        if self.domain.of_type(value):
            return value
        if isinstance(value, str):
            return self._from_fraction(_parse_fraction(value))
        if isinstance(value, int):
            return self.domain(value)
        if isinstance(value, Fraction):
            return self._from_fraction(value)
        raise TypeError(f"Cannot coerce {value!r} into {self.spec}")

    @property
    def zero(self) -> Scalar:
        return self.domain.zero

    @property
    def one(self) -> Scalar:
        return self.domain.one

    def __eq__(self, other):
        return isinstance(other, Field) and self.spec == other.spec

    def __hash__(self):
        return hash(self.spec)

    def __repr__(self):
        return f"Field({self.spec})"


def _parse_fraction(text: str) -> Fraction:
    text = text.strip()
    if "/" in text:
        num, den = text.split("/", 1)
        if int(den) == 0:
            raise ValueError(f"Zero denominator in '{text}'")
        return Fraction(int(num), int(den))
    return Fraction(int(text))


class RationalField(Field):
    characteristic = 0
    domain = RATIONALS

    @property
    def spec(self) -> str:
        return "Q"

    def _from_fraction(self, value: Fraction) -> Scalar:
        return self.domain(value.numerator, value.denominator)

    def format(self, value: Scalar) -> str:
        value = self(value)
        num, den = int(self.domain.numer(value)), int(self.domain.denom(value))
        return str(num) if den == 1 else f"{num}/{den}"


class PrimeField(Field):
    def __init__(self, p: int):
        if not sympy.isprime(p):
            raise ConfigurationError(f"{p} is not prime")
        self.characteristic = p
        self.domain = GF(p)

    @property
    def spec(self) -> str:
        return f"Fp:{self.characteristic}"

    def _from_fraction(self, value: Fraction) -> Scalar:
        p = self.characteristic
        if value.denominator % p == 0:
            raise ZeroDivisionError(f"Denominator of {value} vanishes mod {p}")
        return self.domain(value.numerator * pow(value.denominator, -1, p))

    def format(self, value: Scalar) -> str:
        return str(int(self(value)) % self.characteristic)


QQ = RationalField()


def parse_field(spec: Union[str, Mapping, Field, None]) -> Field:
    """Parse 'Q', 'Fp:7', 'F7' or {"Fp": 7}."""
    if spec is None:
        return QQ
    if isinstance(spec, Field):
        return spec
    if isinstance(spec, Mapping):
        if set(spec) != {"Fp"}:
            raise ConfigurationError(f"Unknown field description {dict(spec)}")
        return PrimeField(int(spec["Fp"]))
    text = str(spec).strip()
    if text in ("Q", "QQ"):
        return QQ
    for prefix in ("Fp:", "Fp", "F"):
        if text.startswith(prefix) and text[len(prefix):].isdigit():
            return PrimeField(int(text[len(prefix):]))
    raise ConfigurationError(f"Unknown field '{spec}'; use 'Q' or 'Fp:<p>'")


def check_characteristic(fld: Field, max_length: int) -> bool:
    """Warn when p does not exceed the longest word length in use."""
    if fld.characteristic and fld.characteristic <= max_length:
        logger.warning(
            f"Characteristic {fld.characteristic} does not exceed word length {max_length}; "
            "combinatorial coefficients may vanish accidentally"
        )
        return False
    return True


def add_into(target: Vector, source: Mapping[int, Scalar], factor=1) -> Vector:
    """target += factor * source, dropping entries that cancel."""
    for k, v in source.items():
        nv = target[k] + factor * v if k in target else factor * v
        if nv:
            target[k] = nv
        else:
            target.pop(k, None)
    return target


class SparseMatrix:
    """An immutable exact matrix over a Field, stored as a sparse DomainMatrix."""

    __slots__ = ("rep", "field")

    def __init__(self, rows: int, cols: int, entries: Optional[Mapping[Tuple[int, int], Scalar]] = None, field: Field = QQ):
        sdm: Dict[int, Dict[int, Scalar]] = {}
        for (r, c), v in (entries or {}).items():
            if not (0 <= r < rows and 0 <= c < cols):
                raise IndexError(f"Entry ({r}, {c}) outside a {rows}x{cols} matrix")
            v = field(v)
            if v:
                sdm.setdefault(r, {})[c] = v
        self.rep = DomainMatrix(sdm, (rows, cols), field.domain)
        self.field = field

    @classmethod
    def from_rep(cls, rep: DomainMatrix, fld: Field) -> "SparseMatrix":
        obj = cls.__new__(cls)
        obj.rep = rep.to_sparse()
        obj.field = fld
        return obj

    @classmethod
    def zeros(cls, rows: int, cols: int, fld: Field = QQ) -> "SparseMatrix":
        return cls(rows, cols, {}, fld)

    @classmethod
    def identity(cls, n: int, fld: Field = QQ) -> "SparseMatrix":
        return cls(n, n, {(i, i): fld.one for i in range(n)}, fld)

    @classmethod
    def from_dense(cls, data: Sequence[Sequence], fld: Field = QQ) -> "SparseMatrix":
        rows = len(data)
        cols = len(data[0]) if rows else 0
        return cls(rows, cols, {(r, c): v for r, row in enumerate(data) for c, v in enumerate(row) if v}, fld)

    @classmethod
    def from_columns(cls, rows: int, columns: Sequence[Mapping[int, Scalar]], fld: Field = QQ) -> "SparseMatrix":
        return cls(rows, len(columns), {(r, c): v for c, col in enumerate(columns) for r, v in col.items()}, fld)

    @property
    def rows(self) -> int:
        return self.rep.shape[0]

    @property
    def cols(self) -> int:
        return self.rep.shape[1]

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rep.shape

    @property
    def entries(self) -> Dict[Tuple[int, int], Scalar]:
        return {(r, c): v for r, row in self.rep.to_sdm().items() for c, v in row.items() if v}

    @property
    def nnz(self) -> int:
        return len(self.entries)

    def is_zero(self) -> bool:
        return not self.entries

    def __eq__(self, other):
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return self.field == other.field and self.shape == other.shape and self.entries == other.entries

    __hash__ = None

    def __repr__(self):
        return f"SparseMatrix({self.rows}x{self.cols}, nnz={self.nnz}, {self.field.spec})"

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix.from_rep(self.rep.transpose(), self.field)

    def apply(self, vector: Mapping[int, Scalar]) -> Vector:
        column = SparseMatrix(self.cols, 1, {(c, 0): x for c, x in vector.items()}, self.field)
        return {r: v for (r, _), v in (self @ column).entries.items()}

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.cols != other.rows:
            raise ValueError(f"Shape mismatch {self.shape} @ {other.shape}")
        if self.is_zero() or other.is_zero():
            return SparseMatrix.zeros(self.rows, other.cols, self.field)
        return SparseMatrix.from_rep(self.rep.matmul(other.rep), self.field)

    def __sub__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.shape != other.shape:
            raise ValueError(f"Shape mismatch {self.shape} - {other.shape}")
        return SparseMatrix.from_rep(self.rep - other.rep, self.field)

    def hstack(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.rows != other.rows:
            raise ValueError(f"Row mismatch {self.rows} vs {other.rows}")
        if not self.cols:
            return other
        if not other.cols:
            return self
        return SparseMatrix.from_rep(self.rep.hstack(other.rep), self.field)

    def to_dense(self) -> List[List[Scalar]]:
        dense = [[self.field.zero] * self.cols for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            dense[r][c] = v
        return dense


def rank(M: SparseMatrix) -> int:
    if M.is_zero():
        return 0
    return M.rep.rank()


def rank_kernel(M: SparseMatrix) -> Tuple[int, List[Vector]]:
    """Rank of M and a basis of its kernel, one vector per free column."""
    if M.is_zero():
        return 0, [{c: M.field.one} for c in range(M.cols)]
    null = M.rep.nullspace().to_sdm()
    kernel = [{c: v for c, v in sorted(null[i].items()) if v} for i in sorted(null)]
    return M.cols - len(kernel), kernel


class _Inconsistent:
    def __repr__(self):
        return "INCONSISTENT"

    def __bool__(self):
        return False


INCONSISTENT = _Inconsistent()


def solve(M: SparseMatrix, b: Mapping[int, Scalar]) -> Union[Vector, _Inconsistent]:
    """A solution of Mx = b (free variables set to zero) or INCONSISTENT."""
    if any(not 0 <= r < M.rows for r in b):
        raise IndexError("Right-hand side does not match the row dimension")
    rhs = SparseMatrix(M.rows, 1, {(r, 0): v for r, v in b.items()}, M.field)
    if rhs.is_zero():
        return {}
    if M.is_zero() or not M.cols:
        return INCONSISTENT
    reduced, pivots = M.rep.hstack(rhs.rep).rref()
    if M.cols in pivots:
        return INCONSISTENT
    rows = reduced.to_sdm()
    x: Vector = {}
    for r, c in enumerate(pivots):
        v = rows.get(r, {}).get(M.cols)
        if v:
            x[c] = v
    return x


def homology_dims(D_in: SparseMatrix, D_out: SparseMatrix) -> int:
    """dim ker(D_out) - rank(D_in) at the middle term of D_in followed by D_out."""
    if D_in.rows != D_out.cols:
        raise ValueError(f"Middle dimensions differ: {D_in.rows} vs {D_out.cols}")
    composite = D_out @ D_in
    if not composite.is_zero():
        raise BrokenComplexError(composite.rows, composite.cols)
    dim = (D_out.cols - rank(D_out)) - rank(D_in)
    logger.debug(f"homology at middle dimension {D_out.cols}: {dim}")
    return dim


def induced_rank(F: SparseMatrix, cycles: Sequence[Mapping[int, Scalar]], boundary: SparseMatrix) -> int:
    """Rank of the map induced on homology by F, given a basis of the cycles in
    its domain and the incoming differential of its codomain."""
    if boundary.rows != F.rows:
        raise ValueError(f"Codomain mismatch: {F.rows} vs {boundary.rows}")
    images = [F.apply(z) for z in cycles]
    stacked = boundary.hstack(SparseMatrix.from_columns(F.rows, images, F.field))
    return rank(stacked) - rank(boundary)


def export_coordinate(M: SparseMatrix) -> str:
    """Coordinate text format: header 'rows cols nnz field', then 'row col value'."""
    entries = M.entries
    lines = [f"{M.rows} {M.cols} {len(entries)} {M.field.spec}"]
    for (r, c) in sorted(entries):
        lines.append(f"{r} {c} {M.field.format(entries[(r, c)])}")
    return "\n".join(lines) + "\n"


def parse_coordinate(text: str) -> SparseMatrix:
    lines = [line for line in text.splitlines() if line.strip()]
    rows, cols, nnz, spec = lines[0].split()
    fld = parse_field(spec)
    entries = {}
    for line in lines[1:]:
        r, c, v = line.split()
        entries[(int(r), int(c))] = fld(v)
    if len(entries) != int(nnz):
        raise ValueError(f"Header announces {nnz} entries, found {len(entries)}")
    return SparseMatrix(int(rows), int(cols), entries, fld)
