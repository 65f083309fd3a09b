# exceptions.py
from typing import Any, Optional, Sequence


class HochbvError(Exception):
    """Base class for every error raised by the engine."""


class AlgebraSchemaError(HochbvError):
    def __init__(self, field: str, detail: str):
        super().__init__(f"Invalid algebra file at '{field}': {detail}")
        self.field = field
        self.detail = detail


class DegreeInconsistencyError(HochbvError):
    def __init__(self, table: str, entry: Any, expected: int, actual: int):
        super().__init__(
            f"Degree-inconsistent {table} entry {entry}: expected degree {expected}, got {actual}"
        )
        self.table = table
        self.entry = entry
        self.expected = expected
        self.actual = actual


class DegeneratePairingError(HochbvError):
    def __init__(self, degree: Optional[int] = None):
        where = "" if degree is None else f" (Gram block of degree {degree})"
        super().__init__(f"Degenerate pairing{where}")
        self.degree = degree


class PairingNotInvariantError(HochbvError):
    def __init__(self, detail: str):
        super().__init__(f"Pairing not invariant: {detail}")
        self.detail = detail


class BrokenComplexError(HochbvError):
    def __init__(self, rows: int, cols: int):
        super().__init__(
            f"Composite of consecutive differentials ({rows}x{cols}) is not zero; the complex is broken upstream"
        )
        self.rows = rows
        self.cols = cols


class TruncationOverflow(HochbvError):
    def __init__(self, word: Any, limit: int):
        super().__init__(f"Truncation overflow: {word} leaves the window of word length {limit}; enlarge the window")
        self.word = word
        self.limit = limit


class NonCommutativeAlgebraError(HochbvError):
    def __init__(self, pair: Sequence[str]):
        super().__init__(f"Algebra is not graded commutative: counterexample {tuple(pair)}")
        self.pair = tuple(pair)


class UnknownOperationError(HochbvError):
    def __init__(self, name: str, known: Sequence[str]):
        super().__init__(f"Unknown operation '{name}'. Known: {', '.join(known)}")
        self.name = name
        self.known = tuple(known)


class ConfigurationError(HochbvError):
    def __init__(self, detail: str):
        super().__init__(f"Configuration error: {detail}")
        self.detail = detail
