# models/schemas.py
from typing import Any, Dict, List, Optional, Union

from pydantic import BaseModel, computed_field, field_validator, model_validator

from hochbv.config.constants import (
    HOMOLOGY_EXACT,
    HOMOLOGY_TRUNCATED,
    STATUS_FAIL,
    STATUS_NEEDS_LARGER_WINDOW,
    STATUS_PASS,
)

Index = Union[int, str]
Entry = List[Union[int, str]]


class BasisEntry(BaseModel):
    name: str
    degree: int

    @field_validator("degree")
    def degree_must_be_non_negative(cls, v):
        if v < 0:
            raise ValueError("Basis degrees must be non-negative")
        return v


class AlgebraFile(BaseModel):
    """The JSON algebra description. Structure constants are rows of basis
    indices (or names) followed by a scalar written as 'num/den'."""

    name: str = "algebra"
    field: Union[str, Dict[str, int]] = "Q"
    m: int
    basis: List[BasisEntry]
    product: List[Entry] = []
    differential: List[Entry] = []
    coproduct: Optional[List[Entry]] = None
    pairing: Optional[List[Entry]] = None
    counit: Optional[List[Entry]] = None

    @field_validator("basis")
    def basis_must_not_be_empty(cls, v):
        if not v:
            raise ValueError("The basis must contain at least the unit")
        return v


class AxiomResult(BaseModel):
    axiom: str
    passed: bool
    counterexample: Optional[List[str]] = None


class ValidationReport(BaseModel):
    algebra: str
    level: str
    results: List[AxiomResult]

    @computed_field
    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def result(self, axiom: str) -> AxiomResult:
        for r in self.results:
            if r.axiom == axiom:
                return r
        raise KeyError(axiom)


class Window(BaseModel):
    max_length: int
    max_degree: Optional[int] = None

    @field_validator("max_length")
    def max_length_must_be_non_negative(cls, v):
        if v < 0:
            raise ValueError("max_length must be non-negative")
        return v


class IdentityReport(BaseModel):
    identity: str
    window: Window
    status: str
    counterexample: Optional[List[str]] = None
    lhs: Optional[str] = None
    rhs: Optional[str] = None
    detail: Optional[str] = None
    wall_time: Optional[float] = None

    @field_validator("status")
    def status_must_be_known(cls, v):
        if v not in (STATUS_PASS, STATUS_FAIL, STATUS_NEEDS_LARGER_WINDOW):
            raise ValueError(f"Unknown status: {v}")
        return v

    @model_validator(mode="after")
    def failures_carry_counterexample(self):
        if self.status == STATUS_FAIL and not self.counterexample:
            raise ValueError("A failing report must carry a counterexample")
        return self

    @property
    def passed(self) -> bool:
        return self.status == STATUS_PASS


class HomologyEntry(BaseModel):
    degree: int
    length: Optional[int] = None
    dimension: int
    exact: bool

    @field_validator("dimension")
    def dimension_must_be_non_negative(cls, v):
        if v < 0:
            raise ValueError("Homology dimensions are non-negative")
        return v


class InducedRank(BaseModel):
    operator: str
    degree: int
    length: int
    rank: int
    exact: bool


class HomologyProfile(BaseModel):
    algebra: str
    window: Window
    entries: List[HomologyEntry]
    induced: List[InducedRank] = []

    @computed_field
    @property
    def label(self) -> str:
        return HOMOLOGY_EXACT if all(e.exact for e in self.entries) else HOMOLOGY_TRUNCATED

    def dimension(self, degree: int, length: Optional[int] = None) -> int:
        for e in self.entries:
            if e.degree == degree and e.length == length:
                return e.dimension
        return 0

    def as_dict(self) -> Dict[Any, int]:
        return {(e.degree, e.length): e.dimension for e in self.entries}


class SessionConfig(BaseModel):
    algebra_path: str
    field: Optional[str] = None
    window: Window
    identities: Optional[List[str]] = None
    output_dir: str = "reports"
    seed: int = 0
    max_length_cap: int = 6

    @model_validator(mode="after")
    def window_within_cap(self):
        if self.window.max_length > self.max_length_cap:
            raise ValueError(
                f"max_length {self.window.max_length} exceeds the configured cap {self.max_length_cap} "
                "(raise HOCHBV_MAX_LENGTH to allow it)"
            )
        return self
