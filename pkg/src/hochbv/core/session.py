# core/session.py
import os
from typing import Callable, Dict, List, Optional

from hochbv.config.constants import DEFAULT_WINDOW_LENGTH
from hochbv.config.settings import Settings, load_config
from hochbv.core.bv_chain_ops import chain_operators, closed_identities
from hochbv.core.checks import Identity, check_identity
from hochbv.core.cochain_ops import cochain_identities
from hochbv.core.frobenius import FrobeniusAlgebra, algebra_from_dict
from hochbv.core.hochschild import ChainOperator, Truncation
from hochbv.core.relative_bv import check_relative_identity, relative_identities
from hochbv.exceptions import ConfigurationError, HochbvError, UnknownOperationError
from hochbv.logging_config import logger
from hochbv.models.schemas import IdentityReport, SessionConfig, Window


def load_algebra(path: str, field: Optional[str] = None) -> FrobeniusAlgebra:
    """Read an algebra file; closed inputs get their coproduct derived."""
    try:
        data = load_config(path)
    except (OSError, ValueError) as e:
        logger.error(f"Failed to read algebra file {path}: {str(e)}")
        raise ConfigurationError(f"cannot read {path}: {e}") from e
    try:
        algebra = algebra_from_dict(data, field_override=field)
    except HochbvError as e:
        logger.error(f"Failed to load algebra from {path}: {str(e)}")
        raise
    logger.info(f"Loaded algebra {algebra.name} (dim {algebra.dim}, m={algebra.m}, field {algebra.field.spec}) from {path}")
    return algebra


class Session:
    """One algebra, one window and the identity catalog it supports."""

    def __init__(self, algebra: FrobeniusAlgebra, config: SessionConfig):
        self.algebra = algebra
        self.config = config
        self.truncation = Truncation(config.window.max_length, config.window.max_degree)
        self._closed: Optional[Dict[str, Identity]] = None
        self._relative: Optional[Dict[str, Identity]] = None
        self._cochain: Optional[Dict[str, Callable[[], IdentityReport]]] = None

    @property
    def closed(self) -> Dict[str, Identity]:
        if self._closed is None:
            self._closed = closed_identities(self.algebra)
        return self._closed

    @property
    def relative(self) -> Dict[str, Identity]:
        if self._relative is None:
            self._relative = relative_identities(self.algebra)
        return self._relative

    @property
    def cochain(self) -> Dict[str, Callable[[], IdentityReport]]:
        """Cochain-side checks on arities whose tables fit in the window."""
        if self._cochain is None:
            max_arity = max(1, (self.truncation.max_length - 1) // 2)
            self._cochain = cochain_identities(self.algebra, max_arity) if not self.algebra.has_differential else {}
        return self._cochain

    def _supported(self, identity: Identity) -> bool:
        return not (identity.homology and self.algebra.has_differential)

    def catalog(self) -> List[str]:
        """The default selection: relative identities only for graded commutative A,
        homology-level identities only when d_A = 0."""
        closed = [name for name, identity in self.closed.items() if self._supported(identity)]
        relative = [name for name, identity in self.relative.items() if self._supported(identity)] if self.algebra.is_commutative else []
        return closed + relative + list(self.cochain)

    def operators(self) -> Dict[str, ChainOperator]:
        return chain_operators(self.algebra)

    def operator(self, name: str) -> ChainOperator:
        ops = self.operators()
        if name not in ops:
            raise UnknownOperationError(name, sorted(ops))
        return ops[name]

    def check(self, names: Optional[List[str]] = None, codomain_length: Optional[int] = None) -> List[IdentityReport]:
        selected = names or self.catalog()
        known = set(self.closed) | set(self.relative) | set(self.cochain)
        for name in selected:
            if name not in known:
                raise UnknownOperationError(name, sorted(known))
            identity = self.closed.get(name) or self.relative.get(name)
            if identity is not None and not self._supported(identity):
                raise ConfigurationError(f"{name} is checked on homology, which needs d_A = 0")
        reports = []
        for name in selected:
            if name in self.closed:
                reports.append(check_identity(self.algebra, self.closed[name], self.truncation, codomain_length))
            elif name in self.cochain:
                reports.append(self.cochain[name]())
            else:
                reports.append(check_relative_identity(self.algebra, self.relative[name], self.truncation, codomain_length=codomain_length))
        return reports


class SessionRegistry:
    """Loaded algebras by path, so repeated verbs reuse one parse."""

    def __init__(self):
        self.algebras: Dict[str, FrobeniusAlgebra] = {}

    def algebra(self, path: str, field: Optional[str] = None) -> FrobeniusAlgebra:
        key = f"{os.path.abspath(path)}|{field or ''}"
        if key not in self.algebras:
            self.algebras[key] = load_algebra(path, field)
        return self.algebras[key]

    def open(
        self,
        path: str,
        field: Optional[str] = None,
        max_length: Optional[int] = None,
        max_degree: Optional[int] = None,
        identities: Optional[List[str]] = None,
        output_dir: Optional[str] = None,
        seed: Optional[int] = None,
    ) -> Session:
        settings = Settings()
        try:
            config = SessionConfig(
                algebra_path=path,
                field=field,
                window=Window(max_length=DEFAULT_WINDOW_LENGTH if max_length is None else max_length, max_degree=max_degree),
                identities=identities,
                output_dir=output_dir or settings.output_dir,
                seed=settings.seed if seed is None else seed,
                max_length_cap=settings.max_length,
            )
        except ValueError as e:
            logger.error(f"Invalid session configuration: {str(e)}")
            raise ConfigurationError(str(e)) from e
        return Session(self.algebra(path, field), config)


# Singleton registry instance
registry = SessionRegistry()
