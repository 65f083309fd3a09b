"""Exact Hochschild complex and open Frobenius BV identity engine."""

__version__ = "0.1.0"
