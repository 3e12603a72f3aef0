"""Exact Hesselink stratification of nullcones and finite-field point counts."""
from .polynomial import IntPolynomial
from .rootsys import (CapacityError, ConsistencyError, InputError, RootDatum, TypeSpec,
                      build_root_datum, parse_type)

__all__ = [
    "IntPolynomial",
    "RootDatum",
    "TypeSpec",
    "build_root_datum",
    "parse_type",
    "InputError",
    "CapacityError",
    "ConsistencyError",
]
