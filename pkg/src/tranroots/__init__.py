"""Polynomial recurrence sequences, root localization, and curve verification."""

from .poly import (
    ComplexPoly,
    DegreeError,
    DomainMismatchError,
    IntPoly,
    InvalidExponentError,
    PolynomialError,
    ToleranceConfig,
    as_complex_poly,
    cauchy_root_bound,
)

__version__ = "0.1.0"

__all__ = [
    "ComplexPoly",
    "DegreeError",
    "DomainMismatchError",
    "IntPoly",
    "InvalidExponentError",
    "PolynomialError",
    "ToleranceConfig",
    "as_complex_poly",
    "cauchy_root_bound",
    "__version__",
]
