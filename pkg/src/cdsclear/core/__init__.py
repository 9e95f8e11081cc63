"""
Core data model: numbers, financial systems, recovery vectors and clearing.
"""
from .clearing import (
    DegeneracyCondition,
    NonDegeneracyReport,
    assets,
    check_nondegenerate,
    clearing_map,
    clearing_residual,
    distance_inf,
    is_clearing,
    is_weak_eps,
    total_liability,
)
from .numbers import Number, NumericMode, QuadraticSurd, Rational, as_rational, format_number
from .system import Bank, Contract, FinancialSystem, normalize_system
from .vector import RecoveryVector

__all__ = [
    "Bank",
    "Contract",
    "DegeneracyCondition",
    "FinancialSystem",
    "NonDegeneracyReport",
    "Number",
    "NumericMode",
    "QuadraticSurd",
    "Rational",
    "RecoveryVector",
    "as_rational",
    "assets",
    "check_nondegenerate",
    "clearing_map",
    "clearing_residual",
    "distance_inf",
    "format_number",
    "is_clearing",
    "is_weak_eps",
    "normalize_system",
    "total_liability",
]
