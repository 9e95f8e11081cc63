"""
cdsclear: clearing vectors, cycle structure and instance synthesis for
financial networks with debt contracts and credit default swaps.
"""
from cdsclear.config import Settings, get_settings
from cdsclear.core import Contract, FinancialSystem, NumericMode, QuadraticSurd, RecoveryVector
from cdsclear.exceptions import CdsClearError

__version__ = "0.1.0"

__all__ = [
    "CdsClearError",
    "Contract",
    "FinancialSystem",
    "NumericMode",
    "QuadraticSurd",
    "RecoveryVector",
    "Settings",
    "__version__",
    "get_settings",
]
