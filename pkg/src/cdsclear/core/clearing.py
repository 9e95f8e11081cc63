"""
Liabilities, assets and the clearing map of a financial system.

Exact modes evaluate contract by contract in Fraction/QuadraticSurd
arithmetic; float mode evaluates the same formulas on numpy arrays.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

import numpy as np

from cdsclear.core.numbers import Number, NumericMode, as_rational, coerce, promote
from cdsclear.core.system import Contract, FinancialSystem
from cdsclear.core.vector import RecoveryVector
from cdsclear.exceptions import ModeMismatch, UnknownBank

_ZERO = Fraction(0)
_ONE = Fraction(1)


def contract_liability(contract: Contract, r: RecoveryVector) -> Number:
    """Amount owed on one contract: the notional, scaled by ``1 - r_R`` for a CDS."""
    if contract.reference is None:
        return coerce(contract.notional, r.mode)
    return (1 - r[contract.reference]) * coerce(contract.notional, r.mode)


def total_liability(system: FinancialSystem, r: RecoveryVector, bank_id: str) -> Number:
    """l_i(r): everything bank ``bank_id`` owes under ``r``."""
    system.position(bank_id)
    total: Number = _ZERO if r.mode.exact else 0.0
    for contract in system.outgoing[bank_id]:
        total = total + contract_liability(contract, r)
    return total


def assets(system: FinancialSystem, r: RecoveryVector, bank_id: str) -> Number:
    """a_i(r): external assets plus payments received from every debtor."""
    system.position(bank_id)
    total: Number = coerce(system.external_assets(bank_id), r.mode)
    for contract in system.incoming[bank_id]:
        total = total + r[contract.debtor] * contract_liability(contract, r)
    return total


def _ratio(a: Number, l: Number) -> Number:
    denominator = max(l, a)
    if denominator == 0:
        return _ONE
    return a / denominator


def float_clearing_step(system: FinancialSystem, x: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Vectorised clearing map.

    Args:
        system: The system.
        x: Recovery rates in bank order.

    Returns:
        ``(f(x), l(x), a(x))`` as float arrays.
    """
    arrays = system.arrays
    n = system.size
    owed = arrays.notional.copy()
    if arrays.is_cds.any():
        cds = arrays.is_cds
        owed[cds] *= 1.0 - x[arrays.reference[cds]]
    liabilities = np.bincount(arrays.debtor, weights=owed, minlength=n)
    paid = x[arrays.debtor] * owed
    inflow = arrays.assets + np.bincount(arrays.creditor, weights=paid, minlength=n)
    denominator = np.maximum(liabilities, inflow)
    f = np.divide(inflow, denominator, out=np.ones(n), where=denominator > 0)
    return np.clip(f, 0.0, 1.0), liabilities, inflow


def vector_to_array(system: FinancialSystem, r: RecoveryVector) -> np.ndarray:
    return np.array([float(r[b]) for b in system.bank_ids], dtype=float)


def clearing_map(system: FinancialSystem, r: RecoveryVector) -> RecoveryVector:
    """f(r)_i = a_i(r) / max(l_i(r), a_i(r)), with 1 when both vanish."""
    if r.mode is NumericMode.FLOAT:
        f, _, _ = float_clearing_step(system, vector_to_array(system, r))
        return RecoveryVector(dict(zip(system.bank_ids, (float(v) for v in f))), NumericMode.FLOAT)

    liabilities = {b: _ZERO for b in system.bank_ids}
    inflow = {b.id: coerce(b.external_assets, r.mode) for b in system.banks}
    for contract in system.contracts:
        owed = contract_liability(contract, r)
        liabilities[contract.debtor] = liabilities[contract.debtor] + owed
        inflow[contract.creditor] = inflow[contract.creditor] + r[contract.debtor] * owed
    return RecoveryVector(
        {b: _ratio(inflow[b], liabilities[b]) for b in system.bank_ids}, r.mode
    )


def clearing_residual(system: FinancialSystem, r: RecoveryVector) -> Number:
    """||r - f(r)||_inf."""
    image = clearing_map(system, r)
    worst: Number = _ZERO if r.mode.exact else 0.0
    for bank_id in system.bank_ids:
        gap = abs(r[bank_id] - image[bank_id])
        if gap > worst:
            worst = gap
    return worst


def is_clearing(system: FinancialSystem, r: RecoveryVector) -> bool:
    """Exact fixed-point test.

    Raises:
        ModeMismatch: For float-mode vectors.
    """
    if r.mode is NumericMode.FLOAT:
        raise ModeMismatch("exact clearing test requested on a float-mode vector")
    return clearing_residual(system, r) == 0


def is_weak_eps(system: FinancialSystem, r: RecoveryVector, eps: object) -> bool:
    """True iff the clearing residual of ``r`` is strictly below ``eps``."""
    bound = eps if isinstance(eps, float) else as_rational(eps)
    return clearing_residual(system, r) < bound


def distance_inf(r1: RecoveryVector, r2: RecoveryVector) -> Number:
    """||r1 - r2||_inf in the wider of the two modes."""
    if r1.values.keys() != r2.values.keys():
        missing = set(r1.values) ^ set(r2.values)
        raise UnknownBank(f"vectors cover different banks: {sorted(missing)}")
    mode = promote(r1.mode, r2.mode)
    worst: Number = _ZERO if mode.exact else 0.0
    for bank_id in r1:
        gap = abs(coerce(r1[bank_id], mode) - coerce(r2[bank_id], mode))
        if gap > worst:
            worst = gap
    return worst


# =============================================================================
# Non-degeneracy
# =============================================================================

class DegeneracyCondition(str, Enum):
    CDS_DEBTOR_UNFUNDED = "CDS debtor without external assets or debt contracts"
    REFERENCE_WITHOUT_DEBT = "reference bank without debt contracts"


@dataclass(frozen=True)
class NonDegeneracyReport:
    violations: list[tuple[str, DegeneracyCondition]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def check_nondegenerate(system: FinancialSystem) -> NonDegeneracyReport:
    """Check that CDS debtors are funded and reference banks owe debt."""
    owes_debt = {c.debtor for c in system.contracts if not c.is_cds and c.notional > 0}
    live_cds = [c for c in system.contracts if c.is_cds and c.notional > 0]
    cds_debtors = {c.debtor for c in live_cds}
    references = {c.reference for c in live_cds}

    violations: list[tuple[str, DegeneracyCondition]] = []
    for bank in system.banks:
        if bank.id in cds_debtors and bank.external_assets == 0 and bank.id not in owes_debt:
            violations.append((bank.id, DegeneracyCondition.CDS_DEBTOR_UNFUNDED))
        if bank.id in references and bank.id not in owes_debt:
            violations.append((bank.id, DegeneracyCondition.REFERENCE_WITHOUT_DEBT))
    return NonDegeneracyReport(violations)
