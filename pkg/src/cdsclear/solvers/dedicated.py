"""
Exact solver for systems with the dedicated CDS debtor property.

When every CDS debtor owes no debt and writes on a single reference bank,
the clearing map can be rewritten over the recovery rates of the other
banks and the payments on each CDS. Each coordinate is then a minimum of
two affine expressions, so fixing which side of every minimum is active
turns the fixed-point problem into a linear system. Enumerating all branch
assignments finds every clearing vector.
"""
from __future__ import annotations

import logging
from collections.abc import Iterable, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import partial
from itertools import product

from cdsclear.analysis.dedicated import check_dedicated_cds_debtor
from cdsclear.config import Settings, get_settings
from cdsclear.core.clearing import check_nondegenerate, is_clearing
from cdsclear.core.numbers import NumericMode
from cdsclear.core.system import FinancialSystem
from cdsclear.core.vector import RecoveryVector
from cdsclear.exceptions import Degenerate, NotDedicated, SingularSystem, TooManyBranches
from cdsclear.solvers.linalg import solve_exact
from cdsclear.solvers.schemas import Branch, BranchAssignment, SolveReport, SolverKind

logger = logging.getLogger(__name__)

_ZERO = Fraction(0)
_ONE = Fraction(1)

# affine expression over the unknowns: coefficients followed by the constant term
Affine = tuple[Fraction, ...]


# =============================================================================
# Problem setup
# =============================================================================

@dataclass(frozen=True)
class _CdsTerm:
    label: str
    debtor: str
    notional: Fraction
    reference_rate: Affine


@dataclass(frozen=True)
class _Problem:
    """The piecewise-linear map in picklable form.

    Unknowns are numbered: rate variables first (bank order), then one
    payment per CDS (contract order).
    """

    size: int
    rate_banks: tuple[str, ...]
    liabilities: tuple[Fraction, ...]
    rate_assets: tuple[Affine, ...]
    cds: tuple[_CdsTerm, ...]
    debtor_assets: dict[str, Affine]
    debtor_notional: dict[str, Fraction]
    debtor_reference: dict[str, Affine]


def _unit(size: int, index: int) -> list[Fraction]:
    row = [_ZERO] * (size + 1)
    row[index] = _ONE
    return row


def _constant(size: int, value: Fraction) -> list[Fraction]:
    row = [_ZERO] * (size + 1)
    row[size] = value
    return row


def _evaluate(expr: Affine, x: Sequence[Fraction]) -> Fraction:
    return sum((c * v for c, v in zip(expr, x) if c), expr[-1])


def _build_problem(system: FinancialSystem) -> _Problem:
    cds_debtors = {c.debtor for c in system.cdses}
    debt_liability = {b: _ZERO for b in system.bank_ids}
    for contract in system.debts:
        debt_liability[contract.debtor] += contract.notional

    rate_banks = tuple(
        b for b in system.bank_ids if b not in cds_debtors and debt_liability[b] > 0
    )
    cdses = system.cdses
    size = len(rate_banks) + len(cdses)
    rate_index = {b: i for i, b in enumerate(rate_banks)}

    def rate(bank_id: str) -> list[Fraction]:
        if bank_id in rate_index:
            return _unit(size, rate_index[bank_id])
        if bank_id in cds_debtors:
            raise NotDedicated(f"the rate of CDS debtor {bank_id} is read by another contract")
        return _constant(size, _ONE)

    asset_rows = {b: _constant(size, system.external_assets(b)) for b in system.bank_ids}
    for contract in system.debts:
        row = asset_rows[contract.creditor]
        for i, c in enumerate(rate(contract.debtor)):
            row[i] += c * contract.notional
    for k, contract in enumerate(cdses):
        asset_rows[contract.creditor][len(rate_banks) + k] += _ONE

    debtor_notional: dict[str, Fraction] = {}
    debtor_reference: dict[str, Affine] = {}
    terms = []
    for contract in cdses:
        reference_rate = tuple(rate(contract.reference))
        debtor_notional[contract.debtor] = debtor_notional.get(contract.debtor, _ZERO) + contract.notional
        debtor_reference[contract.debtor] = reference_rate
        terms.append(_CdsTerm(contract.label(), contract.debtor, contract.notional, reference_rate))

    return _Problem(
        size=size,
        rate_banks=rate_banks,
        liabilities=tuple(debt_liability[b] for b in rate_banks),
        rate_assets=tuple(tuple(asset_rows[b]) for b in rate_banks),
        cds=tuple(terms),
        debtor_assets={d: tuple(asset_rows[d]) for d in debtor_notional},
        debtor_notional=debtor_notional,
        debtor_reference=debtor_reference,
    )


# =============================================================================
# One branch
# =============================================================================

def _solve_branch(problem: _Problem, flags: tuple[Branch, ...]) -> tuple[Fraction, ...] | None:
    """Solve the linear system of one branch assignment and check consistency.

    Returns:
        The unknowns, or None when the branch is inconsistent.

    Raises:
        SingularSystem: If the branch's linear system has no unique solution.
    """
    n = problem.size
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    offset = len(problem.rate_banks)

    for i, flag in enumerate(flags[:offset]):
        if flag is Branch.SATURATED:
            rows.append(_unit(n, i)[:n])
            rhs.append(_ONE)
        else:
            assets = problem.rate_assets[i]
            row = [-c for c in assets[:n]]
            row[i] += problem.liabilities[i]
            rows.append(row)
            rhs.append(assets[n])

    for k, (flag, term) in enumerate(zip(flags[offset:], problem.cds)):
        column = offset + k
        if flag is Branch.SATURATED:
            # p = (1 - r_R) c
            row = [term.notional * c for c in term.reference_rate[:n]]
            row[column] += _ONE
            rows.append(row)
            rhs.append(term.notional - term.notional * term.reference_rate[n])
        else:
            # L p = c a_i
            assets = problem.debtor_assets[term.debtor]
            row = [-term.notional * c for c in assets[:n]]
            row[column] += problem.debtor_notional[term.debtor]
            rows.append(row)
            rhs.append(term.notional * assets[n])

    x = solve_exact(rows, rhs) if n else []
    point = list(x) + [_ONE]

    for i, flag in enumerate(flags[:offset]):
        if not _ZERO <= x[i] <= _ONE:
            return None
        assets = _evaluate(problem.rate_assets[i], point)
        liability = problem.liabilities[i]
        if (flag is Branch.SATURATED and assets < liability) or (
            flag is Branch.INTERIOR and assets > liability
        ):
            return None

    for k, (flag, term) in enumerate(zip(flags[offset:], problem.cds)):
        if x[offset + k] < 0:
            return None
        r_ref = _evaluate(term.reference_rate, point)
        cap = (1 - r_ref) * problem.debtor_notional[term.debtor]
        assets = _evaluate(problem.debtor_assets[term.debtor], point)
        if (flag is Branch.SATURATED and cap > assets) or (
            flag is Branch.INTERIOR and assets > cap
        ):
            return None
    return tuple(x)


def _try_branch(problem: _Problem, flags: tuple[Branch, ...]) -> tuple[Fraction, ...] | None | str:
    try:
        return _solve_branch(problem, flags)
    except SingularSystem:
        return "singular"


def _reconstruct(system: FinancialSystem, problem: _Problem, x: Sequence[Fraction]) -> RecoveryVector:
    point = list(x) + [_ONE]
    rates = {b: _ONE for b in system.bank_ids}
    for i, bank_id in enumerate(problem.rate_banks):
        rates[bank_id] = x[i]
    for debtor, notional in problem.debtor_notional.items():
        liability = (1 - _evaluate(problem.debtor_reference[debtor], point)) * notional
        if liability == 0:
            continue
        rates[debtor] = min(_ONE, _evaluate(problem.debtor_assets[debtor], point) / liability)
    return RecoveryVector(rates, NumericMode.RATIONAL)


def _assignment(problem: _Problem, flags: tuple[Branch, ...]) -> BranchAssignment:
    offset = len(problem.rate_banks)
    return BranchAssignment(
        rates=dict(zip(problem.rate_banks, flags[:offset])),
        payments={term.label: flag for term, flag in zip(problem.cds, flags[offset:])},
    )


# =============================================================================
# Entry point
# =============================================================================

def _branches(k: int) -> Iterable[tuple[Branch, ...]]:
    return product((Branch.SATURATED, Branch.INTERIOR), repeat=k)


def solve_dedicated(system: FinancialSystem, settings: Settings | None = None) -> SolveReport:
    """Return every clearing vector found by branch enumeration.

    Solutions are deduplicated and sorted in decreasing lexicographic order
    of the rates listed in bank order.

    Raises:
        NotDedicated: If some CDS debtor owes debt or writes on several references.
        Degenerate: If the system fails the non-degeneracy conditions.
        TooManyBranches: If 2^k exceeds ``settings.max_branches``.
    """
    settings = settings or get_settings()
    dedicated = check_dedicated_cds_debtor(system)
    if not dedicated.ok:
        raise NotDedicated(
            "dedicated CDS debtor property fails: "
            + "; ".join(f"{bank}: {reason}" for bank, reason in dedicated.violations),
            dedicated.violations,
        )
    degeneracy = check_nondegenerate(system)
    if not degeneracy.ok:
        raise Degenerate(degeneracy)

    problem = _build_problem(system)
    k = problem.size
    if 2**k > settings.max_branches:
        raise TooManyBranches(
            f"{k} min-expressions give 2^{k} branches, above the cap of {settings.max_branches}"
        )
    logger.debug("enumerating 2^%d branch assignments over %d banks", k, system.size)

    if settings.workers > 1 and k > 4:
        with ProcessPoolExecutor(max_workers=settings.workers) as pool:
            outcomes = list(pool.map(partial(_try_branch, problem), _branches(k), chunksize=256))
    else:
        outcomes = [_try_branch(problem, flags) for flags in _branches(k)]

    report = SolveReport(SolverKind.DEDICATED, residual=_ZERO)
    found: dict[tuple[Fraction, ...], tuple[RecoveryVector, BranchAssignment]] = {}
    singular = 0
    for flags, outcome in zip(_branches(k), outcomes):
        if outcome == "singular":
            singular += 1
            continue
        if outcome is None:
            continue
        vector = _reconstruct(system, problem, outcome)
        if not is_clearing(system, vector):
            logger.warning("branch %s solved to a non-clearing point", _assignment(problem, flags).describe())
            continue
        found.setdefault(vector.as_tuple(system.bank_ids), (vector, _assignment(problem, flags)))

    if singular:
        message = f"{singular} of {2**k} branch systems were singular and skipped"
        logger.warning(message)
        report.warnings.append(message)

    for key in sorted(found, reverse=True):
        vector, assignment = found[key]
        report.solutions.append(vector)
        report.branches.append(assignment)
    report.warn_on_growth(settings.bit_warning_threshold)
    logger.debug("dedicated solver found %d clearing vectors", len(report.solutions))
    return report
