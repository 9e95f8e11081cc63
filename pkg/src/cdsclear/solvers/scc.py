"""
Exact solver for systems without weakly switched cycles.

Components of the auxiliary graph are solved one at a time in topological
order. Rates of earlier components are known by then, so contracts entering
a component become external assets, and CDSes written inside it on an
outside reference become plain debts of notional ``(1 - r_R) c``. The
resulting sub-system has the dedicated CDS debtor property and is handed to
the branch-enumeration solver.
"""
from __future__ import annotations

import logging
from fractions import Fraction

from cdsclear.analysis.condensation import scc_condensation
from cdsclear.analysis.graphs import build_auxiliary_graph
from cdsclear.analysis.switching import find_weakly_switched_cycle
from cdsclear.config import Settings, get_settings
from cdsclear.core.clearing import check_nondegenerate, is_clearing
from cdsclear.core.numbers import Number, NumericMode
from cdsclear.core.system import Bank, Contract, FinancialSystem
from cdsclear.core.vector import RecoveryVector
from cdsclear.exceptions import Degenerate, SingularSystem, WeaklySwitchedPresent
from cdsclear.solvers.dedicated import solve_dedicated
from cdsclear.solvers.propagate import bank_rate
from cdsclear.solvers.schemas import SolveReport, SolverKind

logger = logging.getLogger(__name__)


def component_subsystem(
    system: FinancialSystem, members: tuple[str, ...], rates: dict[str, Number]
) -> FinancialSystem:
    """The sub-system of one component given the rates of all earlier components.

    Outside creditors of the component appear as sinks without external
    assets; their rates are not used.
    """
    inside = set(members)
    inflow = {b: system.external_assets(b) for b in members}
    for bank_id in members:
        for contract in system.incoming[bank_id]:
            if contract.debtor in inside:
                continue
            owed = contract.notional
            if contract.reference is not None:
                owed = (1 - rates[contract.reference]) * owed
            inflow[bank_id] += rates[contract.debtor] * owed

    contracts: list[Contract] = []
    sinks: list[str] = []
    for bank_id in members:
        for contract in system.outgoing[bank_id]:
            if contract.creditor not in inside and contract.creditor not in sinks:
                sinks.append(contract.creditor)
            if contract.reference is None or contract.reference in inside:
                contracts.append(contract)
                continue
            notional = (1 - rates[contract.reference]) * contract.notional
            if notional > 0:
                contracts.append(Contract(contract.debtor, contract.creditor, notional))

    banks = [Bank(b, inflow[b]) for b in members] + [Bank(s) for s in sinks]
    return FinancialSystem(tuple(banks), tuple(contracts))


def solve_no_weakly_switched(system: FinancialSystem, settings: Settings | None = None) -> SolveReport:
    """Assemble an exact clearing vector component by component.

    Where a component admits several clearing vectors the lexicographically
    largest one is kept.

    Raises:
        WeaklySwitchedPresent: If the auxiliary graph has a weakly switched cycle.
        Degenerate: If the system fails the non-degeneracy conditions.
        NotDedicated: If a component sub-system lacks the dedicated CDS debtor property.
    """
    settings = settings or get_settings()
    aux = build_auxiliary_graph(system)
    witness = find_weakly_switched_cycle(aux)
    if witness is not None:
        raise WeaklySwitchedPresent(witness)
    degeneracy = check_nondegenerate(system)
    if not degeneracy.ok:
        raise Degenerate(degeneracy)

    condensation = scc_condensation(aux)
    report = SolveReport(SolverKind.SCC, residual=Fraction(0))
    rates: dict[str, Number] = {}
    for stage, members in enumerate(condensation.components):
        if len(members) == 1:
            rates[members[0]] = bank_rate(system, rates, members[0], NumericMode.RATIONAL)
            continue

        subsystem = component_subsystem(system, members, rates)
        logger.debug("stage %d: component of %d banks", stage, len(members))
        sub_report = solve_dedicated(subsystem, settings)
        report.warnings.extend(f"component {stage}: {w}" for w in sub_report.warnings)
        if not sub_report.solutions:
            raise SingularSystem(f"no clearing vector found for component {', '.join(members)}")
        if len(sub_report.solutions) > 1:
            logger.debug("component %d has %d clearing vectors", stage, len(sub_report.solutions))
        chosen = sub_report.solutions[0]
        for bank_id in members:
            rates[bank_id] = chosen[bank_id]

    solution = RecoveryVector({b: rates[b] for b in system.bank_ids}, NumericMode.RATIONAL)
    if not is_clearing(system, solution):
        raise AssertionError("component-wise assembly produced a non-clearing vector")
    report.solutions.append(solution)
    report.warn_on_growth(settings.bit_warning_threshold)
    for warning in report.warnings:
        if warning.startswith("coefficient growth"):
            logger.warning(warning)
    return report
