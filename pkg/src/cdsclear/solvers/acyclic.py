"""
Exact solver for systems whose auxiliary graph is acyclic.
"""
from __future__ import annotations

import logging
from fractions import Fraction

import networkx as nx

from cdsclear.analysis.graphs import build_auxiliary_graph
from cdsclear.config import Settings, get_settings
from cdsclear.core.clearing import is_clearing
from cdsclear.core.numbers import NumericMode
from cdsclear.core.system import FinancialSystem
from cdsclear.exceptions import NotAcyclic
from cdsclear.solvers.propagate import propagate_rates
from cdsclear.solvers.schemas import SolveReport, SolverKind

logger = logging.getLogger(__name__)


def solve_acyclic(system: FinancialSystem, settings: Settings | None = None) -> SolveReport:
    """Compute the unique clearing vector bank by bank in topological order.

    Raises:
        NotAcyclic: If the auxiliary graph has a directed cycle.
    """
    settings = settings or get_settings()
    aux = build_auxiliary_graph(system)
    if not nx.is_directed_acyclic_graph(aux.graph):
        cycle = [u for u, _ in nx.find_cycle(aux.graph)]
        raise NotAcyclic(f"auxiliary graph has the cycle {' -> '.join(cycle + cycle[:1])}")

    solution = propagate_rates(system, mode=NumericMode.RATIONAL)
    if not is_clearing(system, solution):
        raise AssertionError("acyclic propagation produced a non-clearing vector")

    report = SolveReport(SolverKind.ACYCLIC, solutions=[solution], residual=Fraction(0))
    report.warn_on_growth(settings.bit_warning_threshold)
    logger.debug("acyclic solve of %d banks: %s", system.size, solution.render())
    return report
