"""
Bank-by-bank evaluation of clearing rates along a dependency order.

A bank's rate depends on the rates of its debtors and on the reference
banks of every CDS it writes or holds. Once some banks are pinned to given
values (hints), the remaining dependencies are often acyclic and each rate
follows from ``r_i = min(1, a_i / l_i)`` (1 when ``l_i = 0``).
"""
from __future__ import annotations

import logging
from collections.abc import Mapping
from fractions import Fraction

import networkx as nx

from cdsclear.core.numbers import Number, NumericMode, coerce
from cdsclear.core.system import FinancialSystem
from cdsclear.core.vector import RecoveryVector
from cdsclear.exceptions import NotAcyclic

logger = logging.getLogger(__name__)


def dependency_graph(system: FinancialSystem, pinned: frozenset[str] = frozenset()) -> nx.DiGraph:
    """Arc u -> v when the rate of v reads the rate of u; no arcs into pinned banks."""
    g = nx.DiGraph()
    g.add_nodes_from(system.bank_ids)

    def depend(source: str, target: str) -> None:
        if target not in pinned:
            g.add_edge(source, target)

    for contract in system.contracts:
        depend(contract.debtor, contract.creditor)
        if contract.reference is not None:
            depend(contract.reference, contract.debtor)
            depend(contract.reference, contract.creditor)
    return g


def bank_rate(
    system: FinancialSystem, rates: Mapping[str, Number], bank_id: str, mode: NumericMode
) -> Number:
    """``min(1, a_i / l_i)`` (1 if ``l_i = 0``) from the rates known so far."""
    one: Number = Fraction(1) if mode.exact else 1.0
    liability: Number = Fraction(0) if mode.exact else 0.0
    for contract in system.outgoing[bank_id]:
        owed = coerce(contract.notional, mode)
        if contract.reference is not None:
            owed = (one - rates[contract.reference]) * owed
        liability = liability + owed
    if liability == 0:
        return one

    inflow: Number = coerce(system.external_assets(bank_id), mode)
    for contract in system.incoming[bank_id]:
        owed = coerce(contract.notional, mode)
        if contract.reference is not None:
            owed = (one - rates[contract.reference]) * owed
        inflow = inflow + rates[contract.debtor] * owed
    ratio = inflow / liability
    return one if ratio >= 1 else ratio


def propagate_rates(
    system: FinancialSystem,
    hints: Mapping[str, object] | None = None,
    mode: NumericMode = NumericMode.RATIONAL,
) -> RecoveryVector:
    """Evaluate every rate once the hinted banks are pinned.

    Args:
        system: The system.
        hints: Bank id -> planted rate.
        mode: Arithmetic of the evaluation.

    Returns:
        The propagated vector. Hinted banks carry their planted values; the
        vector is a clearing vector iff the plants are consistent.

    Raises:
        NotAcyclic: If the dependencies left after pinning contain a cycle.
    """
    hints = dict(hints or {})
    for bank_id in hints:
        system.position(bank_id)
    g = dependency_graph(system, frozenset(hints))
    try:
        order = list(nx.lexicographical_topological_sort(g, key=system.index.__getitem__))
    except nx.NetworkXUnfeasible:
        cycle = [u for u, _ in nx.find_cycle(g)]
        raise NotAcyclic(f"rates depend on each other around {' -> '.join(cycle)}") from None

    rates: dict[str, Number] = {}
    for bank_id in order:
        if bank_id in hints:
            rates[bank_id] = coerce(hints[bank_id], mode)
        else:
            rates[bank_id] = bank_rate(system, rates, bank_id, mode)
    logger.debug("propagated %d rates with %d plants", len(rates), len(hints))
    return RecoveryVector({b: rates[b] for b in system.bank_ids}, mode)
