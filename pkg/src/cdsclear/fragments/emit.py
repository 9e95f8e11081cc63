"""
Emission of concrete financial systems from fragment strings and cycles.
"""
from __future__ import annotations

import logging

from cdsclear.analysis.graphs import build_auxiliary_graph
from cdsclear.analysis.switching import find_strongly_switched_cycle
from cdsclear.compiler.builder import NetworkBuilder
from cdsclear.core.clearing import check_nondegenerate
from cdsclear.core.system import FinancialSystem
from cdsclear.exceptions import DegenerateOutput
from cdsclear.fragments.catalog import Family, FragmentClass, FragmentKind, FragmentLayout, Variant, fragment_layout
from cdsclear.fragments.cycle import FragmentString
from cdsclear.fragments.rewrite import assign_arithmetic

logger = logging.getLogger(__name__)


def boundary_bank(position: int) -> str:
    """Id of the start node of the fragment at ``position``."""
    return f"v{position}"


def emit_financial_system(string: FragmentString) -> FinancialSystem:
    """Build the system of an arithmetic fragment string or cycle.

    The start node of fragment i is bank ``v{i}``; its private banks are
    ``f{i}/<label>``. In a cycle the last end node is ``v0``; an open
    string ends in ``v{n}``, which gets a unit debt to a sink. Grounded
    reference banks get no assets and a unit debt to a sink of their own.
    Strings without coefficients are assigned them first.

    A closed string of one fragment would make its end node its own start
    node, so it is closed through a unit-debt relay bank ``v1`` (a ``d1'``
    fragment, whose transfer is the identity).

    Fragments whose start node writes a CDS produce a degenerate system;
    they are emitted with a warning.
    """
    if not string.is_arithmetic:
        string = assign_arithmetic(string)
    if string.closed and len(string) == 1:
        string = string.replaced([string[0], FragmentKind(Family.D1, Variant.PRIME)])
    n = len(string)
    layouts = [fragment_layout(kind) for kind in string]
    boundaries = [boundary_bank(i) for i in range(n + (0 if string.closed else 1))]

    def local(i: int, layout: FragmentLayout, label: str) -> str:
        if label == layout.start:
            return boundaries[i]
        if label == layout.end:
            return boundaries[(i + 1) % len(boundaries)]
        return f"f{i}/{label}"

    boundary_assets = {bank: 0 for bank in boundaries}
    for i, layout in enumerate(layouts):
        for label, amount in layout.assets.items():
            bank = local(i, layout, label)
            if bank in boundary_assets:
                boundary_assets[bank] += amount
    net = NetworkBuilder()
    for bank in boundaries:
        net.bank(bank, boundary_assets[bank])

    for i, layout in enumerate(layouts):
        for label in layout.internal:
            net.bank(local(i, layout, label), layout.assets.get(label, 0))
        for contract in layout.contracts:
            debtor, creditor = local(i, layout, contract.debtor), local(i, layout, contract.creditor)
            if contract.reference is None:
                net.debt(debtor, creditor, contract.notional)
            else:
                net.cds(debtor, creditor, local(i, layout, contract.reference), contract.notional)
        for label in layout.grounded:
            grounded = local(i, layout, label)
            net.sink(grounded, prefix=f"{grounded}/sink")
    if not string.closed:
        net.sink(boundaries[-1])
    system = net.build()

    degenerate = string.degenerate
    if degenerate:
        logger.warning(
            "%s: start nodes of %s write CDSes; the emitted system is degenerate",
            string.name,
            ", ".join(sorted({k.family.value for k in degenerate})),
        )
        return system

    report = check_nondegenerate(system)
    if not report.ok:
        raise DegenerateOutput(
            f"{string.name}: emitted system is degenerate at "
            + ", ".join(f"{bank} ({condition.value})" for bank, condition in report.violations)
        )
    if string.closed and any(k.fragment_class is not FragmentClass.D for k in string):
        if find_strongly_switched_cycle(build_auxiliary_graph(system)) is None:
            raise DegenerateOutput(f"{string.name}: emitted system has no strongly switched cycle")
    logger.debug("emitted %s as %d banks, %d contracts", string.name, system.size, len(system.contracts))
    return system
