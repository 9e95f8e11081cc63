"""
Graphviz DOT rendering of a system and its auxiliary graph.
"""
from __future__ import annotations

from cdsclear.analysis.graphs import ArcColor, build_auxiliary_graph
from cdsclear.core.numbers import format_number
from cdsclear.core.system import FinancialSystem


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(system: FinancialSystem, include_red: bool = True, name: str = "cdsclear") -> str:
    """Render banks (labelled with external assets) and contracts as DOT.

    Debts are blue, CDSes orange with a dashed grey link from the reference
    bank to the CDS creditor, and red arcs of the auxiliary graph are drawn
    when ``include_red`` is set.
    """
    lines = [f"digraph {_quote(name)} {{", "  rankdir=LR;"]
    for bank in system.banks:
        label = f"{bank.id}\\ne={format_number(bank.external_assets)}"
        lines.append(f"  {_quote(bank.id)} [label=\"{label}\"];")
    for contract in system.contracts:
        notional = format_number(contract.notional)
        tail, head = _quote(contract.debtor), _quote(contract.creditor)
        if contract.reference is None:
            lines.append(f"  {tail} -> {head} [color={ArcColor.BLUE.value}, label=\"{notional}\"];")
            continue
        ref = _quote(contract.reference)
        lines.append(
            f"  {tail} -> {head} [color={ArcColor.ORANGE.value}, "
            f"label=\"{notional} on {contract.reference}\"];"
        )
        lines.append(f"  {ref} -> {head} [style=dashed, color=gray, arrowhead=none];")
    if include_red:
        aux = build_auxiliary_graph(system)
        for arc in aux.arcs():
            if arc.color is ArcColor.RED:
                lines.append(f"  {_quote(arc.tail)} -> {_quote(arc.head)} [color=red];")
    lines.append("}")
    return "\n".join(lines) + "\n"
