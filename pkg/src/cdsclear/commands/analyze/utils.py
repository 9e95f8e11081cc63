"""
Structure analysis and vector verification for the command line.
"""
from __future__ import annotations

from cdsclear.analysis import (
    CycleWitness,
    build_auxiliary_graph,
    check_dedicated_cds_debtor,
    classify_switch,
    find_simple_strongly_switched_cycle,
    find_strongly_switched_cycle,
    find_weakly_switched_cycle,
    is_acyclic,
    scc_condensation,
)
from cdsclear.config import Settings, get_settings
from cdsclear.core import check_nondegenerate, clearing_residual, format_number, is_weak_eps
from cdsclear.core.numbers import NumericMode, as_rational
from cdsclear.core.system import FinancialSystem
from cdsclear.core.vector import RecoveryVector

from .schemas import AnalyzeResponse, ComponentReport, CycleReport, VerifyResponse


def _cycle(witness: CycleWitness | None) -> CycleReport | None:
    if witness is None:
        return None
    return CycleReport(
        nodes=list(witness.nodes),
        arcs=witness.describe(),
        weakly_switched=witness.weakly_switched,
        strongly_switched=witness.strongly_switched,
        simple=witness.simple,
    )


def analyze_system(system: FinancialSystem, simple: bool = False, settings: Settings | None = None) -> AnalyzeResponse:
    """Collect non-degeneracy, acyclicity, switch classes, switched cycles and SCCs.

    The simple strongly switched search enumerates simple cycles and only
    runs when ``simple`` is set.
    """
    settings = settings or get_settings()
    aux = build_auxiliary_graph(system)
    degeneracy = check_nondegenerate(system)
    condensation = scc_condensation(aux)

    simple_search = None
    if simple:
        search = find_simple_strongly_switched_cycle(aux, settings=settings)
        if search.inconclusive:
            simple_search = f"inconclusive after {search.examined} cycles"
        elif search.witness is None:
            simple_search = f"none among {search.examined} cycles"
        else:
            simple_search = search.witness.render()

    return AnalyzeResponse(
        banks=system.size,
        contracts=len(system.contracts),
        nondegenerate=degeneracy.ok,
        violations=[f"{bank}: {condition.value}" for bank, condition in degeneracy.violations],
        dedicated=check_dedicated_cds_debtor(system).ok,
        acyclic=is_acyclic(aux),
        switches={b: classify_switch(aux, b).value for b in system.bank_ids},
        red_arcs=[f"{tail} -> {head}" for tail, head in sorted(aux.red, key=lambda a: (aux.index[a[0]], aux.index[a[1]]))],
        weakly_switched_cycle=_cycle(find_weakly_switched_cycle(aux)),
        strongly_switched_cycle=_cycle(find_strongly_switched_cycle(aux)),
        simple_search=simple_search,
        components=[
            ComponentReport(index=k, banks=list(members))
            for k, members in enumerate(condensation.components)
            if len(members) > 1
        ],
        component_count=len(condensation.components),
    )


def _render_cycle(report: CycleReport) -> str:
    return " -> ".join(report.nodes + report.nodes[:1])


def analyze_lines(response: AnalyzeResponse) -> list[str]:
    lines = [
        f"banks: {response.banks}, contracts: {response.contracts}",
        f"non-degenerate: {'yes' if response.nondegenerate else 'no'}",
    ]
    lines += [f"  violation at {v}" for v in response.violations]
    lines.append(f"dedicated CDS debtors: {'yes' if response.dedicated else 'no'}")
    lines.append(f"acyclic: {'yes' if response.acyclic else 'no'}")
    on = [b for b, s in response.switches.items() if s == "on"]
    off = [b for b, s in response.switches.items() if s == "off"]
    lines.append(f"switched on: {', '.join(on) or '-'}; switched off: {', '.join(off) or '-'}")
    lines.append(f"red arcs: {', '.join(response.red_arcs) or '-'}")

    strong = response.strongly_switched_cycle
    weak = response.weakly_switched_cycle
    if strong is not None:
        simple = "" if strong.simple is None else (" (simple)" if strong.simple else " (not simple)")
        lines.append(f"strongly switched cycle: {_render_cycle(strong)}{simple}")
    if weak is not None and strong is None:
        lines.append(f"weakly but not strongly switched cycle: {_render_cycle(weak)}")
    elif weak is None:
        lines.append("no weakly switched cycle")
    if response.simple_search is not None:
        lines.append(f"simple strongly switched search: {response.simple_search}")
    lines.append(f"strongly connected components: {response.component_count}")
    for component in response.components:
        lines.append(f"  component {component.index}: {', '.join(component.banks)}")
    return lines


def verify_vector(
    system: FinancialSystem, vector: RecoveryVector, eps: str | None = None
) -> VerifyResponse:
    """Residual, exact clearing test and optional weak eps test of ``vector``."""
    residual = clearing_residual(system, vector)
    exact = vector.mode is not NumericMode.FLOAT
    bound = None if eps is None else (as_rational(eps) if exact else float(eps))
    return VerifyResponse(
        residual=format_number(residual),
        clearing=exact and residual == 0,
        eps=None if eps is None else format_number(bound),
        weak_eps=None if bound is None else is_weak_eps(system, vector, bound),
    )


def verify_lines(response: VerifyResponse) -> list[str]:
    lines = [f"residual: {response.residual}", f"clearing: {'yes' if response.clearing else 'no'}"]
    if response.weak_eps is not None:
        lines.append(f"weakly {response.eps}-approximate: {'yes' if response.weak_eps else 'no'}")
    return lines
