"""
Switched nodes and switched cycles of the auxiliary graph.

A node is switched on when its payments hinge on a reference bank and still
flow somewhere (two or more incoming red arcs, or one incoming red arc and an
outgoing blue arc). Cycles through red arcs into switched-on nodes are what
make clearing vectors irrational.
"""
from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass, replace
from enum import Enum
from itertools import islice

import networkx as nx

from cdsclear.analysis.graphs import COLOR_PREFERENCE, Arc, ArcColor, AuxiliaryGraph
from cdsclear.config import Settings, get_settings
from cdsclear.exceptions import NotACycle, NotStronglySwitched

logger = logging.getLogger(__name__)


class SwitchClass(str, Enum):
    ON = "on"
    OFF = "off"
    NEITHER = "neither"


def classify_switch(aux: AuxiliaryGraph, bank_id: str) -> SwitchClass:
    """Classify ``bank_id`` by its incoming red and outgoing blue arcs.

    Raises:
        UnknownBank: If the bank is not a vertex of ``aux``.
    """
    aux.position(bank_id)
    red_in = aux.red_in_degree(bank_id)
    if red_in >= 2 or (red_in == 1 and aux.has_outgoing_blue(bank_id)):
        return SwitchClass.ON
    if red_in == 1:
        return SwitchClass.OFF
    return SwitchClass.NEITHER


@dataclass(frozen=True)
class CycleWitness:
    """A directed cycle of the auxiliary graph and its classification."""

    arcs: tuple[Arc, ...]
    red: bool = False
    weakly_switched: bool = False
    strongly_switched: bool = False
    simple: bool | None = None

    @property
    def nodes(self) -> tuple[str, ...]:
        return tuple(arc.tail for arc in self.arcs)

    @property
    def red_arcs(self) -> tuple[Arc, ...]:
        return tuple(arc for arc in self.arcs if arc.color is ArcColor.RED)

    def render(self) -> str:
        """``2 -> 3 -> 7 -> 6 -> 2``"""
        return " -> ".join(self.nodes + self.nodes[:1])

    def describe(self) -> str:
        """Arc-by-arc rendering with colours."""
        return ", ".join(str(arc) for arc in self.arcs)


def classify_cycle(aux: AuxiliaryGraph, arcs: Sequence[Arc]) -> CycleWitness:
    """Verify that ``arcs`` form a simple directed cycle of ``aux`` and classify it.

    Raises:
        NotACycle: If the arcs are missing from ``aux``, do not chain, do not
            close, or revisit a node.
    """
    arcs = tuple(arcs)
    if not arcs:
        raise NotACycle("empty arc list")
    for arc in arcs:
        if not aux.has_arc(arc.tail, arc.head, arc.color):
            raise NotACycle(f"{arc} is not an arc of the auxiliary graph")
    for current, following in zip(arcs, arcs[1:] + arcs[:1]):
        if current.head != following.tail:
            raise NotACycle(f"{current} is not followed by an arc leaving {current.head}")
    nodes = [arc.tail for arc in arcs]
    if len(set(nodes)) != len(nodes):
        raise NotACycle("cycle revisits a node")

    heads = [classify_switch(aux, arc.head) for arc in arcs if arc.color is ArcColor.RED]
    return CycleWitness(
        arcs=arcs,
        red=bool(heads),
        weakly_switched=any(h is SwitchClass.ON for h in heads),
        strongly_switched=bool(heads) and all(h is SwitchClass.ON for h in heads),
    )


def _rotate(aux: AuxiliaryGraph, arcs: list[Arc]) -> list[Arc]:
    start = min(range(len(arcs)), key=lambda i: aux.index[arcs[i].tail])
    return arcs[start:] + arcs[:start]


def _close_cycle(aux: AuxiliaryGraph, graph: nx.DiGraph, red_arc: Arc) -> CycleWitness | None:
    """Shortest path head ~> tail in ``graph`` closed by ``red_arc``."""
    try:
        path = nx.shortest_path(graph, red_arc.head, red_arc.tail)
    except nx.NetworkXNoPath:
        return None
    arcs: list[Arc] = []
    for tail, head in zip(path, path[1:]):
        available = graph[tail][head]["colors"]
        color = next(c for c in COLOR_PREFERENCE if c in available)
        arcs.append(Arc(tail, head, color))
    arcs.append(red_arc)
    return classify_cycle(aux, _rotate(aux, arcs))


def _red_arcs_into_on(aux: AuxiliaryGraph) -> list[Arc]:
    arcs = [
        Arc(tail, head, ArcColor.RED)
        for tail, head in aux.red
        if classify_switch(aux, head) is SwitchClass.ON
    ]
    return sorted(arcs, key=lambda a: (aux.index[a.tail], aux.index[a.head]))


def is_acyclic(aux: AuxiliaryGraph) -> bool:
    """True iff the three-coloured auxiliary graph has no directed cycle."""
    return nx.is_directed_acyclic_graph(aux.graph)


def find_weakly_switched_cycle(aux: AuxiliaryGraph) -> CycleWitness | None:
    """A cycle with at least one red arc into a switched-on node, if any."""
    for red_arc in _red_arcs_into_on(aux):
        witness = _close_cycle(aux, aux.graph, red_arc)
        if witness is not None:
            logger.debug("weakly switched cycle through %s: %s", red_arc, witness.render())
            return witness
    return None


def find_strongly_switched_cycle(aux: AuxiliaryGraph) -> CycleWitness | None:
    """A red cycle whose red arcs all enter switched-on nodes, if any.

    Red arcs into nodes that are not switched on are removed first, so every
    cycle of the remaining graph through a red arc qualifies.
    """
    blocked = {
        (tail, head) for tail, head in aux.red if classify_switch(aux, head) is not SwitchClass.ON
    }
    pruned = aux.to_networkx(drop_red=blocked)
    for red_arc in _red_arcs_into_on(aux):
        witness = _close_cycle(aux, pruned, red_arc)
        if witness is not None:
            witness = replace(witness, simple=check_simple_strongly_switched(aux, witness))
            logger.debug("strongly switched cycle through %s: %s", red_arc, witness.render())
            return witness
    return None


# =============================================================================
# Simple strongly switched cycles
# =============================================================================

def _reference_escapes(aux: AuxiliaryGraph, reference: str, on_cycle: set[str]) -> bool:
    if reference in on_cycle:
        return False
    return any(
        head not in on_cycle and any(c is not ArcColor.RED for c in aux.colors(reference, head))
        for head in aux.successors(reference)
    )


def _has_exit(aux: AuxiliaryGraph, node: str, on_cycle: set[str]) -> bool:
    """Non-red arc from ``node`` leaving the cycle, with the orange-arc reference condition."""
    for head in aux.successors(node):
        if head in on_cycle:
            continue
        colors = aux.colors(node, head)
        if ArcColor.BLUE in colors:
            return True
        if ArcColor.ORANGE in colors and any(
            _reference_escapes(aux, ref, on_cycle) for ref in aux.orange[(node, head)]
        ):
            return True
    return False


def check_simple_strongly_switched(aux: AuxiliaryGraph, cycle: CycleWitness) -> bool:
    """Check the exit conditions around every red arc of a strongly switched cycle.

    Each red arc (u, v) needs non-red arcs out of u and out of v to nodes off
    the cycle; an orange exit additionally needs a reference bank off the
    cycle that itself has a non-red arc to a node off the cycle.

    Raises:
        NotACycle: If ``cycle`` is not a cycle of ``aux``.
        NotStronglySwitched: If the cycle is not strongly switched.
    """
    checked = classify_cycle(aux, cycle.arcs)
    if not checked.strongly_switched:
        raise NotStronglySwitched(f"cycle {checked.render()} is not strongly switched")
    on_cycle = set(checked.nodes)
    return all(
        _has_exit(aux, arc.tail, on_cycle) and _has_exit(aux, arc.head, on_cycle)
        for arc in checked.red_arcs
    )


@dataclass(frozen=True)
class SimpleCycleSearch:
    witness: CycleWitness | None
    examined: int
    inconclusive: bool


def _colourings(aux: AuxiliaryGraph, nodes: list[str]) -> list[list[Arc]]:
    """Candidate arc colourings of a node cycle with as few red arcs as possible."""
    pairs = list(zip(nodes, nodes[1:] + nodes[:1]))
    base: list[Arc] = []
    optional: list[int] = []
    for i, (tail, head) in enumerate(pairs):
        colors = aux.colors(tail, head)
        base.append(Arc(tail, head, colors[0]))
        if colors[0] is not ArcColor.RED and ArcColor.RED in colors:
            optional.append(i)
    if any(arc.color is ArcColor.RED for arc in base):
        return [base]
    candidates = []
    for i in optional:
        arcs = list(base)
        arcs[i] = Arc(arcs[i].tail, arcs[i].head, ArcColor.RED)
        candidates.append(arcs)
    return candidates


def find_simple_strongly_switched_cycle(
    aux: AuxiliaryGraph, cap: int | None = None, settings: Settings | None = None
) -> SimpleCycleSearch:
    """Enumerate simple cycles (at most ``cap``) looking for a simple strongly switched one.

    The enumeration is exponential in the worst case; past the cap the
    result is marked inconclusive.
    """
    settings = settings or get_settings()
    cap = settings.cycle_cap if cap is None else cap
    examined = 0
    for nodes in islice(nx.simple_cycles(aux.graph), cap + 1):
        if examined == cap:
            logger.warning("simple cycle enumeration stopped at the cap of %d cycles", cap)
            return SimpleCycleSearch(None, examined, True)
        examined += 1
        for arcs in _colourings(aux, nodes):
            witness = classify_cycle(aux, _rotate(aux, arcs))
            if witness.strongly_switched and check_simple_strongly_switched(aux, witness):
                return SimpleCycleSearch(replace(witness, simple=True), examined, False)
    return SimpleCycleSearch(None, examined, False)
