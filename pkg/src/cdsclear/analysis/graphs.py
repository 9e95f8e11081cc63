"""
Contract graph and auxiliary graph of a financial system.

The contract graph has one blue arc per debt contract (debtor -> creditor)
and one orange arc per CDS (debtor -> creditor) carrying its reference bank.
The auxiliary graph collapses parallel arcs of one colour into a single arc
and adds a red arc reference -> debtor for every CDS.
"""
from __future__ import annotations

from collections.abc import Iterator
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property

import networkx as nx

from cdsclear.core.system import FinancialSystem
from cdsclear.exceptions import UnknownBank


class ArcColor(str, Enum):
    BLUE = "blue"
    ORANGE = "orange"
    RED = "red"


# preference when a node pair carries several colours
COLOR_PREFERENCE = (ArcColor.BLUE, ArcColor.ORANGE, ArcColor.RED)


@dataclass(frozen=True)
class Arc:
    tail: str
    head: str
    color: ArcColor

    def __str__(self) -> str:
        return f"{self.tail} -{self.color.value}-> {self.head}"


@dataclass(frozen=True)
class ContractGraph:
    """One arc per contract; orange arcs keep their reference bank."""

    vertices: tuple[str, ...]
    blue: tuple[tuple[str, str], ...]
    orange: tuple[tuple[str, str, str], ...]


def build_contract_graph(system: FinancialSystem) -> ContractGraph:
    return ContractGraph(
        vertices=system.bank_ids,
        blue=tuple((c.debtor, c.creditor) for c in system.debts),
        orange=tuple((c.debtor, c.creditor, c.reference) for c in system.cdses),
    )


@dataclass
class AuxiliaryGraph:
    """Three-coloured simple digraph over the banks.

    ``orange`` maps each orange pair to the set of reference banks of the
    CDSes written on it. ``graph`` is the union of all colours as a networkx
    DiGraph whose edges carry a ``colors`` attribute.
    """

    vertices: tuple[str, ...]
    blue: set[tuple[str, str]] = field(default_factory=set)
    orange: dict[tuple[str, str], frozenset[str]] = field(default_factory=dict)
    red: set[tuple[str, str]] = field(default_factory=set)

    @cached_property
    def index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    def position(self, bank_id: str) -> int:
        try:
            return self.index[bank_id]
        except KeyError:
            raise UnknownBank(f"unknown bank {bank_id!r}") from None

    def colors(self, tail: str, head: str) -> tuple[ArcColor, ...]:
        """Colours present on the pair, in preference order."""
        present = []
        if (tail, head) in self.blue:
            present.append(ArcColor.BLUE)
        if (tail, head) in self.orange:
            present.append(ArcColor.ORANGE)
        if (tail, head) in self.red:
            present.append(ArcColor.RED)
        return tuple(present)

    def has_arc(self, tail: str, head: str, color: ArcColor) -> bool:
        return color in self.colors(tail, head)

    def arcs(self) -> Iterator[Arc]:
        """Every coloured arc, ordered by (tail index, head index, colour)."""
        pairs = sorted(
            set(self.blue) | set(self.orange) | set(self.red),
            key=lambda p: (self.index[p[0]], self.index[p[1]]),
        )
        for tail, head in pairs:
            for color in self.colors(tail, head):
                yield Arc(tail, head, color)

    def successors(self, bank_id: str) -> list[str]:
        return sorted(self.graph.successors(bank_id), key=self.index.__getitem__)

    def red_in_degree(self, bank_id: str) -> int:
        return sum(1 for _, head in self.red if head == bank_id)

    def has_outgoing_blue(self, bank_id: str) -> bool:
        return any(tail == bank_id for tail, _ in self.blue)

    @cached_property
    def graph(self) -> nx.DiGraph:
        return self.to_networkx()

    def to_networkx(self, drop_red: set[tuple[str, str]] | None = None) -> nx.DiGraph:
        """Union digraph, optionally without some red arcs.

        Nodes and edges are inserted in bank-index order so that traversals
        are deterministic.
        """
        drop_red = drop_red or set()
        g = nx.DiGraph()
        g.add_nodes_from(self.vertices)
        for arc in self.arcs():
            if arc.color is ArcColor.RED and (arc.tail, arc.head) in drop_red:
                continue
            if g.has_edge(arc.tail, arc.head):
                g[arc.tail][arc.head]["colors"] += (arc.color,)
            else:
                g.add_edge(arc.tail, arc.head, colors=(arc.color,))
        return g


def build_auxiliary_graph(system: FinancialSystem) -> AuxiliaryGraph:
    """Collapse the contract graph and add red arcs reference -> debtor."""
    aux = AuxiliaryGraph(system.bank_ids)
    references: dict[tuple[str, str], set[str]] = {}
    for contract in system.contracts:
        pair = (contract.debtor, contract.creditor)
        if contract.reference is None:
            aux.blue.add(pair)
        else:
            references.setdefault(pair, set()).add(contract.reference)
            aux.red.add((contract.reference, contract.debtor))
    aux.orange = {pair: frozenset(refs) for pair, refs in references.items()}
    return aux
