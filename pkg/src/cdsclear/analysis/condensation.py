"""
Strongly connected components of the auxiliary graph, in topological order.
"""
from __future__ import annotations

from dataclasses import dataclass

import networkx as nx

from cdsclear.analysis.graphs import AuxiliaryGraph


@dataclass(frozen=True)
class Condensation:
    """SCCs numbered in a deterministic topological order.

    ``components[k]`` lists the banks of the k-th SCC in bank-index order and
    ``dag`` has an arc k -> m whenever some arc of the auxiliary graph leaves
    SCC k for SCC m (so k < m).
    """

    components: tuple[tuple[str, ...], ...]
    membership: dict[str, int]
    dag: nx.DiGraph

    @property
    def order(self) -> tuple[int, ...]:
        return tuple(range(len(self.components)))

    def component_of(self, bank_id: str) -> int:
        return self.membership[bank_id]

    def nontrivial(self) -> list[tuple[str, ...]]:
        """Components with more than one bank (the graph has no self-loops)."""
        return [c for c in self.components if len(c) > 1]


def scc_condensation(aux: AuxiliaryGraph) -> Condensation:
    """Condense ``aux``; ties in the topological order go to the lowest bank index."""
    condensed = nx.condensation(aux.graph)

    def lowest(node: int) -> int:
        return min(aux.index[b] for b in condensed.nodes[node]["members"])

    ranked = list(nx.lexicographical_topological_sort(condensed, key=lowest))
    renumber = {old: new for new, old in enumerate(ranked)}

    components = tuple(
        tuple(sorted(condensed.nodes[old]["members"], key=aux.index.__getitem__)) for old in ranked
    )
    membership = {bank: k for k, members in enumerate(components) for bank in members}
    dag = nx.DiGraph()
    dag.add_nodes_from(range(len(components)))
    dag.add_edges_from((renumber[u], renumber[v]) for u, v in condensed.edges)
    return Condensation(components, membership, dag)
