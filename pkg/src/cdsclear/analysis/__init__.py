"""
Structural analysis: contract and auxiliary graphs, switched cycles, SCCs and
the dedicated CDS debtor check.
"""
from .condensation import Condensation, scc_condensation
from .dedicated import DedicatedReport, check_dedicated_cds_debtor
from .dot import to_dot
from .graphs import Arc, ArcColor, AuxiliaryGraph, ContractGraph, build_auxiliary_graph, build_contract_graph
from .switching import (
    CycleWitness,
    SimpleCycleSearch,
    SwitchClass,
    check_simple_strongly_switched,
    classify_cycle,
    classify_switch,
    find_simple_strongly_switched_cycle,
    find_strongly_switched_cycle,
    find_weakly_switched_cycle,
    is_acyclic,
)

__all__ = [
    "Arc",
    "ArcColor",
    "AuxiliaryGraph",
    "Condensation",
    "ContractGraph",
    "CycleWitness",
    "DedicatedReport",
    "SimpleCycleSearch",
    "SwitchClass",
    "build_auxiliary_graph",
    "build_contract_graph",
    "check_dedicated_cds_debtor",
    "check_simple_strongly_switched",
    "classify_cycle",
    "classify_switch",
    "find_simple_strongly_switched_cycle",
    "find_strongly_switched_cycle",
    "find_weakly_switched_cycle",
    "is_acyclic",
    "scc_condensation",
    "to_dot",
]
