"""
Clearing-vector solvers: exact (acyclic, dedicated, component-wise) and
iterative.
"""
from .acyclic import solve_acyclic
from .certify import certify_strong, exact_references, half_vector
from .dedicated import solve_dedicated
from .iterate import iterate_clearing
from .linalg import solve_exact
from .propagate import bank_rate, propagate_rates
from .scan import scan_roots
from .scc import component_subsystem, solve_no_weakly_switched
from .schemas import Branch, BranchAssignment, SolveReport, SolverKind

__all__ = [
    "Branch",
    "BranchAssignment",
    "SolveReport",
    "SolverKind",
    "bank_rate",
    "certify_strong",
    "component_subsystem",
    "exact_references",
    "half_vector",
    "iterate_clearing",
    "propagate_rates",
    "scan_roots",
    "solve_acyclic",
    "solve_dedicated",
    "solve_exact",
    "solve_no_weakly_switched",
]
