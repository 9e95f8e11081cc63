"""
Result types shared by the solvers.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from cdsclear.core.numbers import Number, bit_size
from cdsclear.core.vector import RecoveryVector


class SolverKind(str, Enum):
    ACYCLIC = "acyclic"
    DEDICATED = "dedicated"
    SCC = "scc"
    ITERATE = "iterate"
    PLANTED = "planted"


class Branch(str, Enum):
    """Which side of ``min(cap, ratio)`` is active."""

    SATURATED = "saturated"
    INTERIOR = "interior"


@dataclass(frozen=True)
class BranchAssignment:
    """One branch flag per non-CDS-debtor bank with liabilities and per CDS."""

    rates: dict[str, Branch] = field(default_factory=dict)
    payments: dict[str, Branch] = field(default_factory=dict)

    @property
    def size(self) -> int:
        return len(self.rates) + len(self.payments)

    def describe(self) -> str:
        parts = [f"r[{k}]={v.value}" for k, v in self.rates.items()]
        parts += [f"p[{k}]={v.value}" for k, v in self.payments.items()]
        return ", ".join(parts)


@dataclass
class SolveReport:
    """What a solver found.

    Exact solvers fill ``solutions`` (every entry is an exact clearing
    vector); the iterative solver returns a single float vector together
    with its recomputed residual and convergence flag.
    """

    solver: SolverKind
    solutions: list[RecoveryVector] = field(default_factory=list)
    residual: Number | None = None
    iterations: int = 0
    converged: bool | None = None
    warnings: list[str] = field(default_factory=list)
    branches: list[BranchAssignment] = field(default_factory=list)

    @property
    def solution(self) -> RecoveryVector:
        if not self.solutions:
            raise LookupError(f"{self.solver.value} solver returned no solution")
        return self.solutions[0]

    def max_bit_size(self) -> int:
        return max(
            (bit_size(v) for r in self.solutions for v in r.values.values()),
            default=0,
        )

    def warn_on_growth(self, threshold: int) -> None:
        """Attach a coefficient-growth warning if any value exceeds ``threshold`` bits."""
        bits = self.max_bit_size()
        if bits > threshold:
            self.warnings.append(
                f"coefficient growth: solution values need {bits} bits (threshold {threshold})"
            )
