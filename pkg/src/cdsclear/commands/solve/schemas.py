"""
Pydantic schemas for solve reports.
"""
from enum import Enum

from pydantic import BaseModel, Field


class SolverChoice(str, Enum):
    AUTO = "auto"
    ACYCLIC = "acyclic"
    DEDICATED = "dedicated"
    SCC = "scc"
    ITERATE = "iterate"


class ModeChoice(str, Enum):
    RATIONAL = "rational"
    FLOAT = "float"


class SkippedSolver(BaseModel):
    """A solver that automatic selection tried and passed over."""

    solver: str = Field(description="Solver name")
    reason: str = Field(description="Why it did not apply")


class SolveResponse(BaseModel):
    """Clearing vectors found for one instance."""

    solver: str = Field(description="Solver that produced the result")
    banks: list[str] = Field(description="Bank ids in index order")
    solutions: list[list[str]] = Field(description="Clearing vectors, one rate per bank in index order")
    residual: str | None = Field(default=None, description="Clearing residual of the first solution")
    converged: bool | None = Field(default=None, description="Whether iteration met its target")
    iterations: int = Field(default=0, description="Iterations run")
    warnings: list[str] = Field(default_factory=list, description="Solver warnings")
    skipped: list[SkippedSolver] = Field(default_factory=list, description="Solvers passed over by auto selection")
