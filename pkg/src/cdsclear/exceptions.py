"""
Error hierarchy for cdsclear.

Everything raised on purpose derives from ``CdsClearError``. Errors that mean
"this solver does not apply to this instance" derive from
``SolverPreconditionError``; the command line maps them to exit code 2.
"""
from __future__ import annotations

from typing import TYPE_CHECKING, Any

if TYPE_CHECKING:
    from cdsclear.analysis.switching import CycleWitness
    from cdsclear.core.clearing import NonDegeneracyReport


class CdsClearError(Exception):
    """Base class for all cdsclear errors."""


# =============================================================================
# Input and data model
# =============================================================================

class ParseError(CdsClearError):
    """An input document could not be parsed."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(f"{message}{where}")


class MalformedContract(CdsClearError):
    """A contract names the same bank twice or carries a negative notional."""


class UnknownBank(CdsClearError, KeyError):
    """A bank id is not part of the system or vector."""

    def __str__(self) -> str:
        return Exception.__str__(self)


class ModeMismatch(CdsClearError):
    """An exact comparison was requested on float-mode values."""


class IncompatibleRadicands(CdsClearError):
    """Two quadratic surds over different square roots were combined."""


# =============================================================================
# Solvers
# =============================================================================

class SolverPreconditionError(CdsClearError):
    """The instance does not satisfy the precondition of the chosen solver."""


class NotAcyclic(SolverPreconditionError):
    """The auxiliary graph has a directed cycle."""


class NotDedicated(SolverPreconditionError):
    """Some CDS debtor also owes debt or writes CDSes on several references."""

    def __init__(self, message: str, violations: list[tuple[str, str]] | None = None):
        self.violations = violations or []
        super().__init__(message)


class Degenerate(SolverPreconditionError):
    """The instance fails the non-degeneracy conditions."""

    def __init__(self, report: NonDegeneracyReport):
        self.report = report
        banks = ", ".join(f"{bank} ({condition.value})" for bank, condition in report.violations)
        super().__init__(f"degenerate system: {banks}")


class TooManyBranches(SolverPreconditionError):
    """Branch enumeration would exceed the configured cap."""


class WeaklySwitchedPresent(SolverPreconditionError):
    """The auxiliary graph contains a weakly switched cycle."""

    def __init__(self, witness: CycleWitness):
        self.witness = witness
        super().__init__(f"weakly switched cycle present: {witness.render()}")


class NoExactReference(SolverPreconditionError):
    """No exact solver applies, so strong certification is impossible."""


class SingularSystem(CdsClearError):
    """A linear system has no unique solution."""


# =============================================================================
# Analysis
# =============================================================================

class NotACycle(CdsClearError):
    """The arcs do not form a directed cycle of the auxiliary graph."""


class NotStronglySwitched(CdsClearError):
    """The cycle has no red arc or a red arc whose head is not switched on."""


# =============================================================================
# Circuits and compiler
# =============================================================================

class InvalidCircuit(CdsClearError):
    """A circuit is not a well-formed gate DAG."""


class NegativeSqrtOperand(CdsClearError):
    """A square-root gate received a negative operand."""


class NotSelfMapping(CdsClearError):
    """A circuit provably maps some input outside the unit cube."""


class NotNormalized(CdsClearError):
    """A circuit handed to the compiler still has gates or constants outside the normalized basis."""


class InvalidParam(CdsClearError):
    """A gadget parameter is out of range."""


class DegenerateKindRequiresFlag(CdsClearError):
    """A degenerate gadget was requested without opting in."""


class SemanticsMismatch(CdsClearError):
    """A gadget's clearing behaviour disagrees with its arithmetic semantics."""

    def __init__(self, message: str, residual: Any = None):
        self.residual = residual
        super().__init__(message)


class DegenerateOutput(CdsClearError):
    """A compiled system failed its internal consistency checks."""


# =============================================================================
# Fragments
# =============================================================================

class UnknownFragment(CdsClearError):
    """A fragment name is not in the catalog."""


class AlreadyClosed(CdsClearError):
    """A closed fragment cycle cannot be extended or closed again."""


class G3FollowedByG3OrD(CdsClearError):
    """A g3 fragment must be followed by a g1 or g2 fragment."""


class RuleNotApplicable(CdsClearError):
    """The rewriting rule does not match at the given position."""


class ContextMismatch(CdsClearError):
    """The follower of a fragment gives no known transfer map."""


class NotRewritable(CdsClearError):
    """The fragment cycle does not rewrite to copies of g1a'."""
