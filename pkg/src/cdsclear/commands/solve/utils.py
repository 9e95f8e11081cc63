"""
Solver selection for the solve command.
"""
from __future__ import annotations

import logging

from cdsclear.config import Settings, get_settings
from cdsclear.core.numbers import format_number
from cdsclear.core.system import FinancialSystem
from cdsclear.exceptions import SingularSystem, SolverPreconditionError
from cdsclear.solvers import (
    SolveReport,
    iterate_clearing,
    solve_acyclic,
    solve_dedicated,
    solve_no_weakly_switched,
)

from .schemas import ModeChoice, SkippedSolver, SolveResponse, SolverChoice

logger = logging.getLogger(__name__)

AUTO_ORDER = (SolverChoice.ACYCLIC, SolverChoice.SCC, SolverChoice.DEDICATED, SolverChoice.ITERATE)


def run_solver(
    system: FinancialSystem,
    solver: SolverChoice,
    eps: float | None = None,
    max_iter: int | None = None,
    settings: Settings | None = None,
) -> SolveReport:
    """Run one named solver.

    Raises:
        SolverPreconditionError: If the solver does not apply.
    """
    settings = settings or get_settings()
    if solver is SolverChoice.ACYCLIC:
        return solve_acyclic(system, settings)
    if solver is SolverChoice.SCC:
        return solve_no_weakly_switched(system, settings)
    if solver is SolverChoice.DEDICATED:
        return solve_dedicated(system, settings)
    if solver is SolverChoice.ITERATE:
        return iterate_clearing(system, eps=eps, max_iter=max_iter, settings=settings)
    raise ValueError(f"not a concrete solver: {solver.value}")


def solve_instance(
    system: FinancialSystem,
    solver: SolverChoice = SolverChoice.AUTO,
    eps: float | None = None,
    max_iter: int | None = None,
    mode: ModeChoice = ModeChoice.RATIONAL,
    settings: Settings | None = None,
) -> SolveResponse:
    """Solve with the chosen solver, or try acyclic, SCC, dedicated and iteration in turn.

    Raises:
        SolverPreconditionError: If an explicitly chosen solver does not apply, or
            none of the automatic candidates does.
    """
    skipped: list[SkippedSolver] = []
    if solver is SolverChoice.AUTO:
        for candidate in AUTO_ORDER:
            try:
                report = run_solver(system, candidate, eps, max_iter, settings)
                break
            except (SolverPreconditionError, SingularSystem) as exc:
                logger.debug("%s solver skipped: %s", candidate.value, exc)
                skipped.append(SkippedSolver(solver=candidate.value, reason=f"{type(exc).__name__}: {exc}"))
        else:
            raise SolverPreconditionError(
                "no solver applies: " + "; ".join(f"{s.solver}: {s.reason}" for s in skipped)
            )
    else:
        report = run_solver(system, solver, eps, max_iter, settings)

    def render(value: object) -> str:
        if mode is ModeChoice.FLOAT:
            return format(float(value), ".12g")
        return format_number(value)

    return SolveResponse(
        solver=report.solver.value,
        banks=list(system.bank_ids),
        solutions=[[render(r[b]) for b in system.bank_ids] for r in report.solutions],
        residual=None if report.residual is None else render(report.residual),
        converged=report.converged,
        iterations=report.iterations,
        warnings=list(report.warnings),
        skipped=skipped,
    )


def solve_lines(response: SolveResponse) -> list[str]:
    lines = [f"solver: {response.solver}"]
    lines += [f"skipped {s.solver}: {s.reason}" for s in response.skipped]
    lines.append("banks: (" + ", ".join(response.banks) + ")")
    for solution in response.solutions:
        lines.append("(" + ", ".join(solution) + ")")
    if response.residual is not None:
        lines.append(f"residual: {response.residual}")
    if response.converged is not None:
        state = "converged" if response.converged else "did not converge"
        lines.append(f"iteration {state} after {response.iterations} steps")
    lines += [f"warning: {w}" for w in response.warnings]
    return lines
