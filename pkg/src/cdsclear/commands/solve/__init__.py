"""
The solve command.
"""
from pathlib import Path
from typing import Optional

import typer

from cdsclear.commands.io import cli_errors, emit, load_instance

from .schemas import ModeChoice, SolveResponse, SolverChoice
from .utils import solve_instance, solve_lines


def register(app: typer.Typer) -> None:
    """Register the solve command."""

    @app.command()
    def solve(
        path: Path = typer.Argument(..., help="Instance JSON file"),
        solver: SolverChoice = typer.Option(SolverChoice.AUTO, "--solver", help="Solver to use"),
        eps: Optional[float] = typer.Option(None, "--eps", help="Residual target of the iteration"),
        max_iter: Optional[int] = typer.Option(None, "--max-iter", help="Iteration cap"),
        mode: ModeChoice = typer.Option(ModeChoice.RATIONAL, "--mode", help="Output arithmetic"),
        as_json: bool = typer.Option(False, "--json", help="Print the report as JSON"),
    ) -> None:
        """Compute clearing vectors of an instance.

        Automatic selection tries the acyclic, component-wise and dedicated
        solvers before falling back to damped iteration.
        """
        with cli_errors():
            system = load_instance(path)
            response: SolveResponse = solve_instance(system, solver, eps, max_iter, mode)
        emit(response, as_json, solve_lines(response))
