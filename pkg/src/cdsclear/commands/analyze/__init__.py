"""
Structure commands: analyze, verify and export-dot.
"""
from pathlib import Path
from typing import Optional

import typer

from cdsclear.analysis import to_dot
from cdsclear.commands.io import cli_errors, emit, load_instance, load_vector
from cdsclear.core.numbers import NumericMode

from .utils import analyze_lines, analyze_system, verify_lines, verify_vector


def register(app: typer.Typer) -> None:
    """Register the structure commands."""

    @app.command()
    def analyze(
        path: Path = typer.Argument(..., help="Instance JSON file"),
        simple: bool = typer.Option(False, "--simple", help="Also search for a simple strongly switched cycle"),
        as_json: bool = typer.Option(False, "--json", help="Print the report as JSON"),
    ) -> None:
        """Report non-degeneracy, switch classes, switched cycles and components."""
        with cli_errors():
            response = analyze_system(load_instance(path), simple=simple)
        emit(response, as_json, analyze_lines(response))

    @app.command()
    def verify(
        path: Path = typer.Argument(..., help="Instance JSON file"),
        vector: Path = typer.Argument(..., help="Recovery vector JSON file"),
        eps: Optional[str] = typer.Option(None, "--eps", help="Tolerance for the weak approximation test"),
        floats: bool = typer.Option(False, "--float", help="Read the vector in floating point"),
        as_json: bool = typer.Option(False, "--json", help="Print the report as JSON"),
    ) -> None:
        """Check a candidate recovery vector against the clearing condition."""
        with cli_errors():
            system = load_instance(path)
            mode = NumericMode.FLOAT if floats else NumericMode.RATIONAL
            response = verify_vector(system, load_vector(vector, mode), eps)
        emit(response, as_json, verify_lines(response))

    @app.command("export-dot")
    def export_dot(
        path: Path = typer.Argument(..., help="Instance JSON file"),
        red: bool = typer.Option(True, "--red/--no-red", help="Draw the red arcs of the auxiliary graph"),
    ) -> None:
        """Print the contract graph in Graphviz DOT format."""
        with cli_errors():
            system = load_instance(path)
        typer.echo(to_dot(system, include_red=red, name=path.stem))
