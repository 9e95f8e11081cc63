"""
The fragment command.
"""
from pathlib import Path
from typing import Optional

import typer

from cdsclear.commands.io import cli_errors, emit

from .utils import fragment_actions, fragment_lines


def register(app: typer.Typer) -> None:
    """Register the fragment command."""

    @app.command()
    def fragment(
        cycle: str = typer.Argument(..., help="Fragment cycle such as g1a.g2b.d1.d2"),
        rewrite: bool = typer.Option(False, "--rewrite", help="Rewrite to canonical form"),
        solve: bool = typer.Option(False, "--solve", help="Print the closed-form clearing rate"),
        emit_path: Optional[Path] = typer.Option(None, "--emit", help="Write the emitted instance here ('-' for stdout)"),
        as_json: bool = typer.Option(False, "--json", help="Print the report as JSON"),
    ) -> None:
        """Build a fragment cycle, then rewrite, solve or emit it."""
        with cli_errors():
            response, emitted = fragment_actions(cycle, rewrite=rewrite, solve=solve, emit_path=emit_path)
        if emitted is not None:
            typer.echo(emitted)
            return
        emit(response, as_json, fragment_lines(response))
