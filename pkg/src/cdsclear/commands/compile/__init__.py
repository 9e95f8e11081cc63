"""
The compile command.
"""
from pathlib import Path
from typing import Optional

import typer

from cdsclear.commands.io import cli_errors, emit, load_circuit

from .utils import compile_lines, compile_to_files


def register(app: typer.Typer) -> None:
    """Register the compile command."""

    @app.command("compile")
    def compile_command(
        path: Path = typer.Argument(..., help="Circuit JSON file"),
        out: Optional[Path] = typer.Option(None, "--out", help="Instance file (default <circuit>.instance.json)"),
        portmap: Optional[Path] = typer.Option(None, "--portmap", help="Port map file (default <circuit>.portmap.json)"),
        as_json: bool = typer.Option(False, "--json", help="Print the report as JSON"),
    ) -> None:
        """Compile a circuit into a financial system whose clearing vectors are its fixed points."""
        instance_path = out or path.with_name(f"{path.stem}.instance.json")
        portmap_path = portmap or path.with_name(f"{path.stem}.portmap.json")
        with cli_errors():
            response = compile_to_files(load_circuit(path), instance_path, portmap_path)
        emit(response, as_json, compile_lines(response))
