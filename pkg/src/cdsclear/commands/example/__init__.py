"""
The example command.
"""
from pathlib import Path
from typing import Optional

import typer

from cdsclear.commands.io import cli_errors, write_json

from .utils import example_document


def register(app: typer.Typer) -> None:
    """Register the example command."""

    @app.command()
    def example(
        name: str = typer.Argument(..., help="example-one, irrational-pair, weak-vs-exact or weak-cycle"),
        out: Optional[Path] = typer.Option(None, "--out", help="Write the instance here instead of stdout"),
    ) -> None:
        """Write one of the worked example systems as an instance document."""
        with cli_errors():
            document = example_document(name)
            if out is not None:
                write_json(out, document)
        if out is None:
            typer.echo(document.model_dump_json(indent=2))
        else:
            typer.echo(f"wrote {name} to {out}")
