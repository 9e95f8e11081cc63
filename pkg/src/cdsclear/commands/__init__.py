"""
cdsclear command registry.

Every command package exposes ``register(app)``; this module wires them all
into the typer application.
"""
import typer

from . import analyze, compile, example, fragment, solve


def register_all_commands(app: typer.Typer) -> None:
    """Register all commands with the typer application.

    Args:
        app: The root typer application
    """
    solve.register(app)
    analyze.register(app)
    compile.register(app)
    fragment.register(app)
    example.register(app)
