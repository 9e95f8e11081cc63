"""
cdsclear command line.
"""
import logging

import typer
from dotenv import load_dotenv

from cdsclear.commands import register_all_commands
from cdsclear.config import get_settings

load_dotenv()

app = typer.Typer(
    name="cdsclear",
    help="Clear, analyze and synthesize financial networks with debt contracts and CDSes.",
    no_args_is_help=True,
    add_completion=False,
)


@app.callback()
def main(
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Log at DEBUG level"),
) -> None:
    settings = get_settings()
    level = logging.DEBUG if verbose else settings.log_level.upper()
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")


register_all_commands(app)


if __name__ == "__main__":
    app()
