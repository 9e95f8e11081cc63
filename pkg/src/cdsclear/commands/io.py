"""
File loading, report printing and exit-code handling shared by all commands.
"""
from __future__ import annotations

import json
import logging
from collections.abc import Iterator
from contextlib import contextmanager
from pathlib import Path
from typing import Any, TypeVar

import typer
from pydantic import BaseModel, ValidationError

from cdsclear.circuits.model import Circuit
from cdsclear.commands.schemas import CircuitDocument, InstanceDocument, VectorDocument
from cdsclear.core.numbers import NumericMode
from cdsclear.core.system import FinancialSystem
from cdsclear.core.vector import RecoveryVector
from cdsclear.exceptions import CdsClearError, ParseError, SolverPreconditionError

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_PRECONDITION = 2

M = TypeVar("M", bound=BaseModel)


def read_json(path: Path) -> Any:
    """Parse a JSON file, reporting syntax errors with their position.

    Raises:
        ParseError: If the file cannot be read or is not valid JSON.
    """
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror or exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc.msg}", exc.lineno, exc.colno) from exc


def load_document(path: Path, model: type[M]) -> M:
    """Validate a JSON file against ``model``.

    Raises:
        ParseError: On invalid JSON or a document that does not validate.
    """
    data = read_json(path)
    try:
        return model.model_validate(data)
    except ValidationError as exc:
        first = exc.errors()[0]
        where = ".".join(str(part) for part in first["loc"]) or "document"
        raise ParseError(f"{path}: {where}: {first['msg']}") from exc


def load_instance(path: Path) -> FinancialSystem:
    document = load_document(path, InstanceDocument)
    try:
        return document.to_system()
    except ValueError as exc:
        raise ParseError(f"{path}: {exc}") from exc


def load_vector(path: Path, mode: NumericMode = NumericMode.RATIONAL) -> RecoveryVector:
    data = read_json(path)
    try:
        document = VectorDocument(rates=data)
    except ValidationError as exc:
        raise ParseError(f"{path}: {exc.errors()[0]['msg']}") from exc
    try:
        return document.to_vector(mode)
    except ValueError as exc:
        raise ParseError(f"{path}: {exc}") from exc


def load_circuit(path: Path) -> Circuit:
    return load_document(path, CircuitDocument).to_circuit()


def write_json(path: Path, payload: BaseModel | dict) -> None:
    text = payload.model_dump_json(indent=2) if isinstance(payload, BaseModel) else json.dumps(payload, indent=2)
    Path(path).write_text(text + "\n", encoding="utf-8")
    logger.debug("wrote %s", path)


def emit(report: BaseModel, as_json: bool, lines: list[str]) -> None:
    """Print ``report`` as JSON or the pre-rendered text lines."""
    if as_json:
        typer.echo(report.model_dump_json(indent=2))
        return
    for line in lines:
        typer.echo(line)


@contextmanager
def cli_errors() -> Iterator[None]:
    """Map library errors to exit codes: 2 for solver preconditions, 1 for the rest."""
    try:
        yield
    except SolverPreconditionError as exc:
        typer.echo(f"error: {type(exc).__name__}: {exc}", err=True)
        raise typer.Exit(EXIT_PRECONDITION) from exc
    except (CdsClearError, ValueError) as exc:
        typer.echo(f"error: {type(exc).__name__}: {exc}", err=True)
        raise typer.Exit(EXIT_INPUT) from exc
