"""
Shared fixtures: the worked example systems and helpers that write them to disk.
"""
from fractions import Fraction
from pathlib import Path

import pytest
from typer.testing import CliRunner

from cdsclear.commands.schemas import InstanceDocument
from cdsclear.core import FinancialSystem, QuadraticSurd
from cdsclear.instances import example_one, irrational_pair, weak_cycle, weak_vs_exact

GOLDEN = QuadraticSurd(Fraction(3, 2), Fraction(-1, 2), 5)
SILVER = QuadraticSurd(Fraction(1), Fraction(-1, 2), 2)


@pytest.fixture
def example_one_system() -> FinancialSystem:
    return example_one()


@pytest.fixture
def irrational_pair_system() -> FinancialSystem:
    return irrational_pair()


@pytest.fixture
def weak_vs_exact_system() -> FinancialSystem:
    return weak_vs_exact()


@pytest.fixture
def weak_cycle_system() -> FinancialSystem:
    return weak_cycle()


@pytest.fixture
def debt_ring() -> FinancialSystem:
    """Three banks owing each other around a ring; clears at (3/4, 1, 1)."""
    return FinancialSystem.create(
        {"1": Fraction(1, 2), "2": 0, "3": 0},
        debts=[("1", "2", 2), ("2", "3", 1), ("3", "1", 1)],
    )


@pytest.fixture
def write_instance(tmp_path: Path):
    """Write a system as an instance document and return the path."""

    def _write(system: FinancialSystem, name: str = "instance.json") -> Path:
        path = tmp_path / name
        path.write_text(InstanceDocument.from_system(system).model_dump_json(indent=2), encoding="utf-8")
        return path

    return _write


@pytest.fixture
def runner() -> CliRunner:
    return CliRunner()
