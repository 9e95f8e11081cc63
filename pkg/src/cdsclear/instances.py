"""
Worked example systems.

Each builder returns a fresh FinancialSystem with banks named by their
position ("1", "2", ...), except where a bank plays a named role.
"""
from __future__ import annotations

from collections.abc import Callable
from fractions import Fraction

from cdsclear.core.numbers import as_rational
from cdsclear.core.system import FinancialSystem

HALF = Fraction(1, 2)


def example_one() -> FinancialSystem:
    """Six banks, two CDSes, clearing at (2/3, 1, 2/3, 1, 1, 1)."""
    return FinancialSystem.create(
        {"1": 1, "2": 0, "3": 0, "4": 1, "5": 0, "6": 1},
        debts=[("1", "2", 1), ("1", "3", HALF), ("3", "5", HALF), ("4", "6", HALF)],
        cds=[("2", "4", "3", Fraction(2, 3)), ("5", "6", "4", 1)],
    )


def irrational_pair() -> FinancialSystem:
    """Two CDSes referencing each other's chains; every clearing vector has r_2 = 1 - sqrt(2)/2."""
    return FinancialSystem.create(
        {str(i): (HALF if i in (2, 7) else 0) for i in range(1, 9)},
        debts=[("2", "3", 1), ("3", "4", 1), ("6", "5", 1), ("7", "6", 1)],
        cds=[("2", "1", "6", 1), ("7", "8", "3", 1)],
    )


def weak_vs_exact(eps: object = Fraction(1, 100)) -> FinancialSystem:
    """Exact fixed point (1, 1, 1, 1, 0, 1) next to a far-away weak approximation.

    For ``eps`` in (0, 1/4], the point ``(1, 1 - 2 eps, 1, 1, 1/2 + eps, 1)``
    has clearing residual ``eps`` yet lies more than 1/2 away from the
    exact fixed point.
    """
    eps = as_rational(eps)
    if not 0 < eps <= Fraction(1, 4):
        raise ValueError(f"eps must lie in (0, 1/4], got {eps}")
    return FinancialSystem.create(
        {"1": 1, "2": 0, "3": 0, "4": 1, "5": 0, "6": 0},
        debts=[("2", "3", HALF), ("5", "6", 4 * eps)],
        cds=[("1", "2", "5", 1), ("4", "5", "2", 1)],
    )


def weak_vs_exact_point(eps: object = Fraction(1, 100)) -> tuple[Fraction, ...]:
    """The weakly ``eps``-approximate point of :func:`weak_vs_exact`, in bank order."""
    eps = as_rational(eps)
    return (Fraction(1), 1 - 2 * eps, Fraction(1), Fraction(1), HALF + eps, Fraction(1))


def weak_cycle() -> FinancialSystem:
    """A weakly but not strongly switched cycle 1 -> 2 -> 3 -> R with r_R = (3 - sqrt 5)/2.

    Bank 2 owes a unit debt to bank 4 so that its rate equals its inflow.
    """
    return FinancialSystem.create(
        {"1": 1, "2": 0, "3": 1, "R": 0, "4": 0},
        debts=[("1", "4", 2), ("R", "4", 2), ("2", "4", 1)],
        cds=[("1", "2", "R", 1), ("3", "R", "2", 1)],
    )


INSTANCES: dict[str, Callable[[], FinancialSystem]] = {
    "example-one": example_one,
    "irrational-pair": irrational_pair,
    "weak-vs-exact": weak_vs_exact,
    "weak-cycle": weak_cycle,
}
