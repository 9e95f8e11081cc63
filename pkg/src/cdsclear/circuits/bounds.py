"""
Interval bounds on every gate of a circuit for inputs in the unit cube.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from cdsclear.circuits.model import Circuit, GateKind

Interval = tuple[Fraction, Fraction]

_SQRT_SLACK = Fraction(1, 2**40)


def _sqrt_down(value: Fraction) -> Fraction:
    if value <= 0:
        return Fraction(0)
    scale = 2**64
    return Fraction(math.isqrt(math.floor(value * scale * scale)), scale)


def _sqrt_up(value: Fraction) -> Fraction:
    if value <= 0:
        return Fraction(0)
    return _sqrt_down(value) + _SQRT_SLACK


def _product(a: Interval, b: Interval) -> Interval:
    corners = [a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]]
    return min(corners), max(corners)


def _absdiff(a: Interval, b: Interval) -> Interval:
    lo, hi = a[0] - b[1], a[1] - b[0]
    if lo >= 0:
        return lo, hi
    if hi <= 0:
        return -hi, -lo
    return Fraction(0), max(-lo, hi)


@dataclass(frozen=True)
class SignalBound:
    """Per-gate intervals and the smallest ``d`` with every magnitude below ``2**(2**d)``."""

    intervals: dict[str, Interval]
    d: int

    @property
    def magnitude(self) -> Fraction:
        return max((max(abs(lo), abs(hi)) for lo, hi in self.intervals.values()), default=Fraction(0))


def exponent_for(magnitude: Fraction) -> int:
    d = 0
    while magnitude >= 2 ** (2**d):
        d += 1
    return d


def signal_bound(circuit: Circuit) -> SignalBound:
    """Interval pass assuming every input lies in [0, 1]."""
    intervals: dict[str, Interval] = {}
    for gate in circuit.gates:
        ops = [intervals[o] for o in gate.operands]
        kind = gate.kind
        if kind is GateKind.INPUT:
            bound = (Fraction(0), Fraction(1))
        elif kind is GateKind.CONST:
            bound = (gate.constant, gate.constant)
        elif kind is GateKind.ADD:
            bound = (ops[0][0] + ops[1][0], ops[0][1] + ops[1][1])
        elif kind is GateKind.SUB:
            bound = (ops[0][0] - ops[1][1], ops[0][1] - ops[1][0])
        elif kind is GateKind.MUL:
            bound = _product(ops[0], ops[1])
        elif kind is GateKind.MAX:
            bound = (max(ops[0][0], ops[1][0]), max(ops[0][1], ops[1][1]))
        elif kind is GateKind.MIN:
            bound = (min(ops[0][0], ops[1][0]), min(ops[0][1], ops[1][1]))
        elif kind is GateKind.ABSDIFF:
            bound = _absdiff(ops[0], ops[1])
        elif kind is GateKind.SQRT:
            bound = (_sqrt_down(ops[0][0]), _sqrt_up(ops[0][1]))
        elif kind in (GateKind.SCALE, GateKind.GUARDED_SCALE):
            bound = (gate.constant * ops[0][0], gate.constant * ops[0][1])
        else:
            bound = (2 * ops[0][0], 2 * ops[0][1])
        intervals[gate.id] = bound
    result = SignalBound(intervals, 0)
    return SignalBound(intervals, exponent_for(result.magnitude))
