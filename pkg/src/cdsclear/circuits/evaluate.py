"""
Circuit evaluation: exact rationals (switching to mpmath after irrational
square roots) and vectorised floats.
"""
from __future__ import annotations

import math
from collections.abc import Sequence
from fractions import Fraction

import mpmath
import numpy as np

from cdsclear.circuits.model import Circuit, GateKind
from cdsclear.config import get_settings
from cdsclear.core.numbers import as_rational
from cdsclear.exceptions import InvalidCircuit, NegativeSqrtOperand

Value = Fraction | mpmath.mpf


def _mpf(value: Value) -> mpmath.mpf:
    if isinstance(value, Fraction):
        return mpmath.mpf(value.numerator) / value.denominator
    return value


def _lift(a: Value, b: Value) -> tuple[Value, Value]:
    if isinstance(a, Fraction) and isinstance(b, Fraction):
        return a, b
    return _mpf(a), _mpf(b)


def _exact_root(value: Fraction) -> Fraction | None:
    num, den = value.numerator, value.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None


def _sqrt(value: Value) -> Value:
    if value < 0:
        raise NegativeSqrtOperand(f"square root of negative value {value}")
    if isinstance(value, Fraction):
        root = _exact_root(value)
        if root is not None:
            return root
    return mpmath.sqrt(_mpf(value))


def eval_gates(circuit: Circuit, x: Sequence[object], digits: int | None = None) -> dict[str, Value]:
    """Value of every gate at input ``x``.

    Values stay exact Fractions until a square root of a non-square
    rational appears; from then on the affected signals are mpmath floats
    at ``digits`` significant digits.

    Raises:
        InvalidCircuit: If ``x`` has the wrong length.
        NegativeSqrtOperand: If a Sqrt gate reads a negative value.
    """
    if len(x) != circuit.arity:
        raise InvalidCircuit(f"circuit takes {circuit.arity} inputs, got {len(x)}")
    digits = digits or get_settings().precision_digits
    point = [v if isinstance(v, mpmath.mpf) else as_rational(v) for v in x]
    values: dict[str, Value] = {}
    with mpmath.workdps(digits):
        for gate in circuit.gates:
            ops = [values[o] for o in gate.operands]
            kind = gate.kind
            if kind is GateKind.INPUT:
                result = point[gate.index]
            elif kind is GateKind.CONST:
                result = gate.constant
            elif kind is GateKind.SQRT:
                result = _sqrt(ops[0])
            elif kind in (GateKind.SCALE, GateKind.GUARDED_SCALE):
                a, c = _lift(ops[0], gate.constant)
                result = c * a
            elif kind is GateKind.DOUBLE:
                result = 2 * ops[0]
            else:
                a, b = _lift(ops[0], ops[1])
                if kind is GateKind.ADD:
                    result = a + b
                elif kind is GateKind.SUB:
                    result = a - b
                elif kind is GateKind.MUL:
                    result = a * b
                elif kind is GateKind.MAX:
                    result = max(a, b)
                elif kind is GateKind.MIN:
                    result = min(a, b)
                else:
                    result = abs(a - b)
            values[gate.id] = result
    return values


def eval_circuit(circuit: Circuit, x: Sequence[object], digits: int | None = None) -> list[Value]:
    """Output values of ``circuit`` at ``x``."""
    values = eval_gates(circuit, x, digits)
    return [values[o] for o in circuit.outputs]


def eval_circuit_batch(circuit: Circuit, xs: np.ndarray) -> np.ndarray:
    """Evaluate at many points at once in float64.

    Args:
        circuit: The circuit.
        xs: Shape ``(m, n)``, or ``(m,)`` for single-input circuits.

    Returns:
        Shape ``(m, n)`` array of outputs (``(m,)`` when ``xs`` was 1-D).

    Raises:
        NegativeSqrtOperand: If some Sqrt gate reads a value below zero.
    """
    xs = np.asarray(xs, dtype=float)
    flat = xs.ndim == 1
    if flat:
        xs = xs[:, None]
    if xs.shape[1] != circuit.arity:
        raise InvalidCircuit(f"circuit takes {circuit.arity} inputs, got {xs.shape[1]}")

    values: dict[str, np.ndarray] = {}
    for gate in circuit.gates:
        ops = [values[o] for o in gate.operands]
        kind = gate.kind
        if kind is GateKind.INPUT:
            result = xs[:, gate.index]
        elif kind is GateKind.CONST:
            result = np.full(xs.shape[0], float(gate.constant))
        elif kind is GateKind.SQRT:
            if np.any(ops[0] < 0):
                raise NegativeSqrtOperand(f"gate {gate.id}: square root of a negative value")
            result = np.sqrt(ops[0])
        elif kind in (GateKind.SCALE, GateKind.GUARDED_SCALE):
            result = float(gate.constant) * ops[0]
        elif kind is GateKind.DOUBLE:
            result = 2.0 * ops[0]
        elif kind is GateKind.ADD:
            result = ops[0] + ops[1]
        elif kind is GateKind.SUB:
            result = ops[0] - ops[1]
        elif kind is GateKind.MUL:
            result = ops[0] * ops[1]
        elif kind is GateKind.MAX:
            result = np.maximum(ops[0], ops[1])
        elif kind is GateKind.MIN:
            result = np.minimum(ops[0], ops[1])
        else:
            result = np.abs(ops[0] - ops[1])
        values[gate.id] = result

    out = np.stack([values[o] for o in circuit.outputs], axis=1)
    return out[:, 0] if flat and circuit.arity == 1 else out
