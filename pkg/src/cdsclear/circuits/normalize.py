"""
Normalization of circuits so that every signal stays in [0, 1].

The pipeline runs these stages in order:

1. negative constants become ``0 - |c|``;
2. max and min become ``(a + b +/- |a - b|) / 2``;
3. every signal s is carried as a pair (s+, s-) of non-negative signals with
   ``s = s+ - s-``, so subtraction disappears from the inner circuit;
4. each output becomes ``|o+ - o-|``;
5. constants and inputs are divided by the largest constant C (when C > 1),
   and products are multiplied back by C with a guarded scale;
6. every signal is multiplied by ``t' = 2**-(1 + 2**d)``, where d bounds the
   magnitudes of the stage-4 circuit, using a sub-circuit that squares 1/2;
7. division by t' after each product and before each output is done by a
   square-root chain: d square roots, doubling, d squarings, doubling.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction

from cdsclear.circuits.bounds import signal_bound
from cdsclear.circuits.model import SOURCE_BASIS, Circuit, CircuitBuilder, GateKind
from cdsclear.exceptions import InvalidCircuit, NotSelfMapping

logger = logging.getLogger(__name__)

HALF = Fraction(1, 2)

Part = str | None


def make_constants_nonnegative(circuit: Circuit) -> Circuit:
    """Rewrite each ``Const(c)`` with ``c < 0`` as ``Const(0) - Const(-c)``, keeping its id."""
    builder = CircuitBuilder()
    for gate in circuit.gates:
        if gate.kind is GateKind.CONST and gate.constant < 0:
            zero = builder.const(0, gate_id=f"{gate.id}.zero")
            magnitude = builder.const(-gate.constant, gate_id=f"{gate.id}.mag")
            builder.sub(zero, magnitude, gate_id=gate.id)
        else:
            builder.copy_gate(gate)
    return builder.build(circuit.outputs)


def eliminate_min_max(circuit: Circuit) -> Circuit:
    """Rewrite max and min through absolute differences, keeping gate ids."""
    builder = CircuitBuilder()
    for gate in circuit.gates:
        if gate.kind not in (GateKind.MAX, GateKind.MIN):
            builder.copy_gate(gate)
            continue
        a, b = gate.operands
        total = builder.add(a, b, gate_id=f"{gate.id}.sum")
        distance = builder.absdiff(a, b, gate_id=f"{gate.id}.dist")
        if gate.kind is GateKind.MAX:
            twice = builder.add(total, distance, gate_id=f"{gate.id}.twice")
        else:
            twice = builder.sub(total, distance, gate_id=f"{gate.id}.twice")
        half = builder.const(HALF, gate_id=f"{gate.id}.half")
        builder.mul(half, twice, gate_id=gate.id)
    return builder.build(circuit.outputs)


# =============================================================================
# Sign splitting
# =============================================================================

@dataclass(frozen=True)
class SignSplit:
    """The split circuit and, for each original gate, its (positive, negative) part gates.

    ``None`` stands for an identically zero part.
    """

    circuit: Circuit
    parts: dict[str, tuple[Part, Part]]


def split_signs(circuit: Circuit) -> SignSplit:
    """Carry each signal as two non-negative parts and end each output with ``|o+ - o-|``.

    Expects a circuit over inputs, non-negative constants, add, sub, mul and
    absdiff.
    """
    builder = CircuitBuilder(prefix="split.")

    def plus(a: Part, b: Part) -> Part:
        if a is None:
            return b
        if b is None:
            return a
        return builder.add(a, b)

    def times(a: Part, b: Part) -> Part:
        if a is None or b is None:
            return None
        return builder.mul(a, b)

    parts: dict[str, tuple[Part, Part]] = {}
    for gate in circuit.gates:
        kind = gate.kind
        if kind is GateKind.INPUT:
            parts[gate.id] = (builder.copy_gate(gate), None)
            continue
        if kind is GateKind.CONST:
            if gate.constant < 0:
                raise InvalidCircuit(f"gate {gate.id}: negative constant left for sign splitting")
            parts[gate.id] = (builder.const(gate.constant), None)
            continue
        if kind not in (GateKind.ADD, GateKind.SUB, GateKind.MUL, GateKind.ABSDIFF):
            raise InvalidCircuit(f"gate {gate.id}: {kind.value} cannot be sign-split")
        (ap, an), (bp, bn) = (parts[o] for o in gate.operands)
        if kind is GateKind.ADD:
            parts[gate.id] = (plus(ap, bp), plus(an, bn))
        elif kind is GateKind.SUB:
            parts[gate.id] = (plus(ap, bn), plus(an, bp))
        elif kind is GateKind.MUL:
            parts[gate.id] = (
                plus(times(ap, bp), times(an, bn)),
                plus(times(ap, bn), times(an, bp)),
            )
        else:
            left, right = plus(ap, bn), plus(an, bp)
            if left is None or right is None:
                parts[gate.id] = (left if right is None else right, None)
            else:
                parts[gate.id] = (builder.absdiff(left, right), None)

    outputs = []
    for output in circuit.outputs:
        pos, neg = parts[output]
        if pos is None and neg is None:
            outputs.append(builder.const(0))
        elif neg is None:
            outputs.append(pos)
        elif pos is None:
            # the output is provably <= 0; on a self-map it is identically 0
            outputs.append(builder.absdiff(neg, builder.const(0)))
        else:
            outputs.append(builder.absdiff(pos, neg))
    return SignSplit(builder.build(outputs), parts)


# =============================================================================
# Range reduction
# =============================================================================

def divide_by_t(builder: CircuitBuilder, gate_id: str, d: int) -> str:
    """Multiply a signal by ``2**(1 + 2**d)`` using square roots and squarings."""
    current = gate_id
    for _ in range(d):
        current = builder.sqrt(current)
    current = builder.double(current)
    for _ in range(d):
        current = builder.mul(current, current)
    return builder.double(current)


def t_prime(builder: CircuitBuilder, d: int) -> str:
    """Sub-circuit computing ``2**-(1 + 2**d)`` from the constant 1/2."""
    current = builder.const(HALF)
    for _ in range(d):
        current = builder.mul(current, current)
    return builder.mul(current, builder.const(HALF))


def reduce_range(circuit: Circuit, d: int) -> Circuit:
    """Scale constants below 1 and carry every signal multiplied by ``t'``.

    Expects the output of :func:`split_signs`; ``d`` must bound its signal
    magnitudes (``|s| < 2**(2**d)``).
    """
    constants = [g.constant for g in circuit.gates if g.kind is GateKind.CONST]
    largest = max(constants, default=Fraction(0))
    scaled = largest > 1
    shrink = 1 / largest if scaled else Fraction(1)

    builder = CircuitBuilder(prefix="norm.")
    t = t_prime(builder, d)
    mapped: dict[str, str] = {}
    for gate in circuit.gates:
        kind = gate.kind
        if kind is GateKind.INPUT:
            source = builder.copy_gate(gate)
            if scaled:
                source = builder.scale(shrink, source)
            mapped[gate.id] = builder.mul(t, source)
        elif kind is GateKind.CONST:
            mapped[gate.id] = builder.mul(t, builder.const(gate.constant * shrink))
        elif kind is GateKind.ADD:
            mapped[gate.id] = builder.add(*(mapped[o] for o in gate.operands))
        elif kind is GateKind.ABSDIFF:
            mapped[gate.id] = builder.absdiff(*(mapped[o] for o in gate.operands))
        elif kind is GateKind.MUL:
            product = builder.mul(*(mapped[o] for o in gate.operands))
            if scaled:
                product = builder.guarded_scale(largest, product)
            # t'^2 * s  ->  t' * s
            mapped[gate.id] = divide_by_t(builder, product, d)
        else:
            raise InvalidCircuit(f"gate {gate.id}: {kind.value} is not expected after sign splitting")

    outputs = []
    for output in circuit.outputs:
        value = mapped[output]
        if scaled:
            value = builder.guarded_scale(largest, value)
        outputs.append(divide_by_t(builder, value, d))
    return builder.build(outputs).pruned()


def normalize_pipeline(circuit: Circuit) -> Circuit:
    """Run all normalization stages.

    Raises:
        InvalidCircuit: If the circuit uses gates outside +, -, *, max, min
            and constants.
        NotSelfMapping: If the interval pass shows some output always
            leaves [0, 1].
    """
    extra = circuit.kinds() - SOURCE_BASIS
    if extra:
        raise InvalidCircuit(
            "normalization expects +, -, *, max, min and constants; found "
            + ", ".join(sorted(k.value for k in extra))
        )
    bound = signal_bound(circuit)
    for output in circuit.outputs:
        lo, hi = bound.intervals[output]
        if hi < 0 or lo > 1:
            raise NotSelfMapping(f"output {output} ranges over [{lo}, {hi}], outside [0, 1]")

    split = split_signs(eliminate_min_max(make_constants_nonnegative(circuit)))
    d = signal_bound(split.circuit).d
    normalized = reduce_range(split.circuit, d)
    logger.debug(
        "normalized %d gates into %d (d=%d)", len(circuit.gates), len(normalized.gates), d
    )
    return normalized
