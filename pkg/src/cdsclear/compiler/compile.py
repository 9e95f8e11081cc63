"""
Compilation of normalized circuits into financial systems.

Every gate becomes one gadget instance. Gate values that are read more than
once are copied through trees of duplication gadgets, and each read is a
unit debt from a copy to the consumer's input port. Finally the bank
carrying output j gets a unit debt to the input bank of x_j, so the rates
of the input banks at a clearing vector form a fixed point of the circuit.
"""
from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass, field
from fractions import Fraction

from cdsclear.circuits.evaluate import eval_gates
from cdsclear.circuits.model import Circuit, Gate, GateKind
from cdsclear.compiler.builder import NetworkBuilder
from cdsclear.compiler.gadgets import GadgetKind, GadgetTemplate, Placement, instantiate_gadget, place
from cdsclear.core.clearing import check_nondegenerate
from cdsclear.core.numbers import Number, NumericMode, as_rational
from cdsclear.core.system import FinancialSystem
from cdsclear.exceptions import DegenerateOutput, ModeMismatch, NotNormalized

logger = logging.getLogger(__name__)

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class PortMap:
    """Where each gate of a compiled circuit lives in the financial system.

    Attributes:
        gates: Gate id -> every bank of its gadget instance, including the
            duplication tree that fans its value out.
        results: Gate id -> the gadget's output bank.
        inputs: Input bank of x_j, for every j.
        outputs: Bank whose unit debt feeds output j back into ``inputs[j]``.
        pinned: Square-root gate id -> the two banks whose rates, once
            planted, determine every other rate of its gadget.
    """

    gates: dict[str, tuple[str, ...]]
    results: dict[str, str]
    inputs: tuple[str, ...]
    outputs: tuple[str, ...]
    pinned: dict[str, tuple[str, ...]] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "gates": {g: list(banks) for g, banks in self.gates.items()},
            "results": dict(self.results),
            "inputs": list(self.inputs),
            "outputs": list(self.outputs),
            "pinned": {g: list(banks) for g, banks in self.pinned.items()},
        }


_GADGET_OF = {
    GateKind.CONST: GadgetKind.CONST_SOURCE,
    GateKind.ADD: GadgetKind.ADD,
    GateKind.MUL: GadgetKind.MUL,
    GateKind.ABSDIFF: GadgetKind.ABS_DIFF,
    GateKind.SQRT: GadgetKind.SQRT,
    GateKind.SCALE: GadgetKind.SCALE_CONST,
    GateKind.DOUBLE: GadgetKind.DOUBLE,
    GateKind.GUARDED_SCALE: GadgetKind.SCALE_RATIONAL_GUARDED,
}


class _Compiler:
    def __init__(self, circuit: Circuit) -> None:
        self.circuit = circuit
        self.net = NetworkBuilder()
        self.fanout = circuit.fanout()
        self.copies: dict[str, list[str]] = {}
        self.gates: dict[str, list[str]] = {}
        self.results: dict[str, str] = {}
        self.pinned: dict[str, tuple[str, ...]] = {}
        self._templates: dict[tuple[GadgetKind, tuple[Fraction, ...]], GadgetTemplate] = {}

    def template(self, kind: GadgetKind, params: tuple[Fraction, ...] = ()) -> GadgetTemplate:
        key = (kind, params)
        if key not in self._templates:
            self._templates[key] = instantiate_gadget(kind, params)
        return self._templates[key]

    def place(self, owner: str, kind: GadgetKind, params: tuple[Fraction, ...], label: str) -> Placement:
        placed = place(self.net, self.template(kind, params), f"{owner}/{label}")
        self.gates[owner].extend(placed.banks)
        return placed

    def fan_out(self, gate_id: str, source: str) -> None:
        count = self.fanout[gate_id]
        if count == 0:
            self.gates[gate_id].append(self.net.sink(source, prefix=f"{gate_id}/sink"))
            self.copies[gate_id] = []
            return
        copies = [source]
        n = 0
        while len(copies) < count:
            dup = self.place(gate_id, GadgetKind.DUP, (Fraction(1),), f"fan{n}")
            self.net.debt(copies.pop(), dup.inputs[0])
            copies.extend(dup.outputs)
            n += 1
        self.copies[gate_id] = copies

    def read(self, gate_id: str) -> str:
        return self.copies[gate_id].pop(0)

    def compile_gate(self, gate: Gate) -> None:
        self.gates[gate.id] = []
        if gate.kind is GateKind.INPUT:
            bank = self.net.bank(f"x{gate.index}")
            self.gates[gate.id].append(bank)
            self.results[gate.id] = bank
            self.fan_out(gate.id, bank)
            return

        kind = _GADGET_OF[gate.kind]
        params = () if gate.constant is None else (gate.constant,)
        if gate.kind is GateKind.ADD:
            params = (Fraction(2),)
        placed = self.place(gate.id, kind, params, kind.value)
        for operand, port in zip(gate.operands, placed.inputs):
            self.net.debt(self.read(operand), port)

        if gate.kind is GateKind.SCALE:
            # the first output of a scaling gadget repeats its input
            self.gates[gate.id].append(self.net.sink(placed.outputs[0], prefix=f"{gate.id}/sink"))
            result = placed.outputs[1]
        else:
            result = placed.outputs[0]
        if gate.kind is GateKind.SQRT:
            self.pinned[gate.id] = (placed.rename["n10"], placed.rename["n14"])
        self.results[gate.id] = result
        self.fan_out(gate.id, result)

    def close_loop(self) -> tuple[str, ...]:
        outputs = []
        for j, gate_id in enumerate(self.circuit.outputs):
            source = self.read(gate_id)
            target = f"x{j}"
            if source == target:
                relay = self.net.bank(f"relay{j}")
                self.gates[gate_id].append(relay)
                self.net.debt(source, relay)
                source = relay
            self.net.debt(source, target)
            outputs.append(source)
        return tuple(outputs)


def compile_circuit(circuit: Circuit) -> tuple[FinancialSystem, PortMap]:
    """Translate a normalized circuit into a financial system.

    Raises:
        NotNormalized: If the circuit uses gates or constants outside the
            normalized basis.
        DegenerateOutput: If the result fails the non-degeneracy conditions
            or some input bank does not owe exactly 1.
    """
    if not circuit.is_normalized:
        extra = sorted(k.value for k in circuit.kinds() if k not in _GADGET_OF and k is not GateKind.INPUT)
        detail = f"gates {', '.join(extra)}" if extra else "constants outside [0, 1]"
        raise NotNormalized(f"circuit is not normalized: {detail}")

    compiler = _Compiler(circuit)
    for gate in circuit.gates:
        compiler.compile_gate(gate)
    outputs = compiler.close_loop()
    system = compiler.net.build()

    inputs = tuple(f"x{j}" for j in range(circuit.arity))
    for bank in inputs:
        owed = compiler.net.liabilities(bank)
        if owed != 1:
            raise DegenerateOutput(f"input bank {bank} owes {owed}, expected 1")
    report = check_nondegenerate(system)
    if not report.ok:
        raise DegenerateOutput(
            "compiled system is degenerate: "
            + ", ".join(f"{bank} ({condition.value})" for bank, condition in report.violations)
        )

    portmap = PortMap(
        gates={g: tuple(banks) for g, banks in compiler.gates.items()},
        results=compiler.results,
        inputs=inputs,
        outputs=outputs,
        pinned=compiler.pinned,
    )
    logger.debug("compiled %d gates into %d banks", len(circuit.gates), system.size)
    return system, portmap


def planted_rates(
    circuit: Circuit,
    portmap: PortMap,
    x: Sequence[object],
    mode: NumericMode = NumericMode.FLOAT,
) -> dict[str, Number]:
    """Rates to plant on a compiled system for the point ``x``.

    Input banks get ``x``; the two pinned banks of every square-root
    gadget get ``1 - sqrt(v)`` for the gate's operand value ``v``.
    Propagating from these plants gives a clearing vector exactly when
    ``x`` is a fixed point.

    Raises:
        ModeMismatch: In rational mode, when some square root is irrational.
    """
    values = eval_gates(circuit, x)
    hints: dict[str, Number] = {}
    for j, bank in enumerate(portmap.inputs):
        hints[bank] = _in_mode(values[circuit.inputs[j]], mode)
    for gate_id, banks in portmap.pinned.items():
        root = values[gate_id]
        if mode is NumericMode.FLOAT:
            rate: Number = 1.0 - float(root)
        else:
            rate = 1 - _in_mode(root, mode)
        for bank in banks:
            hints[bank] = rate
    return hints


def _in_mode(value: object, mode: NumericMode) -> Number:
    if mode is NumericMode.FLOAT:
        return float(value)
    if not isinstance(value, Fraction):
        raise ModeMismatch(f"value {value} is not rational")
    return value


def build_squaring_chain(stages: int, seed: object = HALF) -> tuple[FinancialSystem, tuple[str, ...]]:
    """A source bank with assets ``seed`` followed by ``stages`` duplicate-and-multiply steps.

    Returns:
        The system and the output bank of every stage; stage k clears at
        ``seed ** (2 ** k)``.
    """
    if stages < 0:
        raise ValueError(f"stages must be non-negative, got {stages}")
    net = NetworkBuilder()
    current = net.bank("seed", as_rational(seed))
    dup_template = instantiate_gadget(GadgetKind.DUP)
    mul_template = instantiate_gadget(GadgetKind.MUL)
    outputs = []
    for stage in range(stages):
        dup = place(net, dup_template, f"stage{stage}/dup")
        net.debt(current, dup.inputs[0])
        mul = place(net, mul_template, f"stage{stage}/mul")
        for copy, port in zip(dup.outputs, mul.inputs):
            net.debt(copy, port)
        current = mul.outputs[0]
        outputs.append(current)
    net.sink(current)
    return net.build(), tuple(outputs)
