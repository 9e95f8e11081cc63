"""
Algebraic circuits over rational constants.

A circuit is a DAG of gates listed in topological order. It maps n inputs to
n outputs, so its fixed points can be compared with clearing vectors of the
compiled financial system.
"""
from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import cached_property

from cdsclear.core.numbers import as_rational
from cdsclear.exceptions import InvalidCircuit


class GateKind(str, Enum):
    INPUT = "input"
    CONST = "const"
    ADD = "add"
    SUB = "sub"
    MUL = "mul"
    MAX = "max"
    MIN = "min"
    ABSDIFF = "absdiff"
    SQRT = "sqrt"
    # produced by normalization only
    SCALE = "scale"
    DOUBLE = "double"
    GUARDED_SCALE = "guarded_scale"


ARITY = {
    GateKind.INPUT: 0,
    GateKind.CONST: 0,
    GateKind.ADD: 2,
    GateKind.SUB: 2,
    GateKind.MUL: 2,
    GateKind.MAX: 2,
    GateKind.MIN: 2,
    GateKind.ABSDIFF: 2,
    GateKind.SQRT: 1,
    GateKind.SCALE: 1,
    GateKind.DOUBLE: 1,
    GateKind.GUARDED_SCALE: 1,
}

PARAMETRIC = frozenset({GateKind.CONST, GateKind.SCALE, GateKind.GUARDED_SCALE})
SOURCE_BASIS = frozenset(
    {GateKind.INPUT, GateKind.CONST, GateKind.ADD, GateKind.SUB, GateKind.MUL, GateKind.MAX, GateKind.MIN}
)
NORMALIZED_BASIS = frozenset(
    {
        GateKind.INPUT,
        GateKind.CONST,
        GateKind.ADD,
        GateKind.MUL,
        GateKind.ABSDIFF,
        GateKind.SQRT,
        GateKind.SCALE,
        GateKind.DOUBLE,
        GateKind.GUARDED_SCALE,
    }
)


@dataclass(frozen=True)
class Gate:
    """One gate.

    ``constant`` holds the value of a Const gate, the factor ``c`` in [0, 1]
    of a Scale gate and the factor ``q > 1`` of a GuardedScale gate.
    ``index`` is the position of an Input gate.
    """

    id: str
    kind: GateKind
    operands: tuple[str, ...] = ()
    constant: Fraction | None = None
    index: int | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", GateKind(self.kind))
        object.__setattr__(self, "operands", tuple(self.operands))
        if len(self.operands) != ARITY[self.kind]:
            raise InvalidCircuit(
                f"gate {self.id}: {self.kind.value} takes {ARITY[self.kind]} operands, got {len(self.operands)}"
            )
        if self.kind in PARAMETRIC:
            if self.constant is None:
                raise InvalidCircuit(f"gate {self.id}: {self.kind.value} needs a constant")
            object.__setattr__(self, "constant", as_rational(self.constant))
        if self.kind is GateKind.SCALE and not 0 <= self.constant <= 1:
            raise InvalidCircuit(f"gate {self.id}: scale factor {self.constant} outside [0, 1]")
        if self.kind is GateKind.GUARDED_SCALE and self.constant <= 1:
            raise InvalidCircuit(f"gate {self.id}: guarded scale factor {self.constant} must exceed 1")
        if self.kind is GateKind.INPUT and self.index is None:
            raise InvalidCircuit(f"gate {self.id}: input gate without index")


@dataclass(frozen=True)
class Circuit:
    """Gates in topological order plus the ids of the output gates."""

    gates: tuple[Gate, ...]
    outputs: tuple[str, ...]
    inputs: tuple[str, ...] = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "gates", tuple(self.gates))
        object.__setattr__(self, "outputs", tuple(self.outputs))
        seen: set[str] = set()
        inputs: dict[int, str] = {}
        for gate in self.gates:
            if gate.id in seen:
                raise InvalidCircuit(f"duplicate gate id {gate.id!r}")
            for operand in gate.operands:
                if operand not in seen:
                    raise InvalidCircuit(f"gate {gate.id} reads {operand!r} before it is defined")
            seen.add(gate.id)
            if gate.kind is GateKind.INPUT:
                if gate.index in inputs:
                    raise InvalidCircuit(f"two input gates with index {gate.index}")
                inputs[gate.index] = gate.id
        if sorted(inputs) != list(range(len(inputs))):
            raise InvalidCircuit(f"input indices must be 0..{len(inputs) - 1}")
        for output in self.outputs:
            if output not in seen:
                raise InvalidCircuit(f"unknown output gate {output!r}")
        if len(self.outputs) != len(inputs):
            raise InvalidCircuit(f"{len(inputs)} inputs but {len(self.outputs)} outputs")
        object.__setattr__(self, "inputs", tuple(inputs[i] for i in range(len(inputs))))

    @property
    def arity(self) -> int:
        return len(self.inputs)

    @cached_property
    def by_id(self) -> dict[str, Gate]:
        return {gate.id: gate for gate in self.gates}

    def gate(self, gate_id: str) -> Gate:
        try:
            return self.by_id[gate_id]
        except KeyError:
            raise InvalidCircuit(f"unknown gate {gate_id!r}") from None

    def kinds(self) -> set[GateKind]:
        return {gate.kind for gate in self.gates}

    @property
    def is_normalized(self) -> bool:
        """Only normalized gate kinds and all constants in [0, 1]."""
        return self.kinds() <= NORMALIZED_BASIS and all(
            0 <= gate.constant <= 1 for gate in self.gates if gate.kind is GateKind.CONST
        )

    def fanout(self) -> dict[str, int]:
        """Number of reads of each gate, outputs included."""
        counts = {gate.id: 0 for gate in self.gates}
        for gate in self.gates:
            for operand in gate.operands:
                counts[operand] += 1
        for output in self.outputs:
            counts[output] += 1
        return counts

    def pruned(self) -> Circuit:
        """Drop gates that no output depends on (inputs are always kept)."""
        live = set(self.outputs)
        for gate in reversed(self.gates):
            if gate.id in live:
                live.update(gate.operands)
        keep = [g for g in self.gates if g.id in live or g.kind is GateKind.INPUT]
        return Circuit(tuple(keep), self.outputs)


class CircuitBuilder:
    """Append gates one at a time; ids default to ``<prefix><counter>``."""

    def __init__(self, prefix: str = "g"):
        self._prefix = prefix
        self._gates: list[Gate] = []
        self._ids: set[str] = set()
        self._inputs = 0
        self._counter = 0

    def _fresh(self) -> str:
        while True:
            gate_id = f"{self._prefix}{self._counter}"
            self._counter += 1
            if gate_id not in self._ids:
                return gate_id

    def add_gate(
        self,
        kind: GateKind,
        operands: Sequence[str] = (),
        constant: object = None,
        gate_id: str | None = None,
        index: int | None = None,
    ) -> str:
        gate_id = gate_id or self._fresh()
        if gate_id in self._ids:
            raise InvalidCircuit(f"duplicate gate id {gate_id!r}")
        value = None if constant is None else as_rational(constant)
        self._gates.append(Gate(gate_id, kind, tuple(operands), value, index))
        self._ids.add(gate_id)
        return gate_id

    def copy_gate(self, gate: Gate, operands: Sequence[str] | None = None) -> str:
        return self.add_gate(
            gate.kind,
            gate.operands if operands is None else operands,
            gate.constant,
            gate.id,
            gate.index,
        )

    def input(self, gate_id: str | None = None) -> str:
        index = self._inputs
        self._inputs += 1
        return self.add_gate(GateKind.INPUT, gate_id=gate_id, index=index)

    def const(self, value: object, gate_id: str | None = None) -> str:
        return self.add_gate(GateKind.CONST, constant=value, gate_id=gate_id)

    def add(self, a: str, b: str, gate_id: str | None = None) -> str:
        return self.add_gate(GateKind.ADD, (a, b), gate_id=gate_id)

    def sub(self, a: str, b: str, gate_id: str | None = None) -> str:
        return self.add_gate(GateKind.SUB, (a, b), gate_id=gate_id)

    def mul(self, a: str, b: str, gate_id: str | None = None) -> str:
        return self.add_gate(GateKind.MUL, (a, b), gate_id=gate_id)

    def max(self, a: str, b: str, gate_id: str | None = None) -> str:
        return self.add_gate(GateKind.MAX, (a, b), gate_id=gate_id)

    def min(self, a: str, b: str, gate_id: str | None = None) -> str:
        return self.add_gate(GateKind.MIN, (a, b), gate_id=gate_id)

    def absdiff(self, a: str, b: str, gate_id: str | None = None) -> str:
        return self.add_gate(GateKind.ABSDIFF, (a, b), gate_id=gate_id)

    def sqrt(self, a: str, gate_id: str | None = None) -> str:
        return self.add_gate(GateKind.SQRT, (a,), gate_id=gate_id)

    def scale(self, factor: object, a: str, gate_id: str | None = None) -> str:
        return self.add_gate(GateKind.SCALE, (a,), constant=factor, gate_id=gate_id)

    def double(self, a: str, gate_id: str | None = None) -> str:
        return self.add_gate(GateKind.DOUBLE, (a,), gate_id=gate_id)

    def guarded_scale(self, factor: object, a: str, gate_id: str | None = None) -> str:
        return self.add_gate(GateKind.GUARDED_SCALE, (a,), constant=factor, gate_id=gate_id)

    def build(self, outputs: Iterable[str]) -> Circuit:
        return Circuit(tuple(self._gates), tuple(outputs))
