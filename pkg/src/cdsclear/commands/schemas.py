"""
Pydantic documents for the files the command line reads and writes.

Rationals travel as strings (``"2/3"``, ``"0.25"``, ``"7"``) and are parsed
exactly; they are written back in ``p/q`` form.
"""
from __future__ import annotations

from fractions import Fraction

from pydantic import BaseModel, Field, field_validator

from cdsclear.circuits.model import Circuit, Gate, GateKind
from cdsclear.core.numbers import Number, NumericMode, as_rational, format_number
from cdsclear.core.system import Bank, Contract, FinancialSystem, normalize_system
from cdsclear.core.vector import RecoveryVector


def _rational_text(value: object) -> str:
    if isinstance(value, str):
        value = value.strip()
    return format_number(as_rational(value))


class BankEntry(BaseModel):
    """One bank of an instance file."""

    id: str = Field(description="Bank id")
    external_assets: str = Field(default="0", description="External assets as an exact rational")

    @field_validator("id", mode="before")
    @classmethod
    def _id_text(cls, value: object) -> str:
        return str(value)

    @field_validator("external_assets", mode="before")
    @classmethod
    def _exact(cls, value: object) -> str:
        return _rational_text(value)


class ContractEntry(BaseModel):
    """A debt contract, or a CDS when ``reference`` is set."""

    debtor: str = Field(description="Bank that pays")
    creditor: str = Field(description="Bank that is paid")
    notional: str = Field(description="Face value as an exact rational")
    reference: str | None = Field(default=None, description="Reference bank of a CDS")

    @field_validator("debtor", "creditor", "reference", mode="before")
    @classmethod
    def _id_text(cls, value: object) -> str | None:
        return None if value is None else str(value)

    @field_validator("notional", mode="before")
    @classmethod
    def _exact(cls, value: object) -> str:
        return _rational_text(value)


class InstanceDocument(BaseModel):
    """A financial system: banks with external assets plus contracts."""

    banks: list[BankEntry] = Field(description="Banks in index order")
    contracts: list[ContractEntry] = Field(default_factory=list, description="Debt and CDS contracts")

    @classmethod
    def from_system(cls, system: FinancialSystem) -> InstanceDocument:
        return cls(
            banks=[BankEntry(id=b.id, external_assets=format_number(b.external_assets)) for b in system.banks],
            contracts=[
                ContractEntry(
                    debtor=c.debtor,
                    creditor=c.creditor,
                    notional=format_number(c.notional),
                    reference=c.reference,
                )
                for c in system.contracts
            ],
        )

    def to_system(self) -> FinancialSystem:
        """The normalized system: duplicate contracts merged, zero notionals dropped."""
        banks = tuple(Bank(b.id, as_rational(b.external_assets)) for b in self.banks)
        contracts = tuple(
            Contract(c.debtor, c.creditor, as_rational(c.notional), c.reference) for c in self.contracts
        )
        return normalize_system(FinancialSystem(banks, contracts))


class VectorDocument(BaseModel):
    """Bank id -> recovery rate; exact strings or decimal numbers."""

    rates: dict[str, str] = Field(description="Recovery rate per bank")

    @field_validator("rates", mode="before")
    @classmethod
    def _texts(cls, value: object) -> dict[str, str]:
        if not isinstance(value, dict):
            raise ValueError("rates must be a mapping from bank id to rate")
        return {str(k): v if isinstance(v, str) else repr(v) for k, v in value.items()}

    def to_vector(self, mode: NumericMode | None = None) -> RecoveryVector:
        if mode is NumericMode.FLOAT:
            return RecoveryVector({k: float(v) for k, v in self.rates.items()}, NumericMode.FLOAT)
        return RecoveryVector({k: as_rational(v) for k, v in self.rates.items()}, NumericMode.RATIONAL)

    @classmethod
    def from_vector(cls, vector: RecoveryVector) -> VectorDocument:
        return cls(rates={k: _vector_text(v) for k, v in vector.values.items()})


def _vector_text(value: Number) -> str:
    if isinstance(value, float):
        return repr(value)
    return format_number(value)


class GateEntry(BaseModel):
    id: str = Field(description="Gate id")
    kind: GateKind = Field(description="Gate kind")
    operands: list[str] = Field(default_factory=list, description="Operand gate ids")
    constant: str | None = Field(default=None, description="Constant of const/scale gates")
    index: int | None = Field(default=None, description="Position of an input gate")

    @field_validator("constant", mode="before")
    @classmethod
    def _exact(cls, value: object) -> str | None:
        return None if value is None else _rational_text(value)


class CircuitDocument(BaseModel):
    """Gates in topological order and the output gate ids."""

    gates: list[GateEntry] = Field(description="Gates in topological order")
    outputs: list[str] = Field(description="Output gate ids, one per input")

    @classmethod
    def from_circuit(cls, circuit: Circuit) -> CircuitDocument:
        return cls(
            gates=[
                GateEntry(
                    id=g.id,
                    kind=g.kind,
                    operands=list(g.operands),
                    constant=None if g.constant is None else format_number(g.constant),
                    index=g.index,
                )
                for g in circuit.gates
            ],
            outputs=list(circuit.outputs),
        )

    def to_circuit(self) -> Circuit:
        gates = tuple(
            Gate(
                g.id,
                g.kind,
                tuple(g.operands),
                None if g.constant is None else Fraction(g.constant),
                g.index,
            )
            for g in self.gates
        )
        return Circuit(gates, tuple(self.outputs))


class PortMapDocument(BaseModel):
    """Where the gates of a compiled circuit live in the emitted system."""

    gates: dict[str, list[str]] = Field(description="Gate id -> banks of its gadget")
    results: dict[str, str] = Field(description="Gate id -> bank carrying its value")
    inputs: list[str] = Field(description="Input bank per circuit input")
    outputs: list[str] = Field(description="Bank feeding each output back to its input")
    pinned: dict[str, list[str]] = Field(default_factory=dict, description="Square-root gate -> planted banks")
