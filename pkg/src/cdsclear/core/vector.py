"""
Recovery-rate vectors with an explicit numeric mode.
"""
from __future__ import annotations

from collections.abc import Iterator, Mapping, Sequence
from dataclasses import dataclass
from typing import TYPE_CHECKING

from cdsclear.core.numbers import Number, NumericMode, coerce, format_number, mode_of, promote
from cdsclear.exceptions import UnknownBank

if TYPE_CHECKING:
    from cdsclear.core.system import FinancialSystem


@dataclass(frozen=True, eq=False)
class RecoveryVector:
    """Bank id -> recovery rate in [0, 1], all values in one numeric mode."""

    values: Mapping[str, Number]
    mode: NumericMode

    def __post_init__(self) -> None:
        values = {str(k): coerce(v, self.mode) for k, v in self.values.items()}
        for bank_id, value in values.items():
            if value < 0 or value > 1:
                raise ValueError(f"recovery rate of {bank_id} outside [0, 1]: {format_number(value)}")
        object.__setattr__(self, "values", values)

    @classmethod
    def of(cls, values: Mapping[str, object], mode: NumericMode | None = None) -> RecoveryVector:
        """Build a vector, inferring the narrowest mode that holds every value."""
        if mode is None:
            mode = promote(NumericMode.RATIONAL, *(mode_of(v) for v in values.values()))
        return cls(dict(values), mode)

    @classmethod
    def from_sequence(
        cls, system: FinancialSystem, values: Sequence[object], mode: NumericMode | None = None
    ) -> RecoveryVector:
        """Build a vector from values listed in bank order."""
        if len(values) != system.size:
            raise ValueError(f"expected {system.size} values, got {len(values)}")
        return cls.of(dict(zip(system.bank_ids, values)), mode)

    @classmethod
    def constant(cls, system: FinancialSystem, value: object, mode: NumericMode = NumericMode.RATIONAL) -> RecoveryVector:
        return cls({bank_id: value for bank_id in system.bank_ids}, mode)

    def __getitem__(self, bank_id: str) -> Number:
        try:
            return self.values[bank_id]
        except KeyError:
            raise UnknownBank(f"recovery vector has no rate for bank {bank_id!r}") from None

    def __iter__(self) -> Iterator[str]:
        return iter(self.values)

    def __len__(self) -> int:
        return len(self.values)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RecoveryVector):
            return NotImplemented
        return self.values.keys() == other.values.keys() and all(
            self.values[k] == other.values[k] for k in self.values
        )

    __hash__ = None  # type: ignore[assignment]

    def as_tuple(self, order: Sequence[str] | None = None) -> tuple[Number, ...]:
        """Values in ``order`` (default: insertion order)."""
        keys = order if order is not None else list(self.values)
        return tuple(self[k] for k in keys)

    def to_mode(self, mode: NumericMode) -> RecoveryVector:
        return RecoveryVector(self.values, mode)

    def restrict(self, bank_ids: Sequence[str]) -> RecoveryVector:
        return RecoveryVector({k: self[k] for k in bank_ids}, self.mode)

    def render(self, order: Sequence[str] | None = None) -> str:
        """``(v1, v2, ...)`` with exact values written exactly."""
        return "(" + ", ".join(format_number(v) for v in self.as_tuple(order)) + ")"
