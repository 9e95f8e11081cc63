"""
The financial system data model: banks with external assets, debt contracts
and credit default swaps.
"""
from __future__ import annotations

import logging
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import numpy as np

from cdsclear.core.numbers import as_rational
from cdsclear.exceptions import MalformedContract, UnknownBank

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Bank:
    """A bank and its external assets."""

    id: str
    external_assets: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "id", str(self.id))
        assets = as_rational(self.external_assets)
        if assets < 0:
            raise ValueError(f"bank {self.id}: external assets must be non-negative, got {assets}")
        object.__setattr__(self, "external_assets", assets)


@dataclass(frozen=True)
class Contract:
    """A debt contract (no reference) or a CDS on ``reference``."""

    debtor: str
    creditor: str
    notional: Fraction
    reference: str | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "debtor", str(self.debtor))
        object.__setattr__(self, "creditor", str(self.creditor))
        if self.reference is not None:
            object.__setattr__(self, "reference", str(self.reference))
        if len(set(self.participants())) != len(self.participants()):
            raise MalformedContract(f"{self.label()}: participants must be distinct")
        notional = as_rational(self.notional)
        if notional < 0:
            raise MalformedContract(f"{self.label()}: negative notional {notional}")
        object.__setattr__(self, "notional", notional)

    @property
    def is_cds(self) -> bool:
        return self.reference is not None

    @property
    def key(self) -> tuple[str, str, str | None]:
        return (self.debtor, self.creditor, self.reference)

    def participants(self) -> tuple[str, ...]:
        if self.reference is None:
            return (self.debtor, self.creditor)
        return (self.debtor, self.creditor, self.reference)

    def label(self) -> str:
        if self.reference is None:
            return f"debt {self.debtor}->{self.creditor}"
        return f"CDS ({self.debtor},{self.creditor},{self.reference})"


@dataclass(frozen=True)
class ContractArrays:
    """Dense index arrays of a system, used by float-mode evaluation."""

    debtor: np.ndarray
    creditor: np.ndarray
    reference: np.ndarray
    notional: np.ndarray
    assets: np.ndarray

    @property
    def is_cds(self) -> np.ndarray:
        return self.reference >= 0


@dataclass(frozen=True)
class FinancialSystem:
    """Banks (in input order) and the contracts between them.

    Bank ids are opaque strings; their position in ``banks`` is the dense
    index used for every deterministic ordering in the package.
    """

    banks: tuple[Bank, ...]
    contracts: tuple[Contract, ...] = field(default=())

    def __post_init__(self) -> None:
        object.__setattr__(self, "banks", tuple(self.banks))
        object.__setattr__(self, "contracts", tuple(self.contracts))
        seen: set[str] = set()
        for bank in self.banks:
            if bank.id in seen:
                raise ValueError(f"duplicate bank id {bank.id!r}")
            seen.add(bank.id)
        for contract in self.contracts:
            for bank_id in contract.participants():
                if bank_id not in seen:
                    raise UnknownBank(f"{contract.label()} names unknown bank {bank_id!r}")

    @classmethod
    def create(
        cls,
        banks: Mapping[str, object] | Iterable[str],
        debts: Iterable[tuple[object, object, object]] = (),
        cds: Iterable[tuple[object, object, object, object]] = (),
    ) -> FinancialSystem:
        """Build a system from plain values.

        Args:
            banks: Mapping bank id -> external assets, or bank ids (assets 0).
            debts: ``(debtor, creditor, notional)`` triples.
            cds: ``(debtor, creditor, reference, notional)`` quadruples.
        """
        if isinstance(banks, Mapping):
            bank_list = [Bank(str(k), as_rational(v)) for k, v in banks.items()]
        else:
            bank_list = [Bank(str(k)) for k in banks]
        contracts = [Contract(str(d), str(c), as_rational(n)) for d, c, n in debts]
        contracts += [Contract(str(d), str(c), as_rational(n), str(r)) for d, c, r, n in cds]
        return cls(tuple(bank_list), tuple(contracts))

    # ------------------------------------------------------------------
    # lookups
    # ------------------------------------------------------------------

    @cached_property
    def index(self) -> dict[str, int]:
        return {bank.id: i for i, bank in enumerate(self.banks)}

    @property
    def bank_ids(self) -> tuple[str, ...]:
        return tuple(bank.id for bank in self.banks)

    @property
    def size(self) -> int:
        return len(self.banks)

    def position(self, bank_id: str) -> int:
        try:
            return self.index[bank_id]
        except KeyError:
            raise UnknownBank(f"unknown bank {bank_id!r}") from None

    def external_assets(self, bank_id: str) -> Fraction:
        return self.banks[self.position(bank_id)].external_assets

    @cached_property
    def outgoing(self) -> dict[str, tuple[Contract, ...]]:
        table: dict[str, list[Contract]] = {bank.id: [] for bank in self.banks}
        for contract in self.contracts:
            table[contract.debtor].append(contract)
        return {k: tuple(v) for k, v in table.items()}

    @cached_property
    def incoming(self) -> dict[str, tuple[Contract, ...]]:
        table: dict[str, list[Contract]] = {bank.id: [] for bank in self.banks}
        for contract in self.contracts:
            table[contract.creditor].append(contract)
        return {k: tuple(v) for k, v in table.items()}

    @property
    def debts(self) -> tuple[Contract, ...]:
        return tuple(c for c in self.contracts if not c.is_cds)

    @property
    def cdses(self) -> tuple[Contract, ...]:
        return tuple(c for c in self.contracts if c.is_cds)

    @cached_property
    def arrays(self) -> ContractArrays:
        idx = self.index
        return ContractArrays(
            debtor=np.array([idx[c.debtor] for c in self.contracts], dtype=np.int64),
            creditor=np.array([idx[c.creditor] for c in self.contracts], dtype=np.int64),
            reference=np.array(
                [idx[c.reference] if c.reference is not None else -1 for c in self.contracts],
                dtype=np.int64,
            ),
            notional=np.array([float(c.notional) for c in self.contracts], dtype=float),
            assets=np.array([float(b.external_assets) for b in self.banks], dtype=float),
        )

    # ------------------------------------------------------------------
    # derived systems
    # ------------------------------------------------------------------

    def with_assets(self, assets: Mapping[str, Fraction]) -> FinancialSystem:
        """Copy with external assets replaced for the given banks."""
        banks = tuple(
            Bank(b.id, assets[b.id]) if b.id in assets else b for b in self.banks
        )
        return FinancialSystem(banks, self.contracts)


def normalize_system(system: FinancialSystem) -> FinancialSystem:
    """Merge duplicate contracts and drop zero notionals.

    Contracts on the same ordered pair (debts) or triple (CDSes) are merged by
    summing their notionals, keeping the position of the first occurrence.
    Participant distinctness is already enforced by ``Contract``.
    """
    merged: dict[tuple[str, str, str | None], Fraction] = {}
    for contract in system.contracts:
        merged[contract.key] = merged.get(contract.key, Fraction(0)) + contract.notional

    contracts = tuple(
        Contract(debtor, creditor, notional, reference)
        for (debtor, creditor, reference), notional in merged.items()
        if notional > 0
    )
    if len(contracts) != len(system.contracts):
        logger.debug("normalized %d contracts into %d", len(system.contracts), len(contracts))
    return FinancialSystem(system.banks, contracts)
