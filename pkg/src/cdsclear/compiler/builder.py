"""
Incremental construction of financial systems with scoped bank names.
"""
from __future__ import annotations

from fractions import Fraction

from cdsclear.core.numbers import as_rational
from cdsclear.core.system import Bank, Contract, FinancialSystem
from cdsclear.exceptions import MalformedContract

ONE = Fraction(1)


class NetworkBuilder:
    """Collect banks and contracts in insertion order."""

    def __init__(self) -> None:
        self._assets: dict[str, Fraction] = {}
        self._contracts: list[Contract] = []
        self._sinks = 0

    def __contains__(self, bank_id: str) -> bool:
        return bank_id in self._assets

    def bank(self, bank_id: str, assets: object = 0) -> str:
        if bank_id in self._assets:
            raise MalformedContract(f"bank {bank_id!r} declared twice")
        self._assets[bank_id] = as_rational(assets)
        return bank_id

    def ensure(self, bank_id: str) -> str:
        if bank_id not in self._assets:
            self._assets[bank_id] = Fraction(0)
        return bank_id

    def debt(self, debtor: str, creditor: str, notional: object = ONE) -> None:
        self._contracts.append(Contract(debtor, creditor, as_rational(notional)))

    def cds(self, debtor: str, creditor: str, reference: str, notional: object = ONE) -> None:
        self._contracts.append(Contract(debtor, creditor, as_rational(notional), reference))

    def sink(self, source: str, prefix: str = "sink") -> str:
        """Give ``source`` a unit debt to a fresh bank, so its rate equals its inflow."""
        while f"{prefix}{self._sinks}" in self._assets:
            self._sinks += 1
        sink = self.bank(f"{prefix}{self._sinks}")
        self._sinks += 1
        self.debt(source, sink)
        return sink

    def liabilities(self, bank_id: str) -> Fraction:
        return sum((c.notional for c in self._contracts if c.debtor == bank_id), Fraction(0))

    def add_system(self, system: FinancialSystem, prefix: str = "") -> dict[str, str]:
        """Copy every bank and contract of ``system``, prefixing ids; return the renaming."""
        rename = {b.id: f"{prefix}{b.id}" for b in system.banks}
        for bank in system.banks:
            self.bank(rename[bank.id], bank.external_assets)
        for contract in system.contracts:
            self._contracts.append(
                Contract(
                    rename[contract.debtor],
                    rename[contract.creditor],
                    contract.notional,
                    None if contract.reference is None else rename[contract.reference],
                )
            )
        return rename

    def build(self) -> FinancialSystem:
        banks = tuple(Bank(b, e) for b, e in self._assets.items())
        return FinancialSystem(banks, tuple(self._contracts))
