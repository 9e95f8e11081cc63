"""
Dedicated CDS debtor check: every CDS debtor owes no debt and writes all its
CDSes on a single reference bank.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from cdsclear.core.system import FinancialSystem

OWES_DEBT = "CDS debtor also owes debt"
SEVERAL_REFERENCES = "CDS debtor writes CDSes on several reference banks"


@dataclass(frozen=True)
class DedicatedReport:
    violations: list[tuple[str, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def check_dedicated_cds_debtor(system: FinancialSystem) -> DedicatedReport:
    references: dict[str, set[str]] = {}
    for contract in system.cdses:
        references.setdefault(contract.debtor, set()).add(contract.reference)
    debtors_with_debt = {c.debtor for c in system.debts if c.notional > 0}

    violations = []
    for bank_id in system.bank_ids:
        if bank_id not in references:
            continue
        if bank_id in debtors_with_debt:
            violations.append((bank_id, OWES_DEBT))
        if len(references[bank_id]) > 1:
            violations.append((bank_id, SEVERAL_REFERENCES))
    return DedicatedReport(violations)
