"""
The fragment catalog: twelve small contract patterns and their arithmetic
coefficient variants.

Every fragment has a start node and an end node. Chaining fragments
identifies the end node of one with the start node of the next, so a cycle
of fragments is a ring of shared boundary banks with a few private banks
hanging off each link. Banks labelled ``c``, ``c1`` and ``c2`` serve only
as CDS references and are grounded to recovery rate 0 when emitted.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from cdsclear.core.system import Contract
from cdsclear.exceptions import UnknownFragment

START = "1"
HALF = Fraction(1, 2)
ONE = Fraction(1)
TWO = Fraction(2)


class FragmentClass(str, Enum):
    G1 = "g1"
    G2 = "g2"
    G3 = "g3"
    D = "d"


class Family(str, Enum):
    G1A = "g1a"
    G1B = "g1b"
    G1C = "g1c"
    G1D = "g1d"
    G2A = "g2a"
    G2B = "g2b"
    G2C = "g2c"
    G2D = "g2d"
    G3A = "g3a"
    G3B = "g3b"
    D1 = "d1"
    D2 = "d2"

    @property
    def fragment_class(self) -> FragmentClass:
        return FragmentClass(self.value[:1] if self.value.startswith("d") else self.value[:2])

    @property
    def letter(self) -> str:
        """``a``..``d`` for g fragments, ``1``/``2`` for d fragments."""
        return self.value[-1]

    @property
    def base(self) -> Family:
        """The ``a`` member of the same class (``d1`` for d fragments)."""
        if self.fragment_class is FragmentClass.D:
            return Family.D1
        return Family(f"{self.fragment_class.value}a")


class Variant(str, Enum):
    """Coefficient assignment: none yet, prime or double prime."""

    BASE = ""
    PRIME = "'"
    DOUBLE_PRIME = "''"


# Start nodes that write a CDS instead of owing a debt.
_CDS_START = frozenset({Family.G1C, Family.G1D, Family.G2C, Family.G2D, Family.G3B, Family.D2})


@dataclass(frozen=True)
class FragmentKind:
    """One catalog entry together with its coefficient variant."""

    family: Family
    variant: Variant = Variant.BASE

    def __post_init__(self) -> None:
        object.__setattr__(self, "family", Family(self.family))
        object.__setattr__(self, "variant", Variant(self.variant))
        if self.family.fragment_class is FragmentClass.D and self.variant is Variant.DOUBLE_PRIME:
            raise UnknownFragment(f"{self.family.value} has no double-prime variant")

    @property
    def name(self) -> str:
        return f"{self.family.value}{self.variant.value}"

    def __str__(self) -> str:
        return self.name

    @property
    def fragment_class(self) -> FragmentClass:
        return self.family.fragment_class

    @property
    def is_arithmetic(self) -> bool:
        return self.variant is not Variant.BASE

    @property
    def degenerate(self) -> bool:
        """True when the start node writes a CDS and owes no debt."""
        return self.family in _CDS_START

    @property
    def end(self) -> str:
        return END_NODE[self.fragment_class]

    def with_variant(self, variant: Variant) -> FragmentKind:
        return FragmentKind(self.family, variant)

    def with_family(self, family: Family) -> FragmentKind:
        return FragmentKind(family, self.variant)


END_NODE = {
    FragmentClass.G1: "5",
    FragmentClass.G2: "5",
    FragmentClass.G3: "4",
    FragmentClass.D: "2",
}

_PRIMES = {"''": Variant.DOUBLE_PRIME, "″": Variant.DOUBLE_PRIME, "'": Variant.PRIME, "′": Variant.PRIME}


def parse_fragment(token: str) -> FragmentKind:
    """Parse ``g1a``, ``g1a'`` or ``g1a''`` (the typographic primes also work).

    Raises:
        UnknownFragment: If the name is not in the catalog.
    """
    text = token.strip().lower()
    variant = Variant.BASE
    for suffix, tagged in _PRIMES.items():
        if text.endswith(suffix):
            text, variant = text[: -len(suffix)], tagged
            break
    try:
        family = Family(text)
    except ValueError:
        raise UnknownFragment(f"unknown fragment {token!r}") from None
    return FragmentKind(family, variant)


# =============================================================================
# Concrete layouts
# =============================================================================

@dataclass(frozen=True)
class FragmentLayout:
    """The banks and contracts of one fragment, in local node labels.

    Attributes:
        kind: The fragment.
        start: Label of the start node.
        end: Label of the end node.
        assets: External assets by local label; missing labels hold none.
        contracts: Contracts over local labels.
        grounded: Reference-only labels that must clear at rate 0.
    """

    kind: FragmentKind
    start: str
    end: str
    assets: dict[str, Fraction] = field(default_factory=dict)
    contracts: tuple[Contract, ...] = ()
    grounded: tuple[str, ...] = ()

    @property
    def nodes(self) -> tuple[str, ...]:
        seen: dict[str, None] = {self.start: None}
        for contract in self.contracts:
            for bank in contract.participants():
                seen.setdefault(bank)
        seen.setdefault(self.end)
        return tuple(seen)

    @property
    def internal(self) -> tuple[str, ...]:
        return tuple(n for n in self.nodes if n not in (self.start, self.end))


def _leg(debtor: str, creditor: str, notional: Fraction, reference: str | None) -> Contract:
    return Contract(debtor, creditor, notional, reference)


def fragment_layout(kind: FragmentKind) -> FragmentLayout:
    """Contracts and coefficients of ``kind``.

    Base fragments carry unit notionals and no external assets. Prime
    variants add the coefficients under which a g1 maps the start rate
    ``r`` to ``(1 - r) / (2 - r)`` at its end node and a g2 maps it to
    ``1 / (3 - r)``. Double-prime variants double the notional owed by the
    start node, which is what a g3 in front of them expects.
    """
    family = kind.family
    cls = family.fragment_class
    arithmetic = kind.is_arithmetic
    lead = TWO if kind.variant is Variant.DOUBLE_PRIME else ONE
    end = END_NODE[cls]
    letter = family.letter

    # (start leg reference, second leg reference) per letter
    refs = {"a": (None, None), "b": (None, "c"), "c": ("c", None), "d": ("c1", "c2")}
    assets: dict[str, Fraction] = {}
    contracts: list[Contract] = []

    if cls is FragmentClass.G1:
        first, second = refs[letter]
        contracts.append(_leg(START, "4", lead, first))
        contracts.append(_leg("2", end, ONE, START))
        contracts.append(_leg("2", "3", ONE, second))
        if arithmetic:
            assets["2"] = ONE
    elif cls is FragmentClass.G2:
        first, second = refs[letter]
        contracts.append(_leg(START, "4", lead, first))
        contracts.append(_leg("2", "3", ONE, START))
        contracts.append(_leg("2", end, TWO if arithmetic else ONE, second))
        if arithmetic:
            assets["2"] = HALF
    elif cls is FragmentClass.G3:
        first = "c" if letter == "b" else None
        contracts.append(_leg(START, "2", lead, first))
        contracts.append(_leg(end, "3", ONE, START))
        if arithmetic:
            assets[end] = ONE
    else:
        first = "c" if letter == "2" else None
        contracts.append(_leg(START, end, ONE, first))

    grounded = tuple(sorted({c.reference for c in contracts if c.reference not in (None, START)}))
    return FragmentLayout(kind, START, end, assets, tuple(contracts), grounded)


CATALOG: tuple[FragmentKind, ...] = tuple(FragmentKind(f) for f in Family)
