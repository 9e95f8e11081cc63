"""
Fragment strings and cycles.
"""
from __future__ import annotations

import re
from collections.abc import Iterator, Sequence
from dataclasses import dataclass

from cdsclear.exceptions import AlreadyClosed, UnknownFragment
from cdsclear.fragments.catalog import FragmentKind, parse_fragment


@dataclass(frozen=True)
class FragmentString:
    """Fragments chained end node to start node.

    A closed string also identifies the end node of its last fragment with
    the start node of its first; the first fragment is stored once.
    """

    fragments: tuple[FragmentKind, ...]
    closed: bool = False

    def __post_init__(self) -> None:
        if not self.fragments:
            raise ValueError("a fragment string needs at least one fragment")
        object.__setattr__(self, "fragments", tuple(self.fragments))

    def __len__(self) -> int:
        return len(self.fragments)

    def __iter__(self) -> Iterator[FragmentKind]:
        return iter(self.fragments)

    def __getitem__(self, position: int) -> FragmentKind:
        return self.fragments[position]

    @property
    def is_arithmetic(self) -> bool:
        return all(f.is_arithmetic for f in self.fragments)

    @property
    def degenerate(self) -> tuple[FragmentKind, ...]:
        return tuple(f for f in self.fragments if f.degenerate)

    def follower(self, position: int) -> FragmentKind | None:
        """The fragment after ``position``; None past the end of an open string."""
        if position + 1 < len(self.fragments):
            return self.fragments[position + 1]
        return self.fragments[0] if self.closed else None

    def predecessor(self, position: int) -> FragmentKind | None:
        if position > 0:
            return self.fragments[position - 1]
        return self.fragments[-1] if self.closed else None

    def replaced(self, fragments: Sequence[FragmentKind]) -> FragmentString:
        return FragmentString(tuple(fragments), self.closed)

    @property
    def name(self) -> str:
        """Dotted form, e.g. ``g1a.g2b.d1.d2``."""
        return ".".join(f.name for f in self.fragments)

    def render(self) -> str:
        """Symbolic form; a cycle repeats its marked first fragment at the end."""
        body = " ".join(f.name for f in self.fragments)
        if not self.closed:
            return body
        first = f"*{self.fragments[0].name}"
        return " ".join([first, *(f.name for f in self.fragments[1:]), first])

    def __str__(self) -> str:
        return self.render()


FragmentCycle = FragmentString


def fragment_string(*fragments: FragmentKind | str) -> FragmentString:
    """An open string from kinds or names."""
    return FragmentString(tuple(_kind(f) for f in fragments))


def _kind(fragment: FragmentKind | str) -> FragmentKind:
    return fragment if isinstance(fragment, FragmentKind) else parse_fragment(fragment)


def _as_string(part: FragmentString | FragmentKind | str) -> FragmentString:
    if isinstance(part, FragmentString):
        return part
    return fragment_string(part)


def merge(a: FragmentString | FragmentKind | str, b: FragmentString | FragmentKind | str) -> FragmentString:
    """Identify the end node of ``a`` with the start node of ``b``.

    Raises:
        AlreadyClosed: If either operand is a closed cycle.
    """
    left, right = _as_string(a), _as_string(b)
    if left.closed or right.closed:
        raise AlreadyClosed("cannot merge a closed fragment cycle")
    return FragmentString(left.fragments + right.fragments)


def close_cycle(string: FragmentString) -> FragmentString:
    """Identify the end node of the last fragment with the start node of the first.

    Raises:
        AlreadyClosed: If ``string`` is already a cycle.
    """
    if string.closed:
        raise AlreadyClosed(f"{string} is already closed")
    return FragmentString(string.fragments, closed=True)


_SEPARATORS = re.compile(r"[.\s,]+")


def parse_fragments(text: str, closed: bool = True) -> FragmentString:
    """Parse ``g1a.g2b.d1.d2`` (dots, commas or whitespace between names).

    Raises:
        UnknownFragment: For names outside the catalog or an empty string.
    """
    tokens = [t for t in _SEPARATORS.split(text.strip()) if t]
    if not tokens:
        raise UnknownFragment("empty fragment string")
    return FragmentString(tuple(parse_fragment(t) for t in tokens), closed)
