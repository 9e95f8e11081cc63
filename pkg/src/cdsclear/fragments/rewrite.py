"""
Coefficient assignment, transfer maps and the four rewriting rules.

All statements assume that grounded reference banks (``c``, ``c1``, ``c2``)
clear at rate 0. Two strings are equivalent when the rate of their end node
is the same function of the rate of their start node; every rule below
replaces a piece of a string by an equivalent piece.
"""
from __future__ import annotations

import logging

from cdsclear.exceptions import ContextMismatch, G3FollowedByG3OrD, RuleNotApplicable
from cdsclear.fragments.catalog import Family, FragmentClass, FragmentKind, Variant
from cdsclear.fragments.cycle import FragmentString
from cdsclear.fragments.moebius import G1_TRANSFER, G2_TRANSFER, IDENTITY, MoebiusTransform, compose

logger = logging.getLogger(__name__)

G_CLASSES = (FragmentClass.G1, FragmentClass.G2, FragmentClass.G3)


def assign_arithmetic(string: FragmentString) -> FragmentString:
    """Give every fragment its coefficient variant.

    Fragments right after a g3 become double prime, all others prime.
    Existing variants are overwritten.

    Raises:
        G3FollowedByG3OrD: If a g3 is followed by another g3 or by a d
            fragment.
    """
    assigned = []
    for position, kind in enumerate(string):
        follower = string.follower(position)
        if kind.fragment_class is FragmentClass.G3 and follower is not None:
            if follower.fragment_class in (FragmentClass.G3, FragmentClass.D):
                raise G3FollowedByG3OrD(
                    f"{kind.family.value} at position {position} is followed by {follower.family.value}"
                )
        predecessor = string.predecessor(position)
        after_g3 = predecessor is not None and predecessor.fragment_class is FragmentClass.G3
        assigned.append(kind.with_variant(Variant.DOUBLE_PRIME if after_g3 else Variant.PRIME))
    return string.replaced(assigned)


# =============================================================================
# Transfer maps
# =============================================================================

def transfer_map(kind: FragmentKind, follower: FragmentKind | None = None) -> MoebiusTransform:
    """Rate of the end node of ``kind`` as a function of the rate of its start node.

    ``follower`` is the next fragment, whose start node is ``kind``'s end
    node; None stands for an end node that owes a single unit debt.

    Raises:
        ContextMismatch: If a variant is missing or the follower is not one
            for which the end rate is known.
    """
    if not kind.is_arithmetic or (follower is not None and not follower.is_arithmetic):
        raise ContextMismatch(f"{kind} -> {follower}: assign coefficients first")
    unit_follower = follower is None or follower.variant is Variant.PRIME
    cls = kind.fragment_class

    if cls is FragmentClass.G3:
        if follower is not None and follower.variant is Variant.DOUBLE_PRIME and follower.fragment_class in G_CLASSES:
            return G2_TRANSFER
    elif unit_follower:
        if cls is FragmentClass.G1:
            return G1_TRANSFER
        if cls is FragmentClass.G2:
            return G2_TRANSFER
        return IDENTITY
    raise ContextMismatch(f"no transfer map for {kind} followed by {follower if follower else 'a unit debt'}")


def string_transfer(string: FragmentString) -> MoebiusTransform:
    """Composed transfer map from the first start node to the last end node.

    For a cycle this maps the rate of the first start node onto itself, so
    its fixed points are the candidate clearing rates of that node.
    """
    return compose(transfer_map(kind, string.follower(i)) for i, kind in enumerate(string))


# =============================================================================
# Rewriting rules
# =============================================================================

def _check_position(string: FragmentString, position: int) -> FragmentKind:
    if not 0 <= position < len(string):
        raise RuleNotApplicable(f"no fragment at position {position} of {string.name}")
    return string[position]


def _is(kind: FragmentKind | None, family: Family, variant: Variant) -> bool:
    return kind is not None and kind.family is family and kind.variant is variant


def apply_rule0(string: FragmentString, position: int) -> FragmentString:
    """Replace a primed g fragment by the ``a`` fragment of its class."""
    kind = _check_position(string, position)
    if kind.fragment_class not in G_CLASSES or not kind.is_arithmetic or kind.family.letter == "a":
        raise RuleNotApplicable(f"rule 0 needs a primed b/c/d g fragment, found {kind}")
    fragments = list(string)
    fragments[position] = kind.with_family(kind.family.base)
    return string.replaced(fragments)


_RULE1_FOLLOWERS = {Family.G1A, Family.G2A, Family.G3A, Family.D1, Family.D2}


def apply_rule1(string: FragmentString, position: int) -> FragmentString:
    """Replace g2a' (g2a'') by g1a' g1a' (g1a'' g1a') ahead of a unit follower."""
    kind = _check_position(string, position)
    follower = string.follower(position)
    if kind.family is not Family.G2A or not kind.is_arithmetic:
        raise RuleNotApplicable(f"rule 1 needs g2a' or g2a'', found {kind}")
    if follower is None or follower.family not in _RULE1_FOLLOWERS or follower.variant is not Variant.PRIME:
        raise RuleNotApplicable(f"rule 1 does not apply before {follower}")
    fragments = list(string)
    fragments[position : position + 1] = [
        FragmentKind(Family.G1A, kind.variant),
        FragmentKind(Family.G1A, Variant.PRIME),
    ]
    return string.replaced(fragments)


def apply_rule2(string: FragmentString, position: int) -> FragmentString:
    """Replace g3a' g_i^a'' (or g3a'' g_i^a'') by g2a' g_i^a'."""
    kind = _check_position(string, position)
    follower = string.follower(position)
    if kind.family is not Family.G3A or not kind.is_arithmetic:
        raise RuleNotApplicable(f"rule 2 needs g3a' or g3a'', found {kind}")
    if (
        follower is None
        or follower.fragment_class not in G_CLASSES
        or follower.family.letter != "a"
        or follower.variant is not Variant.DOUBLE_PRIME
    ):
        raise RuleNotApplicable(f"rule 2 does not apply before {follower}")
    fragments = list(string)
    fragments[position] = FragmentKind(Family.G2A, kind.variant)
    fragments[(position + 1) % len(fragments)] = follower.with_variant(Variant.PRIME)
    return string.replaced(fragments)


def apply_rule3(string: FragmentString, position: int) -> FragmentString:
    """Drop a d1' or d2'; it passes its start rate through unchanged."""
    kind = _check_position(string, position)
    if kind.fragment_class is not FragmentClass.D or not kind.is_arithmetic:
        raise RuleNotApplicable(f"rule 3 needs d1' or d2', found {kind}")
    if len(string) == 1:
        raise RuleNotApplicable("cannot remove the only fragment")
    fragments = list(string)
    del fragments[position]
    return string.replaced(fragments)


RULES = {0: apply_rule0, 1: apply_rule1, 2: apply_rule2, 3: apply_rule3}


def rewrite(string: FragmentString, rule: int, position: int) -> FragmentString:
    """Apply one rule at one position.

    Raises:
        RuleNotApplicable: If the rule does not match there.
    """
    try:
        apply = RULES[rule]
    except KeyError:
        raise RuleNotApplicable(f"no rule {rule}") from None
    result = apply(string, position)
    logger.debug("rule %d at %d: %s => %s", rule, position, string.name, result.name)
    return result


def _first_match(string: FragmentString, rule: int) -> int | None:
    for position in range(len(string)):
        try:
            RULES[rule](string, position)
        except RuleNotApplicable:
            continue
        return position
    return None


def rewrite_to_canonical(string: FragmentString) -> FragmentString:
    """Apply rules 0, 3, 2 and 1, each until it no longer matches.

    A cycle of g fragments ends up as copies of g1a'. Unassigned strings
    get their coefficients first.

    Raises:
        G3FollowedByG3OrD: If coefficients cannot be assigned.
    """
    current = string if string.is_arithmetic else assign_arithmetic(string)
    for rule in (0, 3, 2, 1):
        while (position := _first_match(current, rule)) is not None:
            current = rewrite(current, rule, position)
    return current
