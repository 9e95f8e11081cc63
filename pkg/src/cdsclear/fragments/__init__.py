"""
Fragment algebra: catalog, strings and cycles, rewriting, closed forms and
emission of irrational instances.
"""
from .catalog import CATALOG, Family, FragmentClass, FragmentKind, FragmentLayout, Variant, fragment_layout, parse_fragment
from .closed_form import fibonacci, fibonacci_map, fibonacci_rate, solve_cycle_closed_form
from .cycle import FragmentCycle, FragmentString, close_cycle, fragment_string, merge, parse_fragments
from .emit import boundary_bank, emit_financial_system
from .moebius import G1_TRANSFER, G2_TRANSFER, IDENTITY, MoebiusTransform, compose
from .rewrite import (
    apply_rule0,
    apply_rule1,
    apply_rule2,
    apply_rule3,
    assign_arithmetic,
    rewrite,
    rewrite_to_canonical,
    string_transfer,
    transfer_map,
)

__all__ = [
    "CATALOG",
    "G1_TRANSFER",
    "G2_TRANSFER",
    "IDENTITY",
    "Family",
    "FragmentClass",
    "FragmentCycle",
    "FragmentKind",
    "FragmentLayout",
    "FragmentString",
    "MoebiusTransform",
    "Variant",
    "apply_rule0",
    "apply_rule1",
    "apply_rule2",
    "apply_rule3",
    "assign_arithmetic",
    "boundary_bank",
    "close_cycle",
    "compose",
    "emit_financial_system",
    "fibonacci",
    "fibonacci_map",
    "fibonacci_rate",
    "fragment_layout",
    "fragment_string",
    "merge",
    "parse_fragment",
    "parse_fragments",
    "rewrite",
    "rewrite_to_canonical",
    "solve_cycle_closed_form",
    "string_transfer",
    "transfer_map",
]
