"""
Gadget catalog and the circuit-to-financial-system compiler.
"""
from .builder import NetworkBuilder
from .compile import PortMap, build_squaring_chain, compile_circuit, planted_rates
from .gadgets import DEGENERATE_KINDS, GadgetKind, GadgetTemplate, Placement, instantiate_gadget, place
from .harness import HarnessRun, build_harness, gadget_clearing_check, run_gadget

__all__ = [
    "DEGENERATE_KINDS",
    "GadgetKind",
    "GadgetTemplate",
    "HarnessRun",
    "NetworkBuilder",
    "Placement",
    "PortMap",
    "build_harness",
    "build_squaring_chain",
    "compile_circuit",
    "gadget_clearing_check",
    "instantiate_gadget",
    "place",
    "planted_rates",
    "run_gadget",
]
