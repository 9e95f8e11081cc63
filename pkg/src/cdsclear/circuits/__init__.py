"""
Algebraic circuits, their evaluation, interval bounds and normalization.
"""
from .bounds import SignalBound, signal_bound
from .evaluate import eval_circuit, eval_circuit_batch, eval_gates
from .model import Circuit, CircuitBuilder, Gate, GateKind
from .normalize import (
    SignSplit,
    divide_by_t,
    eliminate_min_max,
    make_constants_nonnegative,
    normalize_pipeline,
    reduce_range,
    split_signs,
)

__all__ = [
    "Circuit",
    "CircuitBuilder",
    "Gate",
    "GateKind",
    "SignSplit",
    "SignalBound",
    "divide_by_t",
    "eliminate_min_max",
    "eval_circuit",
    "eval_circuit_batch",
    "eval_gates",
    "make_constants_nonnegative",
    "normalize_pipeline",
    "reduce_range",
    "signal_bound",
    "split_signs",
]
