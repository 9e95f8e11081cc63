"""
Tests for circuit construction, evaluation, interval bounds and normalization.
"""
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cdsclear.circuits import (
    Circuit,
    CircuitBuilder,
    Gate,
    GateKind,
    eval_circuit,
    eval_circuit_batch,
    normalize_pipeline,
    signal_bound,
)
from cdsclear.exceptions import InvalidCircuit, NegativeSqrtOperand, NotSelfMapping


def one_minus_x() -> Circuit:
    b = CircuitBuilder()
    x = b.input("x")
    one = b.const(1, "one")
    return b.build([b.sub(one, x, "out")])


def square() -> Circuit:
    b = CircuitBuilder()
    x = b.input("x")
    return b.build([b.mul(x, x, "out")])


def max_half() -> Circuit:
    b = CircuitBuilder()
    x = b.input("x")
    return b.build([b.max(x, b.const(Fraction(1, 2)))])


def capped_five_x() -> Circuit:
    b = CircuitBuilder()
    x = b.input("x")
    five_x = b.mul(b.const(5), x)
    return b.build([b.min(b.const(1), five_x)])


# =============================================================================
# Model
# =============================================================================


def test_gate_arity_and_constants():
    with pytest.raises(InvalidCircuit):
        Gate("a", GateKind.ADD, ("x",))
    with pytest.raises(InvalidCircuit):
        Gate("c", GateKind.CONST)
    with pytest.raises(InvalidCircuit):
        Gate("s", GateKind.SCALE, ("x",), Fraction(2))
    with pytest.raises(InvalidCircuit):
        Gate("q", GateKind.GUARDED_SCALE, ("x",), Fraction(1))
    with pytest.raises(InvalidCircuit):
        Gate("x", GateKind.INPUT)


def test_circuit_validation():
    x = Gate("x", GateKind.INPUT, index=0)
    with pytest.raises(InvalidCircuit):
        Circuit((Gate("y", GateKind.ADD, ("x", "x")), x), ("y",))
    with pytest.raises(InvalidCircuit):
        Circuit((x, Gate("x", GateKind.CONST, constant=Fraction(1))), ("x",))
    with pytest.raises(InvalidCircuit):
        Circuit((x,), ("x", "x"))
    with pytest.raises(InvalidCircuit):
        Circuit((x,), ("missing",))


def test_builder_ids_and_inputs():
    circuit = one_minus_x()
    assert circuit.inputs == ("x",)
    assert circuit.arity == 1
    assert circuit.kinds() == {GateKind.INPUT, GateKind.CONST, GateKind.SUB}
    assert not circuit.is_normalized
    assert circuit.fanout()["x"] == 1


def test_pruned_drops_dead_gates():
    b = CircuitBuilder()
    x = b.input("x")
    b.const(3, "dead")
    circuit = b.build([x]).pruned()
    assert [g.id for g in circuit.gates] == ["x"]


# =============================================================================
# Evaluation
# =============================================================================


def test_exact_evaluation():
    assert eval_circuit(one_minus_x(), [Fraction(1, 3)]) == [Fraction(2, 3)]
    assert eval_circuit(capped_five_x(), ["1/10"]) == [Fraction(1, 2)]
    assert eval_circuit(capped_five_x(), [1]) == [1]


def test_square_roots_stay_exact_when_possible():
    b = CircuitBuilder()
    x = b.input()
    circuit = b.build([b.sqrt(x)])
    assert eval_circuit(circuit, [Fraction(9, 16)]) == [Fraction(3, 4)]
    (root,) = eval_circuit(circuit, [Fraction(1, 2)])
    assert isinstance(root, mpmath.mpf)
    with mpmath.workdps(50):
        assert abs(root - mpmath.sqrt(2) / 2) < mpmath.mpf(10) ** -40


def test_negative_square_root():
    b = CircuitBuilder()
    x = b.input()
    circuit = b.build([b.sqrt(b.sub(x, b.const(1)))])
    with pytest.raises(NegativeSqrtOperand):
        eval_circuit(circuit, [0])
    with pytest.raises(NegativeSqrtOperand):
        eval_circuit_batch(circuit, np.array([0.0, 0.5]))


def test_batch_evaluation_matches_exact():
    xs = np.linspace(0.0, 1.0, 11)
    out = eval_circuit_batch(capped_five_x(), xs)
    assert out.shape == (11,)
    np.testing.assert_allclose(out, np.minimum(1.0, 5 * xs))


def test_wrong_input_count():
    with pytest.raises(InvalidCircuit):
        eval_circuit(one_minus_x(), [0, 1])


# =============================================================================
# Bounds
# =============================================================================


def test_signal_bound_exponent():
    assert signal_bound(one_minus_x()).d == 0
    assert signal_bound(one_minus_x()).intervals["out"] == (0, 1)
    b = CircuitBuilder()
    x = b.input()
    circuit = b.build([b.mul(b.const(5), x)])
    bound = signal_bound(circuit)
    assert bound.magnitude == 5
    assert bound.d == 2


# =============================================================================
# Normalization
# =============================================================================


def test_normalizing_one_minus_x_is_exact():
    normalized = normalize_pipeline(one_minus_x())
    assert normalized.is_normalized
    assert GateKind.SUB not in normalized.kinds()
    assert eval_circuit(normalized, [Fraction(1, 3)]) == [Fraction(2, 3)]


@settings(max_examples=40, deadline=None)
@given(x=st.fractions(min_value=0, max_value=1, max_denominator=64))
def test_normalized_square_agrees(x):
    normalized = normalize_pipeline(square())
    assert eval_circuit(normalized, [x]) == [x * x]


@pytest.mark.parametrize("x", [Fraction(0), Fraction(1, 4), Fraction(3, 4), Fraction(1)])
def test_normalized_max(x):
    normalized = normalize_pipeline(max_half())
    assert normalized.is_normalized
    assert GateKind.SQRT in normalized.kinds()
    (value,) = eval_circuit(normalized, [x])
    assert abs(float(value) - float(max(x, Fraction(1, 2)))) < 1e-12


@pytest.mark.parametrize("x", [Fraction(0), Fraction(1, 10), Fraction(1, 2), Fraction(1)])
def test_normalized_large_constants(x):
    normalized = normalize_pipeline(capped_five_x())
    assert normalized.is_normalized
    assert GateKind.GUARDED_SCALE in normalized.kinds()
    (value,) = eval_circuit(normalized, [x])
    assert abs(float(value) - float(min(1, 5 * x))) < 1e-12


def test_normalize_rejects_non_self_maps():
    b = CircuitBuilder()
    b.input()
    circuit = b.build([b.const(2)])
    with pytest.raises(NotSelfMapping):
        normalize_pipeline(circuit)


def test_normalize_rejects_sqrt_in_source():
    b = CircuitBuilder()
    x = b.input()
    with pytest.raises(InvalidCircuit):
        normalize_pipeline(b.build([b.sqrt(x)]))
