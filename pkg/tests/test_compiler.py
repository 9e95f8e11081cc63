"""
Tests for the gadget catalog, the isolated harness and circuit compilation.
"""
from fractions import Fraction
from itertools import product

import pytest

from cdsclear.circuits import CircuitBuilder, normalize_pipeline
from cdsclear.compiler import (
    DEGENERATE_KINDS,
    GadgetKind,
    build_squaring_chain,
    compile_circuit,
    gadget_clearing_check,
    instantiate_gadget,
    planted_rates,
    run_gadget,
)
from cdsclear.config import Settings
from cdsclear.core import NumericMode, check_nondegenerate, clearing_residual, is_clearing
from cdsclear.exceptions import (
    DegenerateKindRequiresFlag,
    InvalidParam,
    ModeMismatch,
    NotNormalized,
)
from cdsclear.solvers import propagate_rates, solve_acyclic

GRID = [Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), Fraction(1)]

UNARY = [GadgetKind.INV, GadgetKind.DUP, GadgetKind.DOUBLE, GadgetKind.SQRT]
BINARY = [
    GadgetKind.ADD,
    GadgetKind.POS_SUB,
    GadgetKind.ABS_DIFF,
    GadgetKind.MUL,
    GadgetKind.MAX,
    GadgetKind.MIN,
    GadgetKind.ALT_MUL,
    GadgetKind.DEGENERATE_MUL,
    GadgetKind.DEGENERATE_DIV,
]

# =============================================================================
# Catalog
# =============================================================================


def test_parameters_are_checked():
    with pytest.raises(InvalidParam):
        instantiate_gadget(GadgetKind.SCALE_CONST)
    with pytest.raises(InvalidParam):
        instantiate_gadget(GadgetKind.SCALE_CONST, [Fraction(3, 2)])
    with pytest.raises(InvalidParam):
        instantiate_gadget(GadgetKind.ADD, [Fraction(1, 2)])
    with pytest.raises(InvalidParam):
        instantiate_gadget(GadgetKind.SCALE_RATIONAL_GUARDED, [0])
    with pytest.raises(InvalidParam):
        instantiate_gadget(GadgetKind.INV, [1])


@pytest.mark.parametrize("kind", sorted(DEGENERATE_KINDS))
def test_degenerate_kinds_need_opt_in(kind):
    with pytest.raises(DegenerateKindRequiresFlag):
        instantiate_gadget(kind)
    assert instantiate_gadget(kind, allow_degenerate=True).degenerate


def test_defaults():
    assert instantiate_gadget(GadgetKind.ADD).arity == 2
    assert instantiate_gadget(GadgetKind.ADD, [4]).arity == 4
    assert instantiate_gadget(GadgetKind.DUP).evaluate([Fraction(1, 3)]) == (Fraction(1, 3), Fraction(1, 3))


@pytest.mark.parametrize(
    "kind",
    [GadgetKind.INV, GadgetKind.DUP, GadgetKind.POS_SUB, GadgetKind.MUL, GadgetKind.MAX, GadgetKind.SQRT],
)
def test_regular_gadgets_are_nondegenerate(kind):
    assert check_nondegenerate(instantiate_gadget(kind).system).ok


# =============================================================================
# Harness
# =============================================================================


@pytest.mark.parametrize("kind", UNARY)
@pytest.mark.parametrize("x", GRID)
def test_unary_gadgets(kind, x):
    assert gadget_clearing_check(kind, [x])


@pytest.mark.parametrize("kind", BINARY)
def test_binary_gadgets(kind):
    for a, b in product(GRID, GRID):
        assert gadget_clearing_check(kind, [a, b])


@pytest.mark.parametrize("c", GRID)
def test_constant_gadgets(c):
    assert gadget_clearing_check(GadgetKind.CONST_SOURCE, [], [c])
    assert gadget_clearing_check(GadgetKind.SQRT_CONST, [], [c])
    for x in GRID:
        assert gadget_clearing_check(GadgetKind.SCALE_CONST, [x], [c])


@pytest.mark.parametrize("q", [Fraction(1, 2), Fraction(3, 2), Fraction(3)])
def test_guarded_scaling(q):
    for x in GRID:
        run = run_gadget(GadgetKind.SCALE_RATIONAL_GUARDED, [x], [q])
        assert run.ok
        assert run.observed[0] == min(1, q * x)


def test_square_root_is_planted_and_cross_checked():
    run = run_gadget(GadgetKind.SQRT, [Fraction(1, 2)])
    assert run.solver == "planted"
    assert run.residual == 0
    assert run.ok
    assert abs(float(run.observed[0]) - 0.5**0.5) < 1e-15


def test_alternative_multiplication_taps():
    run = run_gadget(GadgetKind.ALT_MUL, [Fraction(1, 2), Fraction(3, 4)])
    assert run.observed == (Fraction(3, 4), Fraction(3, 8))


def test_degenerate_division_by_zero():
    run = run_gadget(GadgetKind.DEGENERATE_DIV, [Fraction(1, 2), 0])
    assert run.observed == (1,)
    assert run_gadget(GadgetKind.DEGENERATE_DIV, [Fraction(1, 4), Fraction(1, 2)]).observed == (Fraction(1, 2),)


def test_harness_rejects_bad_inputs():
    with pytest.raises(InvalidParam):
        gadget_clearing_check(GadgetKind.INV, [Fraction(3, 2)])
    with pytest.raises(InvalidParam):
        gadget_clearing_check(GadgetKind.INV, [0, 1])


# =============================================================================
# Compilation
# =============================================================================


def one_minus_x():
    b = CircuitBuilder()
    x = b.input()
    return b.build([b.sub(b.const(1), x)])


def square_root_loop():
    b = CircuitBuilder()
    x = b.input()
    return b.build([b.sqrt(x)])


def test_compiled_fixed_point_clears():
    circuit = normalize_pipeline(one_minus_x())
    system, portmap = compile_circuit(circuit)
    assert portmap.inputs == ("x0",)
    assert check_nondegenerate(system).ok

    hints = planted_rates(circuit, portmap, [Fraction(1, 2)], NumericMode.RATIONAL)
    r = propagate_rates(system, hints)
    assert r["x0"] == Fraction(1, 2)
    assert is_clearing(system, r)

    wrong = propagate_rates(system, planted_rates(circuit, portmap, [Fraction(1, 3)], NumericMode.RATIONAL))
    assert clearing_residual(system, wrong) > 0


def test_compiled_square_root_loop():
    circuit = square_root_loop()
    assert circuit.is_normalized
    system, portmap = compile_circuit(circuit)
    assert set(portmap.pinned) == {circuit.outputs[0]}

    hints = planted_rates(circuit, portmap, [1], NumericMode.RATIONAL)
    assert is_clearing(system, propagate_rates(system, hints))
    with pytest.raises(ModeMismatch):
        planted_rates(circuit, portmap, [Fraction(1, 2)], NumericMode.RATIONAL)


def test_compiler_requires_normalized_circuits():
    with pytest.raises(NotNormalized):
        compile_circuit(one_minus_x())
    b = CircuitBuilder()
    b.input()
    with pytest.raises(NotNormalized):
        compile_circuit(b.build([b.const(2)]))


def test_portmap_serializes():
    circuit = normalize_pipeline(one_minus_x())
    _, portmap = compile_circuit(circuit)
    data = portmap.to_dict()
    assert data["inputs"] == ["x0"]
    assert set(data["results"]) == {g.id for g in circuit.gates}


# =============================================================================
# Squaring chains
# =============================================================================


def test_squaring_chain_values():
    system, outputs = build_squaring_chain(3)
    report = solve_acyclic(system)
    assert [report.solution[b] for b in outputs] == [Fraction(1, 4), Fraction(1, 16), Fraction(1, 256)]
    assert not report.warnings


def test_squaring_chain_bit_growth_warning():
    system, outputs = build_squaring_chain(6)
    report = solve_acyclic(system, Settings(bit_warning_threshold=48))
    assert report.solution[outputs[-1]] == Fraction(1, 2**64)
    assert any("coefficient growth" in w for w in report.warnings)


def test_squaring_chain_rejects_negative_stages():
    with pytest.raises(ValueError):
        build_squaring_chain(-1)
