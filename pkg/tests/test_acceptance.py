"""
End-to-end checks on the worked examples and property checks on random systems.
"""
import math
from fractions import Fraction

import networkx as nx
import numpy as np
import pytest
from conftest import GOLDEN, SILVER
from hypothesis import given, settings
from hypothesis import strategies as st

from cdsclear.analysis import (
    ArcColor,
    SwitchClass,
    build_auxiliary_graph,
    classify_switch,
    find_strongly_switched_cycle,
    find_weakly_switched_cycle,
    is_acyclic,
)
from cdsclear.circuits import Circuit, CircuitBuilder, eval_circuit_batch, normalize_pipeline
from cdsclear.compiler import compile_circuit, planted_rates
from cdsclear.core import (
    FinancialSystem,
    NumericMode,
    RecoveryVector,
    check_nondegenerate,
    clearing_residual,
    is_clearing,
)
from cdsclear.exceptions import Degenerate, WeaklySwitchedPresent
from cdsclear.fragments import G1_TRANSFER, compose, emit_financial_system, fibonacci_map, parse_fragments
from cdsclear.instances import weak_vs_exact_point
from cdsclear.solvers import (
    iterate_clearing,
    propagate_rates,
    scan_roots,
    solve_acyclic,
    solve_dedicated,
    solve_no_weakly_switched,
)


def sup_distance(a: RecoveryVector, b: RecoveryVector):
    return max(abs(a[k] - b[k]) for k in a)


# =============================================================================
# Worked examples
# =============================================================================


def test_irrational_pair_iterates_to_the_surd(irrational_pair_system):
    report = iterate_clearing(irrational_pair_system, eps=1e-12)
    assert report.converged
    for bank in ("2", "3", "6", "7"):
        assert math.isclose(report.solution[bank], float(SILVER), abs_tol=1e-8)
    assert 2 * SILVER * SILVER - 4 * SILVER + 1 == 0
    assert report.residual == clearing_residual(irrational_pair_system, report.solution)


def test_weak_point_is_far_from_the_corner_solution(weak_vs_exact_system):
    corner = RecoveryVector.from_sequence(weak_vs_exact_system, (1, 1, 1, 1, 0, 1))
    weak = RecoveryVector.from_sequence(weak_vs_exact_system, weak_vs_exact_point(Fraction(1, 100)))
    assert clearing_residual(weak_vs_exact_system, corner) == 0
    assert clearing_residual(weak_vs_exact_system, weak) <= Fraction(1, 100)
    assert sup_distance(weak, corner) == Fraction(51, 100)


def test_every_dedicated_solution_is_exact(weak_vs_exact_system):
    report = solve_dedicated(weak_vs_exact_system)
    assert all(clearing_residual(weak_vs_exact_system, r) == 0 for r in report.solutions)


def test_weak_cycle_end_to_end(weak_cycle_system):
    report = iterate_clearing(weak_cycle_system, eps=1e-9)
    assert math.isclose(report.solution["R"], float(GOLDEN), abs_tol=1e-6)
    aux = build_auxiliary_graph(weak_cycle_system)
    assert find_weakly_switched_cycle(aux) is not None
    assert find_strongly_switched_cycle(aux) is None
    with pytest.raises(WeaklySwitchedPresent):
        solve_no_weakly_switched(weak_cycle_system)


# =============================================================================
# Fragment cycles
# =============================================================================


@pytest.mark.parametrize("k", range(1, 9))
def test_emitted_cycles_iterate_to_the_golden_root(k):
    system = emit_financial_system(parse_fragments(".".join(["g1a'"] * k)))
    report = iterate_clearing(system, eps=1e-12)
    assert report.converged
    assert math.isclose(report.solution["v0"], float(GOLDEN), abs_tol=1e-8)


@pytest.mark.parametrize("k", range(1, 13))
def test_fibonacci_identity(k):
    assert fibonacci_map(k).equivalent(compose([G1_TRANSFER] * k))


# =============================================================================
# Compiler round trip
# =============================================================================


def flip():
    b = CircuitBuilder()
    x = b.input()
    return b.build([b.sub(b.const(1), x)]), [Fraction(1, 2)]


def square():
    b = CircuitBuilder()
    x = b.input()
    return b.build([b.mul(x, x)]), [Fraction(0), Fraction(1)]


@pytest.mark.parametrize("make", [flip, square])
def test_planted_fixed_points_clear(make):
    source, fixed_points = make()
    circuit = normalize_pipeline(source)
    system, portmap = compile_circuit(circuit)
    for x in fixed_points:
        r = propagate_rates(system, planted_rates(circuit, portmap, [x], NumericMode.RATIONAL))
        assert r[portmap.inputs[0]] == x
        assert is_clearing(system, r)


def test_planted_non_fixed_point_does_not_clear():
    source, _ = square()
    circuit = normalize_pipeline(source)
    system, portmap = compile_circuit(circuit)
    r = propagate_rates(system, planted_rates(circuit, portmap, [Fraction(1, 2)], NumericMode.RATIONAL))
    assert clearing_residual(system, r) > 0


UNIT_CONSTANTS = [Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), Fraction(1)]


@st.composite
def unit_circuits(draw) -> Circuit:
    """Single-input circuits of at most ten gates, clamped into [0, 1] at the output."""
    b = CircuitBuilder()
    current = b.input()
    gates = [current]
    for _ in range(draw(st.integers(min_value=1, max_value=3))):
        if draw(st.booleans()):
            other = b.const(draw(st.sampled_from(UNIT_CONSTANTS)))
        else:
            other = draw(st.sampled_from(gates))
        left, right = (current, other) if draw(st.booleans()) else (other, current)
        op = draw(st.sampled_from(["add", "sub", "mul", "max", "min"]))
        current = getattr(b, op)(left, right)
        gates.append(current)
    floor = b.max(b.const(0), current)
    return b.build([b.min(b.const(1), floor)])


@settings(max_examples=50, deadline=None)
@given(source=unit_circuits())
def test_random_circuits_compile_to_their_fixed_points(source):
    circuit = normalize_pipeline(source)
    system, portmap = compile_circuit(circuit)

    def gap(xs):
        return eval_circuit_batch(circuit, xs) - xs

    roots = scan_roots(gap, 0.0, 1.0, step=1e-3, tol=1e-12)
    assert roots
    for x in roots[:: max(1, len(roots) // 5)]:
        hints = planted_rates(circuit, portmap, [x], NumericMode.FLOAT)
        r = propagate_rates(system, hints, NumericMode.FLOAT)
        assert math.isclose(r[portmap.inputs[0]], x, abs_tol=1e-12)
        assert clearing_residual(system, r) <= 1e-9

    report = iterate_clearing(system, eps=1e-12, max_iter=1000)
    if report.converged:
        x_in = report.solution[portmap.inputs[0]]
        assert abs(gap(np.array([x_in]))[0]) <= 1e-4


# =============================================================================
# Random systems
# =============================================================================


@st.composite
def systems(draw, max_banks: int = 8) -> FinancialSystem:
    n = draw(st.integers(min_value=3, max_value=max_banks))
    ids = [str(i) for i in range(1, n + 1)]
    assets = {b: draw(st.sampled_from([0, Fraction(1, 2), 1])) for b in ids}
    debts = draw(st.lists(st.permutations(ids).map(lambda p: (p[0], p[1])), max_size=2 * n, unique=True))
    cds = draw(st.lists(st.permutations(ids).map(lambda p: (p[0], p[1], p[2])), max_size=n, unique=True))
    return FinancialSystem.create(
        assets,
        debts=[(d, c, 1) for d, c in debts],
        cds=[(d, c, r, Fraction(1, 2)) for d, c, r in cds],
    )


def brute_force_switched(aux):
    """(weak, strong) existence over every simple cycle of the auxiliary graph."""
    on = {b for b in aux.vertices if classify_switch(aux, b) is SwitchClass.ON}
    weak = strong = False
    for cycle in nx.simple_cycles(aux.graph):
        pairs = list(zip(cycle, cycle[1:] + cycle[:1]))
        usable = [ArcColor.RED in aux.colors(t, h) and h in on for t, h in pairs]
        if not any(usable):
            continue
        weak = True
        if all(u or aux.colors(t, h) != (ArcColor.RED,) for u, (t, h) in zip(usable, pairs)):
            strong = True
    return weak, strong


@settings(max_examples=200, deadline=None)
@given(system=systems())
def test_switched_cycle_detection_matches_enumeration(system):
    aux = build_auxiliary_graph(system)
    weak, strong = brute_force_switched(aux)
    assert (find_weakly_switched_cycle(aux) is not None) == weak
    witness = find_strongly_switched_cycle(aux)
    assert (witness is not None) == strong
    if witness is not None:
        assert witness.strongly_switched


@settings(max_examples=200, deadline=None)
@given(system=systems())
def test_acyclic_and_component_solvers_agree(system):
    if not is_acyclic(build_auxiliary_graph(system)):
        return
    if not check_nondegenerate(system).ok:
        with pytest.raises(Degenerate):
            solve_no_weakly_switched(system)
        return
    acyclic = solve_acyclic(system).solution
    assert solve_no_weakly_switched(system).solution == acyclic
    assert is_clearing(system, acyclic)
