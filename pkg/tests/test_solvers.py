"""
Tests for the exact solvers, the fixed-point iteration and strong certification.
"""
import math
from fractions import Fraction

import numpy as np
import pytest
from conftest import SILVER
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from cdsclear.config import Settings
from cdsclear.core import (
    FinancialSystem,
    NumericMode,
    RecoveryVector,
    assets,
    clearing_residual,
    is_clearing,
    total_liability,
)
from cdsclear.exceptions import (
    Degenerate,
    NotAcyclic,
    NotDedicated,
    NoExactReference,
    SingularSystem,
    TooManyBranches,
    WeaklySwitchedPresent,
)
from cdsclear.instances import weak_vs_exact_point
from cdsclear.solvers import (
    Branch,
    SolverKind,
    certify_strong,
    exact_references,
    half_vector,
    iterate_clearing,
    propagate_rates,
    scan_roots,
    solve_acyclic,
    solve_dedicated,
    solve_exact,
    solve_no_weakly_switched,
)

EXAMPLE_ONE = (Fraction(2, 3), 1, Fraction(2, 3), 1, 1, 1)

# =============================================================================
# Exact linear algebra and root scanning
# =============================================================================


def test_solve_exact():
    x = solve_exact([[Fraction(2), Fraction(1)], [Fraction(1), Fraction(3)]], [Fraction(3), Fraction(5)])
    assert x == [Fraction(4, 5), Fraction(7, 5)]


def test_solve_exact_singular():
    with pytest.raises(SingularSystem):
        solve_exact([[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]], [Fraction(1), Fraction(2)])
    with pytest.raises(SingularSystem):
        solve_exact([[Fraction(1), Fraction(2)]], [Fraction(1)])


def test_scan_roots_finds_golden_root():
    roots = scan_roots(lambda x: x * x - 3 * x + 1, 0.0, 1.0, step=1e-2, tol=1e-12)
    assert len(roots) == 1
    assert math.isclose(roots[0], (3 - math.sqrt(5)) / 2, abs_tol=1e-10)


def test_scan_roots_rejects_bad_grid():
    with pytest.raises(ValueError):
        scan_roots(np.sin, 1.0, 0.0)
    with pytest.raises(ValueError):
        scan_roots(np.sin, 0.0, 1.0, step=0)


# =============================================================================
# Acyclic solver and propagation
# =============================================================================


def test_acyclic_example_one(example_one_system):
    report = solve_acyclic(example_one_system)
    assert report.solver is SolverKind.ACYCLIC
    assert report.solution.as_tuple() == EXAMPLE_ONE
    assert report.residual == 0
    assert not report.warnings


def test_acyclic_rejects_cycles(irrational_pair_system):
    with pytest.raises(NotAcyclic):
        solve_acyclic(irrational_pair_system)


def test_propagation_with_a_planted_surd(irrational_pair_system):
    with pytest.raises(NotAcyclic):
        propagate_rates(irrational_pair_system)
    r = propagate_rates(irrational_pair_system, {"2": SILVER}, NumericMode.SURD)
    assert r["6"] == SILVER
    assert is_clearing(irrational_pair_system, r)


def test_propagation_with_a_wrong_plant_is_not_clearing(irrational_pair_system):
    r = propagate_rates(irrational_pair_system, {"2": Fraction(1, 2)})
    assert not is_clearing(irrational_pair_system, r)
    assert clearing_residual(irrational_pair_system, r) > 0


# =============================================================================
# Dedicated solver
# =============================================================================


def test_dedicated_enumerates_every_clearing_vector(weak_vs_exact_system):
    report = solve_dedicated(weak_vs_exact_system)
    assert report.solver is SolverKind.DEDICATED
    found = [r.as_tuple() for r in report.solutions]
    assert found[0] == (1, 1, 1, 1, 0, 1)
    assert (1, Fraction(48, 49), 1, 1, Fraction(25, 49), 1) in found
    assert (1, 0, 1, 1, 1, 1) in found
    assert found == sorted(found, reverse=True)
    assert all(is_clearing(weak_vs_exact_system, r) for r in report.solutions)
    assert len(report.branches) == len(report.solutions)


def cds_ring(e1, e2, e4, e5, a, b, c1, c2) -> FinancialSystem:
    """Bank 1 insures 2 on 5 and bank 4 insures 5 on 2; 2 and 5 owe a and b to sinks 3 and 6."""
    return FinancialSystem.create(
        {"1": e1, "2": e2, "3": 0, "4": e4, "5": e5, "6": 0},
        debts=[("2", "3", a), ("5", "6", b)],
        cds=[("1", "2", "5", c1), ("4", "5", "2", c2)],
    )


def ring_residual(system: FinancialSystem):
    """``r5 -> f(r)_5 - r5`` of a :func:`cds_ring` with every other rate eliminated."""
    e = {b: float(system.external_assets(b)) for b in system.bank_ids}
    notional = {c.key: float(c.notional) for c in system.contracts}
    a, b = notional[("2", "3", None)], notional[("5", "6", None)]
    c1, c2 = notional[("1", "2", "5")], notional[("4", "5", "2")]

    def residual(r5: np.ndarray) -> np.ndarray:
        # a CDS debtor pays min(owed, assets)
        r2 = np.minimum(1.0, (e["2"] + np.minimum((1.0 - r5) * c1, e["1"])) / a)
        return np.minimum(1.0, (e["5"] + np.minimum((1.0 - r2) * c2, e["4"])) / b) - r5

    return residual


@st.composite
def cds_rings(draw) -> FinancialSystem:
    """Non-degenerate dedicated rings whose reduced map has no flat stretch."""
    positive = st.sampled_from(
        [Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), Fraction(1), Fraction(2)]
    )
    small = st.sampled_from([Fraction(0), Fraction(1, 4), Fraction(1, 2)])
    e1, e4, a, b, c1, c2 = (draw(positive) for _ in range(6))
    e2, e5 = draw(small), draw(small)
    assume(c1 * c2 != a * b)
    return cds_ring(e1, e2, e4, e5, a, b, c1, c2)


def assert_branches_hold(system: FinancialSystem, report) -> None:
    """Re-evaluate both sides of every minimum at each solution against its branch flags."""
    cds_notional: dict[str, Fraction] = {}
    for contract in system.cdses:
        debtor = contract.debtor
        cds_notional[debtor] = cds_notional.get(debtor, Fraction(0)) + contract.notional

    for r, branches in zip(report.solutions, report.branches, strict=True):
        for bank, flag in branches.rates.items():
            inflow, owed = assets(system, r, bank), total_liability(system, r, bank)
            if flag is Branch.SATURATED:
                assert inflow >= owed and r[bank] == 1
            else:
                assert inflow <= owed and r[bank] == inflow / owed
        assert set(branches.payments) == {c.label() for c in system.cdses}
        for contract in system.cdses:
            cap = (1 - r[contract.reference]) * cds_notional[contract.debtor]
            inflow = assets(system, r, contract.debtor)
            paid = r[contract.debtor] * (1 - r[contract.reference]) * contract.notional
            if branches.payments[contract.label()] is Branch.SATURATED:
                assert cap <= inflow
                assert paid == (1 - r[contract.reference]) * contract.notional
            else:
                assert inflow <= cap
                if cap > 0:
                    assert paid == contract.notional * inflow / cds_notional[contract.debtor]


def test_dedicated_branches_are_consistent(weak_vs_exact_system):
    report = solve_dedicated(weak_vs_exact_system)
    assert_branches_hold(weak_vs_exact_system, report)


def test_dedicated_solutions_match_a_scan(weak_vs_exact_system):
    residual = ring_residual(weak_vs_exact_system)
    roots = scan_roots(residual, 0.0, 1.0, step=1e-3, tol=1e-12)
    exact = sorted(float(r["5"]) for r in solve_dedicated(weak_vs_exact_system).solutions)
    assert exact == pytest.approx([0.0, 25 / 49, 1.0], abs=1e-15)
    assert roots == pytest.approx(exact, abs=1e-6)
    # the weak point misses the reduced fixed-point equation by eps
    weak_r5 = float(weak_vs_exact_point()[4])
    assert math.isclose(abs(residual(np.array([weak_r5]))[0]), 0.01, abs_tol=1e-9)


@settings(max_examples=100, deadline=None)
@given(system=cds_rings())
def test_dedicated_solver_agrees_with_a_scan_of_random_rings(system):
    report = solve_dedicated(system)
    assert report.solutions
    assert_branches_hold(system, report)

    residual = ring_residual(system)
    roots = scan_roots(residual, 0.0, 1.0, step=1e-4, tol=1e-12)
    exact = [float(r["5"]) for r in report.solutions]
    for root in roots:
        assert any(math.isclose(root, x, abs_tol=1e-6) for x in exact)
    for x in exact:
        assert abs(residual(np.array([x]))[0]) <= 1e-9
        below, above = residual(np.array([max(0.0, x - 1e-6), min(1.0, x + 1e-6)]))
        if x in (0.0, 1.0) or below * above < 0:
            assert any(math.isclose(root, x, abs_tol=1e-6) for root in roots)


def test_dedicated_preconditions(example_one_system, irrational_pair_system, weak_vs_exact_system):
    with pytest.raises(NotDedicated) as excinfo:
        solve_dedicated(irrational_pair_system)
    assert {bank for bank, _ in excinfo.value.violations} == {"2", "7"}
    with pytest.raises(Degenerate):
        solve_dedicated(example_one_system)
    with pytest.raises(TooManyBranches):
        solve_dedicated(weak_vs_exact_system, Settings(max_branches=2))


# =============================================================================
# Component-wise solver
# =============================================================================


def test_components_solved_in_order():
    # the ring 4 <-> 5 is fed by a debt of 2 and a CDS on 2
    system = FinancialSystem.create(
        {"1": 1, "2": 0, "3": Fraction(1, 2), "4": 0, "5": 0, "6": 0},
        debts=[("1", "2", 1), ("2", "4", 2), ("4", "5", 4), ("5", "4", 1), ("5", "6", 1)],
        cds=[("3", "4", "2", 1)],
    )
    report = solve_no_weakly_switched(system)
    assert report.solver is SolverKind.SCC
    assert report.solution.as_tuple() == (1, Fraction(1, 2), 1, Fraction(5, 8), 1, 1)


def test_degenerate_systems_are_refused(example_one_system):
    with pytest.raises(Degenerate) as excinfo:
        solve_no_weakly_switched(example_one_system)
    assert {bank for bank, _ in excinfo.value.report.violations} == {"2", "5"}


def test_debt_ring(debt_ring):
    report = solve_no_weakly_switched(debt_ring)
    assert report.solution.as_tuple() == (Fraction(3, 4), 1, 1)


def test_weakly_switched_cycles_are_refused(weak_cycle_system, irrational_pair_system):
    with pytest.raises(WeaklySwitchedPresent) as excinfo:
        solve_no_weakly_switched(weak_cycle_system)
    assert excinfo.value.witness.render() == "1 -> 2 -> 3 -> R -> 1"
    with pytest.raises(WeaklySwitchedPresent):
        solve_no_weakly_switched(irrational_pair_system)


# =============================================================================
# Iteration
# =============================================================================


def test_iteration_reaches_the_irrational_pair(irrational_pair_system):
    report = iterate_clearing(irrational_pair_system, eps=1e-12)
    assert report.converged
    assert report.residual < 1e-11
    assert math.isclose(report.solution["2"], 1 - math.sqrt(2) / 2, abs_tol=1e-6)


def test_iteration_on_weak_cycle(weak_cycle_system):
    report = iterate_clearing(weak_cycle_system, eps=1e-12)
    assert report.converged
    assert math.isclose(report.solution["R"], (3 - math.sqrt(5)) / 2, abs_tol=1e-6)


def test_iteration_reports_non_convergence(irrational_pair_system, caplog):
    report = iterate_clearing(irrational_pair_system, eps=1e-15, max_iter=3)
    assert report.converged is False
    assert report.iterations == 3
    assert report.warnings
    assert "no convergence" in caplog.text


def test_iteration_argument_checks(example_one_system):
    with pytest.raises(ValueError):
        iterate_clearing(example_one_system, eps=0)
    with pytest.raises(ValueError):
        iterate_clearing(example_one_system, damping=1.5)


def test_iteration_from_a_start_point(example_one_system):
    start = RecoveryVector.constant(example_one_system, 0)
    report = iterate_clearing(example_one_system, eps=1e-12, damping=1.0, start=start)
    assert report.converged
    assert math.isclose(report.solution["1"], 2 / 3, abs_tol=1e-9)


# =============================================================================
# Strong certification
# =============================================================================


def test_weak_point_is_close_to_an_interior_solution(weak_vs_exact_system):
    weak = RecoveryVector.from_sequence(weak_vs_exact_system, weak_vs_exact_point())
    assert certify_strong(weak_vs_exact_system, weak, Fraction(1, 100))
    assert not certify_strong(weak_vs_exact_system, weak, Fraction(1, 4900))


def test_half_vector_is_within_half(weak_vs_exact_system):
    half = half_vector(weak_vs_exact_system)
    assert not certify_strong(weak_vs_exact_system, half, Fraction(1, 2))
    assert certify_strong(weak_vs_exact_system, half, Fraction(51, 100))


def test_certify_with_given_references(irrational_pair_system):
    iterate = iterate_clearing(irrational_pair_system, eps=1e-12).solution
    with pytest.raises(NoExactReference):
        exact_references(irrational_pair_system)
    exact = propagate_rates(irrational_pair_system, {"2": SILVER}, NumericMode.SURD)
    assert certify_strong(irrational_pair_system, iterate, 1e-6, references=[exact])
