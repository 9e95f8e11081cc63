"""
Tests for the auxiliary graph, switch classes, switched cycles and components.
"""
import pytest

from cdsclear.analysis import (
    Arc,
    ArcColor,
    SwitchClass,
    build_auxiliary_graph,
    build_contract_graph,
    check_dedicated_cds_debtor,
    check_simple_strongly_switched,
    classify_cycle,
    classify_switch,
    find_simple_strongly_switched_cycle,
    find_strongly_switched_cycle,
    find_weakly_switched_cycle,
    is_acyclic,
    scc_condensation,
    to_dot,
)
from cdsclear.core import FinancialSystem
from cdsclear.exceptions import NotACycle, NotStronglySwitched, UnknownBank


def test_red_arcs_run_from_reference_to_debtor(example_one_system):
    aux = build_auxiliary_graph(example_one_system)
    assert aux.red == {("3", "2"), ("4", "5")}
    assert ("2", "4") in aux.orange
    assert aux.orange[("2", "4")] == frozenset({"3"})
    assert ("1", "2") in aux.blue


def test_contract_graph_keeps_one_arc_per_contract():
    system = FinancialSystem.create(["1", "2", "3"], debts=[("1", "2", 1)], cds=[("1", "2", "3", 1), ("1", "2", "3", 2)])
    graph = build_contract_graph(system)
    assert graph.blue == (("1", "2"),)
    assert len(graph.orange) == 2
    aux = build_auxiliary_graph(system)
    assert aux.colors("1", "2") == (ArcColor.BLUE, ArcColor.ORANGE)


def test_example_one_is_acyclic(example_one_system):
    assert is_acyclic(build_auxiliary_graph(example_one_system))


def test_switch_classes(irrational_pair_system, weak_cycle_system):
    aux = build_auxiliary_graph(irrational_pair_system)
    assert classify_switch(aux, "2") is SwitchClass.ON
    assert classify_switch(aux, "7") is SwitchClass.ON
    assert classify_switch(aux, "4") is SwitchClass.NEITHER

    weak = build_auxiliary_graph(weak_cycle_system)
    assert classify_switch(weak, "1") is SwitchClass.ON
    assert classify_switch(weak, "3") is SwitchClass.OFF
    with pytest.raises(UnknownBank):
        classify_switch(weak, "9")


def test_strongly_switched_witness(irrational_pair_system):
    aux = build_auxiliary_graph(irrational_pair_system)
    witness = find_strongly_switched_cycle(aux)
    assert witness is not None
    assert witness.render() == "2 -> 3 -> 7 -> 6 -> 2"
    assert witness.strongly_switched and witness.weakly_switched
    assert {(a.tail, a.head) for a in witness.red_arcs} == {("3", "7"), ("6", "2")}
    assert find_weakly_switched_cycle(aux) is not None


def test_weak_but_not_strong(weak_cycle_system):
    aux = build_auxiliary_graph(weak_cycle_system)
    weak = find_weakly_switched_cycle(aux)
    assert weak is not None
    assert weak.render() == "1 -> 2 -> 3 -> R -> 1"
    assert weak.weakly_switched and not weak.strongly_switched
    assert find_strongly_switched_cycle(aux) is None


def test_classify_cycle_rejects_broken_chains(weak_cycle_system):
    aux = build_auxiliary_graph(weak_cycle_system)
    with pytest.raises(NotACycle):
        classify_cycle(aux, [Arc("1", "2", ArcColor.ORANGE), Arc("3", "R", ArcColor.ORANGE)])
    with pytest.raises(NotACycle):
        classify_cycle(aux, [Arc("1", "2", ArcColor.BLUE)])
    with pytest.raises(NotACycle):
        classify_cycle(aux, [])


def test_simple_check_needs_a_strong_cycle(weak_cycle_system):
    aux = build_auxiliary_graph(weak_cycle_system)
    weak = find_weakly_switched_cycle(aux)
    with pytest.raises(NotStronglySwitched):
        check_simple_strongly_switched(aux, weak)


def test_simple_cycle_search_is_bounded(irrational_pair_system):
    aux = build_auxiliary_graph(irrational_pair_system)
    search = find_simple_strongly_switched_cycle(aux, cap=1000)
    assert not search.inconclusive
    assert search.examined >= 1
    if search.witness is not None:
        assert search.witness.simple and search.witness.strongly_switched

    capped = find_simple_strongly_switched_cycle(aux, cap=0)
    assert capped.inconclusive and capped.witness is None


def test_condensation_order(weak_cycle_system):
    condensation = scc_condensation(build_auxiliary_graph(weak_cycle_system))
    assert condensation.components == (("1", "2", "3", "R"), ("4",))
    assert condensation.nontrivial() == [("1", "2", "3", "R")]
    assert condensation.component_of("R") == 0
    assert list(condensation.dag.edges) == [(0, 1)]


def test_dedicated_check(example_one_system, irrational_pair_system):
    assert check_dedicated_cds_debtor(example_one_system).ok
    report = check_dedicated_cds_debtor(irrational_pair_system)
    assert {bank for bank, _ in report.violations} == {"2", "7"}


def test_dot_export(example_one_system):
    dot = to_dot(example_one_system, name="example")
    assert dot.startswith('digraph "example" {')
    assert '"2" -> "4" [color=orange, label="2/3 on 3"];' in dot
    assert '"3" -> "2" [color=red];' in dot
    assert "color=red" not in to_dot(example_one_system, include_red=False)
