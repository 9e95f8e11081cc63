"""
Tests for the typer command line.
"""
import json
from fractions import Fraction

import pytest

from cdsclear.commands.io import EXIT_INPUT, EXIT_OK, EXIT_PRECONDITION, load_instance
from cdsclear.commands.schemas import InstanceDocument
from cdsclear.commands.solve import utils as solve_utils
from cdsclear.commands.solve.schemas import SolverChoice
from cdsclear.instances import weak_cycle, weak_vs_exact_point
from cdsclear.main import app


def write_vector(path, bank_ids, values):
    path.write_text(json.dumps({b: str(Fraction(v)) for b, v in zip(bank_ids, values)}), encoding="utf-8")
    return path


# =============================================================================
# solve
# =============================================================================


def test_solve_acyclic_text(runner, write_instance, example_one_system):
    result = runner.invoke(app, ["solve", str(write_instance(example_one_system))])
    assert result.exit_code == EXIT_OK
    assert "solver: acyclic" in result.stdout
    assert "banks: (1, 2, 3, 4, 5, 6)" in result.stdout
    assert "(2/3, 1, 2/3, 1, 1, 1)" in result.stdout
    assert "residual: 0" in result.stdout


def test_solve_dedicated_json(runner, write_instance, weak_vs_exact_system):
    path = write_instance(weak_vs_exact_system)
    result = runner.invoke(app, ["solve", str(path), "--solver", "dedicated", "--json"])
    assert result.exit_code == EXIT_OK
    data = json.loads(result.stdout)
    assert data["solver"] == "dedicated"
    assert len(data["solutions"]) == 3
    assert data["solutions"][0] == ["1", "1", "1", "1", "0", "1"]


def test_auto_falls_back_to_iteration(runner, write_instance, irrational_pair_system):
    result = runner.invoke(app, ["solve", str(write_instance(irrational_pair_system)), "--json"])
    assert result.exit_code == EXIT_OK
    data = json.loads(result.stdout)
    assert data["solver"] == "iterate"
    assert data["converged"] is True
    assert [s["solver"] for s in data["skipped"]] == ["acyclic", "scc", "dedicated"]


def test_auto_reports_when_no_candidate_applies(
    runner, write_instance, irrational_pair_system, monkeypatch
):
    monkeypatch.setattr(solve_utils, "AUTO_ORDER", (SolverChoice.ACYCLIC, SolverChoice.SCC))
    result = runner.invoke(app, ["solve", str(write_instance(irrational_pair_system))])
    assert result.exit_code == EXIT_PRECONDITION
    assert "no solver applies" in result.output
    assert "acyclic: NotAcyclic" in result.output


def test_solve_float_mode(runner, write_instance, example_one_system):
    path = write_instance(example_one_system)
    result = runner.invoke(app, ["solve", str(path), "--mode", "float", "--json"])
    assert result.exit_code == EXIT_OK
    assert json.loads(result.stdout)["solutions"][0][0] == "0.666666666667"


def test_explicit_solver_precondition_exit_code(
    runner, write_instance, irrational_pair_system, example_one_system
):
    path = write_instance(irrational_pair_system)
    result = runner.invoke(app, ["solve", str(path), "--solver", "acyclic"])
    assert result.exit_code == EXIT_PRECONDITION
    assert "NotAcyclic" in result.output

    one = write_instance(example_one_system, "one.json")
    degenerate = runner.invoke(app, ["solve", str(one), "--solver", "scc"])
    assert degenerate.exit_code == EXIT_PRECONDITION
    assert "Degenerate" in degenerate.output


def test_malformed_input_exit_code(runner, tmp_path):
    broken = tmp_path / "broken.json"
    broken.write_text('{"banks": [', encoding="utf-8")
    result = runner.invoke(app, ["solve", str(broken)])
    assert result.exit_code == EXIT_INPUT
    assert "ParseError" in result.output

    missing = runner.invoke(app, ["solve", str(tmp_path / "missing.json")])
    assert missing.exit_code == EXIT_INPUT


def test_unknown_bank_in_contract(runner, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(
        json.dumps({"banks": [{"id": "1"}], "contracts": [{"debtor": "1", "creditor": "9", "notional": "1"}]}),
        encoding="utf-8",
    )
    result = runner.invoke(app, ["solve", str(path)])
    assert result.exit_code == EXIT_INPUT


@pytest.mark.parametrize(
    "contract",
    [
        {"debtor": "1", "creditor": "1", "notional": "1"},
        {"debtor": "1", "creditor": "2", "notional": "1", "reference": "1"},
        {"debtor": "1", "creditor": "2", "notional": "1", "reference": "2"},
    ],
)
def test_repeated_participants_exit_code(runner, tmp_path, contract):
    path = tmp_path / "bad.json"
    path.write_text(
        json.dumps({"banks": [{"id": "1", "external_assets": "1"}, {"id": "2"}], "contracts": [contract]}),
        encoding="utf-8",
    )
    result = runner.invoke(app, ["solve", str(path)])
    assert result.exit_code == EXIT_INPUT
    assert "MalformedContract" in result.output


def test_loaded_instances_are_normalized(tmp_path):
    path = tmp_path / "dup.json"
    path.write_text(
        json.dumps(
            {
                "banks": [{"id": "1", "external_assets": "1"}, {"id": "2"}, {"id": "3"}],
                "contracts": [
                    {"debtor": "1", "creditor": "2", "notional": "1/2"},
                    {"debtor": "1", "creditor": "2", "notional": "1/2"},
                    {"debtor": "2", "creditor": "3", "notional": "0"},
                ],
            }
        ),
        encoding="utf-8",
    )
    system = load_instance(path)
    assert len(system.contracts) == 1
    assert system.contracts[0].notional == 1


# =============================================================================
# analyze, verify, export-dot
# =============================================================================


def test_analyze_example_one(runner, write_instance, example_one_system):
    result = runner.invoke(app, ["analyze", str(write_instance(example_one_system))])
    assert result.exit_code == EXIT_OK
    assert "non-degenerate: no" in result.stdout
    assert "acyclic: yes" in result.stdout
    assert "no weakly switched cycle" in result.stdout


def test_analyze_strong_cycle(runner, write_instance, irrational_pair_system):
    path = write_instance(irrational_pair_system)
    result = runner.invoke(app, ["analyze", str(path)])
    assert result.exit_code == EXIT_OK
    assert "acyclic: no" in result.stdout
    assert "strongly switched cycle: 2 -> 3 -> 7 -> 6 -> 2" in result.stdout

    data = json.loads(runner.invoke(app, ["analyze", str(path), "--simple", "--json"]).stdout)
    assert data["switches"]["2"] == "on"
    assert data["switches"]["4"] == "neither"
    assert data["strongly_switched_cycle"]["strongly_switched"] is True
    assert data["simple_search"] is not None
    assert not data["simple_search"].startswith(("none", "inconclusive"))


def test_analyze_weak_cycle(runner, write_instance, weak_cycle_system):
    result = runner.invoke(app, ["analyze", str(write_instance(weak_cycle_system))])
    assert result.exit_code == EXIT_OK
    assert "weakly but not strongly switched cycle: 1 -> 2 -> 3 -> R -> 1" in result.stdout


def test_verify_exact_clearing_vector(runner, write_instance, example_one_system, tmp_path):
    vector = write_vector(
        tmp_path / "r.json", example_one_system.bank_ids, (Fraction(2, 3), 1, Fraction(2, 3), 1, 1, 1)
    )
    result = runner.invoke(app, ["verify", str(write_instance(example_one_system)), str(vector)])
    assert result.exit_code == EXIT_OK
    assert "residual: 0" in result.stdout
    assert "clearing: yes" in result.stdout


def test_verify_weak_approximation(runner, write_instance, weak_vs_exact_system, tmp_path):
    path = write_instance(weak_vs_exact_system)
    vector = write_vector(tmp_path / "weak.json", weak_vs_exact_system.bank_ids, weak_vs_exact_point())

    loose = runner.invoke(app, ["verify", str(path), str(vector), "--eps", "1/50"])
    assert loose.exit_code == EXIT_OK
    assert "residual: 1/100" in loose.stdout
    assert "clearing: no" in loose.stdout
    assert "weakly 1/50-approximate: yes" in loose.stdout

    tight = runner.invoke(app, ["verify", str(path), str(vector), "--eps", "1/100"])
    assert "weakly 1/100-approximate: no" in tight.stdout


def test_verify_float_vectors_are_never_exact(runner, write_instance, example_one_system, tmp_path):
    vector = tmp_path / "r.json"
    vector.write_text(json.dumps({b: 1.0 for b in example_one_system.bank_ids}), encoding="utf-8")
    result = runner.invoke(app, ["verify", str(write_instance(example_one_system)), str(vector), "--float"])
    assert result.exit_code == EXIT_OK
    assert "clearing: no" in result.stdout


def test_verify_rejects_bad_vector(runner, write_instance, example_one_system, tmp_path):
    vector = tmp_path / "r.json"
    vector.write_text("[1, 2]", encoding="utf-8")
    result = runner.invoke(app, ["verify", str(write_instance(example_one_system)), str(vector)])
    assert result.exit_code == EXIT_INPUT


def test_export_dot(runner, write_instance, irrational_pair_system):
    path = write_instance(irrational_pair_system, "pair.json")
    result = runner.invoke(app, ["export-dot", str(path)])
    assert result.exit_code == EXIT_OK
    assert result.stdout.startswith('digraph "pair"') or result.stdout.startswith("digraph pair")
    assert "color=red" in result.stdout
    plain = runner.invoke(app, ["export-dot", str(path), "--no-red"])
    assert "color=red" not in plain.stdout


# =============================================================================
# compile
# =============================================================================


def test_compile_writes_instance_and_portmap(runner, tmp_path):
    circuit = tmp_path / "flip.json"
    circuit.write_text(
        json.dumps(
            {
                "gates": [
                    {"id": "x", "kind": "input", "index": 0},
                    {"id": "one", "kind": "const", "constant": "1"},
                    {"id": "out", "kind": "sub", "operands": ["one", "x"]},
                ],
                "outputs": ["out"],
            }
        ),
        encoding="utf-8",
    )
    result = runner.invoke(app, ["compile", str(circuit), "--json"])
    assert result.exit_code == EXIT_OK
    data = json.loads(result.stdout)
    assert data["normalized"] is True

    instance = tmp_path / "flip.instance.json"
    portmap = tmp_path / "flip.portmap.json"
    assert instance.exists() and portmap.exists()
    document = InstanceDocument.model_validate_json(instance.read_text(encoding="utf-8"))
    assert len(document.banks) == data["banks"]
    assert json.loads(portmap.read_text(encoding="utf-8"))["inputs"] == data["inputs"]


def test_compile_rejects_invalid_circuits(runner, tmp_path):
    circuit = tmp_path / "bad.json"
    circuit.write_text(
        json.dumps({"gates": [{"id": "y", "kind": "add", "operands": ["x", "x"]}], "outputs": ["y"]}),
        encoding="utf-8",
    )
    result = runner.invoke(app, ["compile", str(circuit)])
    assert result.exit_code == EXIT_INPUT


# =============================================================================
# fragment, example
# =============================================================================


def test_fragment_rewrite_and_solve(runner):
    result = runner.invoke(app, ["fragment", "g1a.g2b.d1.d2", "--rewrite", "--solve"])
    assert result.exit_code == EXIT_OK
    assert "rewritten: g1a.g1a.g1a" in result.stdout
    assert "rate: (3 - 1*sqrt(5))/2" in result.stdout
    assert "0.3819660112501051517954131" in result.stdout


def test_fragment_emit(runner, tmp_path):
    result = runner.invoke(app, ["fragment", "g1a.g1a", "--emit", "-"])
    assert result.exit_code == EXIT_OK
    document = InstanceDocument.model_validate_json(result.stdout)
    assert "v0" in {b.id for b in document.banks}

    target = tmp_path / "cycle.json"
    written = runner.invoke(app, ["fragment", "g1a.g1a", "--emit", str(target)])
    assert written.exit_code == EXIT_OK
    assert target.exists()
    assert f"banks to {target}" in written.stdout


def test_fragment_errors(runner):
    assert runner.invoke(app, ["fragment", "g4a"]).exit_code == EXIT_INPUT
    assert runner.invoke(app, ["fragment", "g3a.d1"]).exit_code == EXIT_INPUT
    assert runner.invoke(app, ["fragment", "d1.d1", "--solve"]).exit_code == EXIT_INPUT


def test_example_command(runner, tmp_path):
    result = runner.invoke(app, ["example", "weak-cycle"])
    assert result.exit_code == EXIT_OK
    system = InstanceDocument.model_validate_json(result.stdout).to_system()
    assert system.bank_ids == weak_cycle().bank_ids

    out = tmp_path / "weak.json"
    assert runner.invoke(app, ["example", "weak-cycle", "--out", str(out)]).exit_code == EXIT_OK
    assert out.exists()
    assert runner.invoke(app, ["example", "nope"]).exit_code == EXIT_INPUT
