"""Command-line interface: exit codes, formats, determinism, round trips."""

import json

import numpy as np
import pytest

from quandleforge.cli import run
from quandleforge.engine import canonical_code_of_actions
from quandleforge.families import load_diagram_text


def invoke(capsys, *argv):
    code = run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_enumerate_theta_stats(capsys):
    code, out, _ = invoke(capsys, "enumerate", "--family", "theta3", "--labels", "3,3,2",
                          "--format", "stats")
    assert code == 0
    assert "final_size=14" in out
    assert "components=3" in out
    assert "outcome=completed" in out


def test_enumerate_gkmn_json(capsys, tmp_path):
    out_path = tmp_path / "out.json"
    code, _, _ = invoke(capsys, "enumerate", "--family", "Gkmn", "--k", "4", "--m", "3",
                        "--n", "3", "--format", "json", "-o", str(out_path))
    assert code == 0
    doc = json.loads(out_path.read_text())
    assert doc["size"] == 192
    assert [c["size"] for c in doc["components"]] == [36, 36, 24, 24, 36, 36]
    assert doc["edge_labels"] == [2, 2, 3, 3, 2, 2]
    for name, targets in doc["actions"].items():
        assert sorted(targets) == list(range(192))


def test_knotted_k4_limit_exit_code(capsys):
    code, out, _ = invoke(capsys, "enumerate", "--family", "K4knot",
                          "--labels", "3,3,2,2,2,2", "--max-vertices", "100000")
    assert code == 2
    assert "outcome=limit-exceeded" in out


def test_dot_deterministic_and_counts(capsys, tmp_path):
    args = ("enumerate", "--family", "theta3", "--labels", "2,2,2", "--format", "dot")
    code, out1, _ = invoke(capsys, *args)
    assert code == 0
    code, out2, _ = invoke(capsys, *args)
    assert out1 == out2
    nodes = [line for line in out1.splitlines() if "label=" in line and "->" not in line]
    edges = [line for line in out1.splitlines() if "->" in line]
    assert len(nodes) == 6
    assert len(edges) == 18


def test_dot_no_loops(capsys, tmp_path):
    pres = tmp_path / "free.txt"
    pres.write_text("gens: a\nedges: a:1\nlabels: 3\n")
    code, out, _ = invoke(capsys, "enumerate", "--input", str(pres), "--format", "dot")
    assert code == 0
    assert "->" in out
    code, out, _ = invoke(capsys, "enumerate", "--input", str(pres), "--format", "dot",
                          "--no-loops")
    assert code == 0
    assert "->" not in out


def test_json_round_trip_reproduces_canonical_code(capsys, tmp_path):
    out_path = tmp_path / "theta.json"
    code, _, _ = invoke(capsys, "export", "--family", "theta3", "--labels", "3,3,2",
                        "-o", str(out_path))
    assert code == 0
    doc = json.loads(out_path.read_text())
    actions = [np.array(doc["actions"][name]) for name in sorted(doc["actions"])]

    from quandleforge import (
        EnumerationLimits, FamilyParams, canonical_code, enumerate_quandle,
        expand_relations, family_presentation,
    )
    pres = expand_relations(family_presentation(FamilyParams("theta3", labels=(3, 3, 2))))
    graph = enumerate_quandle(pres, EnumerationLimits(10000, 10**8)).graph
    index = graph.live_index()
    names = [g.name for g in graph.gens]
    for g, gen in enumerate(graph.gens):
        base = index[graph.find(graph.basepoint[gen.id])]
        assert canonical_code_of_actions(actions, base, names) == canonical_code(
            graph, graph.basepoint[gen.id]
        )


def test_table_format(capsys, tmp_path):
    pres = tmp_path / "one.txt"
    pres.write_text("gens: a\nedges: a:1\nlabels: 5\n")
    code, out, _ = invoke(capsys, "enumerate", "--input", str(pres), "--format", "table")
    assert code == 0
    assert out.strip() == "0"


def test_verify_subcommand(capsys):
    code, out, _ = invoke(capsys, "verify", "--family", "H1", "--labels", "3,2,2")
    assert code == 0
    assert "verify: ok" in out
    assert "32" in out


def test_verify_diagram_input(capsys, tmp_path):
    diag = tmp_path / "theta.txt"
    diag.write_text(load_diagram_text("theta3"))
    code, out, _ = invoke(capsys, "verify", "--input", str(diag))
    assert code == 0
    assert "verify: ok" in out


def test_regress_skip_slow(capsys):
    code, out, _ = invoke(capsys, "regress", "--skip-slow")
    assert code == 0
    lines = [line for line in out.splitlines() if line]
    assert sum(1 for line in lines if line.startswith("PASS")) == 20
    assert sum(1 for line in lines if line.startswith("SKIP")) == 1


def test_oracle_check_single(capsys):
    code, out, _ = invoke(capsys, "oracle-check", "--k", "2", "--m", "2", "--n", "3")
    assert code == 0
    assert "PASS  G(2,2,3)" in out


def test_input_errors_exit_one(capsys, tmp_path):
    code, _, err = invoke(capsys, "enumerate", "--family", "theta3", "--input", "x.txt")
    assert code == 1
    code, _, err = invoke(capsys, "enumerate", "--family", "theta3", "--labels", "0,1,2")
    assert code == 1
    code, _, err = invoke(capsys, "enumerate", "--input", str(tmp_path / "missing.txt"))
    assert code == 1
    bad = tmp_path / "bad.txt"
    bad.write_text("gens: a\nedges: a:1\nlabels: 1\nrel * : zz\n")
    code, _, err = invoke(capsys, "enumerate", "--input", str(bad))
    assert code == 1
    assert "error:" in err


def test_env_var_limit_override(capsys, monkeypatch):
    monkeypatch.setenv("QF_MAX_VERTICES", "5000")
    code, out, _ = invoke(capsys, "enumerate", "--family", "K4knot")
    assert code == 2
    assert "vertices_created=5000" in out


def test_bad_usage_exits_nonzero(capsys):
    assert run(["enumerate", "--family", "nosuch"]) == 1
    assert run([]) == 1
