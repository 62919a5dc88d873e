import json
import os
import subprocess
import sys

import pytest

from travlab.cli import main
from travlab.formats import load_structure

DATA = os.path.join(os.path.dirname(__file__), os.pardir, "data")


def data(name):
    return os.path.join(DATA, name)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    return code, json.loads(out)


def test_classify_order(capsys):
    code, out, _ = run(capsys, "classify-order", data("p3.struct"))
    assert code == 0 and out.strip() == "traversal=yes bft=yes dft=yes"
    code, d = run_json(capsys, "classify-order", data("c4.struct"), "--order", "0,1,2,3",
                       "--engine", "kernel")
    assert (d["traversal"], d["bft"], d["dft"]) == (True, False, True)


def test_search_orders(capsys):
    code, d = run_json(capsys, "search-orders", data("c4.struct"), "--kind", "bfs")
    assert code == 0 and len(d["orders"]) == 8


def test_canonical_bft(capsys):
    code, d = run_json(capsys, "canonical-bft", data("c4.struct"))
    assert d["order"] == "0,1,3,2"


def test_quasi_levels(capsys):
    code, d = run_json(capsys, "quasi-levels", data("figure_tree.struct"))
    assert code == 0
    assert [1, 2] in d["quasi_levels"] and [12, 13, 14] in d["quasi_levels"]


def test_quasi_levels_reject_non_bft(capsys):
    code, _, err = run(capsys, "quasi-levels", data("c4.struct"))
    assert code == 2 and "breadth-first" in err


def test_invariance_check(capsys):
    code, d = run_json(capsys, "invariance", "check", data("forest.struct"), data("connected.formula"))
    assert code == 0 and d["invariant"]
    code, d = run_json(capsys, "invariance", "check", data("forest.struct"),
                       data("first_has_neighbor.formula"), "--kind", "all-orders")
    assert code == 1 and not d["invariant"] and d["order1"] != d["order2"]


def test_eval_modes(capsys):
    code, out, _ = run(capsys, "eval", data("forest.struct"), data("connected.formula"),
                       "--kind", "traversal", "--verify")
    assert code == 1 and out.strip() == "false"
    code, out, _ = run(capsys, "eval", data("p3.struct"), "exists x E(x, x)")
    assert code == 1
    code, d = run_json(capsys, "eval", data("forest.struct"), data("first_has_neighbor.formula"),
                       "--order", "5,1,0,2,3,4")
    assert code == 1 and not d["value"] and d["order"] == "5,1,0,2,3,4"
    code, _, err = run(capsys, "eval", data("forest.struct"), data("first_has_neighbor.formula"),
                       "--kind", "all-orders", "--verify")
    assert code == 2


def test_reduce_and_emit(capsys, tmp_path):
    target = tmp_path / "layered.struct"
    code, out, _ = run(capsys, "reduce", "rho", data("chain.struct"), "--emit", str(target))
    assert code == 0
    g = load_structure(str(target))
    assert g.size == 9 and g.is_graph
    code, out, _ = run(capsys, "reduce", "tau", str(target))
    assert code == 0 and out.startswith("structure tau")


def test_decide_reach(capsys):
    code, out, _ = run(capsys, "decide", "reach", data("chain.struct"))
    assert code == 0 and out.strip() == "REACHABLE"
    code, d = run_json(capsys, "decide", "reach", data("blocked.struct"), "--trace")
    assert code == 1 and not d["reachable"]
    assert d["trace"]["d_xy"] == 2 and d["trace"]["d_xz"] != 2


def test_machine_commands(capsys, tmp_path):
    code, out, _ = run(capsys, "machine", "run", data("parity.machine"), "0110")
    assert code == 0 and out.strip() == "ACCEPT"
    code, out, _ = run(capsys, "machine", "run", data("block_count.machine"), "11#01")
    assert code == 1 and out.strip() == "REJECT"
    code, d = run_json(capsys, "machine", "graph", data("bounce.machine"), "01",
                       "--emit", str(tmp_path / "cg.struct"))
    assert d["configurations"] == 12 and d["symmetric"]
    assert load_structure(str(tmp_path / "cg.struct")).size == 12


def test_pipelines(capsys):
    code, d = run_json(capsys, "pipeline", "NL", data("parity.machine"), data("unary3.struct"))
    assert d["encoding"] == "111#101" and d["verdict"] == d["simulation"]
    code, d = run_json(capsys, "pipeline", "L", data("bounce.machine"), data("unary3.struct"))
    assert code == 0 and d["verdict"] and d["simulation"]
    code, _, err = run(capsys, "pipeline", "L", data("parity.machine"), data("unary3.struct"))
    assert code == 2 and "not symmetric" in err


@pytest.mark.parametrize("argv, fragment", [
    (["classify-order", "missing.struct"], ""),
    (["classify-order", data("chain.struct")], "undirected graph"),
    (["classify-order", data("p3.struct"), "--order", "0,0,1"], "exactly once"),
    (["classify-order", data("p3.struct"), "--order", "a,b"], "comma-separated"),
    (["eval", data("p3.struct"), "exists x ("], ""),
    (["search-orders", data("figure_tree.struct")], "cap"),
    (["machine", "run", data("p3.struct"), "01"], "machine"),
])
def test_input_errors_exit_2(capsys, argv, fragment):
    code, _, err = run(capsys, *argv)
    assert code == 2 and fragment in err


def test_usage_error_exit_2(capsys):
    assert main(["no-such-command"]) == 2
    assert main([]) == 2


def test_cap_option(capsys):
    code, _, err = run(capsys, "search-orders", data("p3.struct"), "--cap", "2")
    assert code == 2 and "cap of 2" in err


def test_selftest_quick_suite(capsys):
    code, d = run_json(capsys, "selftest", "--suite", "9", "--quick")
    assert code == 0 and d["suites"][0]["criterion"] == 9 and d["suites"][0]["passed"]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "travlab", "canonical-bft", data("c4.struct")],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "0,1,3,2"


@pytest.mark.parametrize("argv", [
    ["search-orders", data("c4.struct"), "--kind", "dfs"],
    ["decide", "reach", data("chain.struct"), "--trace"],
    ["machine", "graph", data("parity.machine"), "011"],
])
def test_structured_output_is_stable(argv):
    cmd = [sys.executable, "-m", "travlab", *argv, "--format", "json"]
    first, second = (subprocess.run(cmd, capture_output=True) for _ in range(2))
    assert first.returncode == second.returncode
    assert first.stdout == second.stdout and first.stdout
