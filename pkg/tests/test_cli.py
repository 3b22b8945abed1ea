import json
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest

from modfactor.cli import main, run
from modfactor.formats import emit_graph
from modfactor.graph import Multigraph, ResidueMap

SCHEMA = json.loads(resources.files("modfactor").joinpath("output.schema.json").read_text())


@pytest.fixture
def graph_file(tmp_path):
    def write(G, f=None, k=None, text=None):
        p = tmp_path / "g.txt"
        p.write_text(text if text is not None else emit_graph(G, f, k))
        return str(p)

    return write


def _json(capsys, argv):
    code = main(argv)
    payload = json.loads(capsys.readouterr().out)
    jsonschema.validate(payload, SCHEMA)
    assert payload["exit_code"] == code
    return code, payload


def test_factor_bipartite_json(capsys, graph_file):
    path = graph_file(Multigraph.complete_bipartite(3, 3, 3), k=3)
    code, out = _json(capsys, ["--json", "factor", "bipartite", path, "-k", "3"])
    assert code == 0 and set(out["data"]["degrees"]) <= {3, 6}


def test_json_flag_after_subcommand(capsys, graph_file):
    path = graph_file(Multigraph.cycle(4))
    code, out = _json(capsys, ["connectivity", path, "--tree", "--json"])
    assert code == 0 and out["data"]["edge_connectivity"] == 2 and out["data"]["tree_connectivity"] == 1


def test_malformed_exit_4(capsys, graph_file):
    path = graph_file(None, text="2 1\n0 banana\n")
    code, out = _json(capsys, ["--json", "connectivity", path])
    assert code == 4 and out["verdict"] == "input-error"


def test_missing_file_exit_4(capsys):
    assert main(["connectivity", "/nonexistent/graph"]) == 4


def test_bad_arguments_exit_4():
    out, _ = run(["factor", "nonsense-kind", "x"])
    assert out.exit_code == 4


def test_hypothesis_failure_exit_2(capsys, graph_file):
    path = graph_file(Multigraph.cycle(4), ResidueMap(2, [1, 0, 0, 0]))
    code, out = _json(capsys, ["--json", "factor", "bipartite", path])
    assert code == 2 and out["data"]["clause"] == "compatibility"


def test_infeasible_exit_1(capsys, graph_file):
    path = graph_file(Multigraph.cycle(4), ResidueMap(2, [0] * 4))
    code, out = _json(capsys, ["--json", "orient", path, "--window", "0,0"])
    assert code == 1 and out["verdict"] == "infeasible"


def test_compat_verdicts(capsys, graph_file):
    path = graph_file(Multigraph.cycle(3), ResidueMap(2, [1, 1, 1]))
    code, out = _json(capsys, ["--json", "compat", path])
    assert code == 1 and out["verdict"] == "false"
    path = graph_file(Multigraph.cycle(4), ResidueMap(2, [0] * 4))
    code, out = _json(capsys, ["--json", "compat", path])
    assert code == 0 and out["verdict"] == "true"


def test_compat_unknown_exit_3(capsys, graph_file):
    path = graph_file(Multigraph.cycle(4), ResidueMap(4, [1, 0, 0, 0]))
    code, out = _json(capsys, ["--json", "compat", path, "--sufficient"])
    assert code == 3 and out["verdict"] == "unknown"


def test_bi_index_and_orient(capsys, graph_file):
    path = graph_file(Multigraph.complete(4))
    code, out = _json(capsys, ["--json", "bi-index", path])
    assert out["data"]["bi"] == 2
    path = graph_file(Multigraph.cycle(4), ResidueMap(2, [1] * 4))
    code, out = _json(capsys, ["--json", "orient", path])
    assert code == 0 and out["data"]["out_degrees"] == [1, 1, 1, 1]


def test_regular_and_gen(capsys, graph_file):
    path = graph_file(Multigraph.complete_bipartite(3, 3, 3))
    code, out = _json(capsys, ["--json", "regular", "factor", path, "-k", "3"])
    assert code == 0 and all(x % 3 == 0 and x > 0 for x in out["data"]["degrees"])
    code = main(["gen", "edge", "-n", "6", "--lam", "3", "-k", "3", "--seed", "4"])
    text = capsys.readouterr().out
    assert code == 0 and text.startswith("6 ") and "f:" in text


def test_audit_command(capsys):
    code, out = _json(capsys, ["--json", "audit", "--theorem", "cor:bipartite:factor", "--seeds", "5"])
    assert code == 0 and out["data"]["passed"] == 5


def test_stdin_and_module_entry(graph_file):
    text = emit_graph(Multigraph.cycle(4))
    res = subprocess.run(
        [sys.executable, "-m", "modfactor", "connectivity", "-"], input=text, capture_output=True, text=True
    )
    assert res.returncode == 0 and "edge_connectivity: 2" in res.stdout
