import json
import math
from fractions import Fraction

import pytest

from hypinv import cli, metgraph

LOOP1 = {
    "vertices": [{"id": "v", "genus": 1}],
    "edges": [{"u": "v", "v": "v", "length": "1"}],
}
CURVE6 = {"genus": 2, "roots": ["0", "1", "2", "3", "4", "5"]}
CURVE3 = {"genus": 2, "roots": ["0", "9", "1", "10", "2", "11"], "prime": 3}


def run(capsys, *argv):
    code = cli.main(list(argv))
    return code, capsys.readouterr().out


def write(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


def test_symroots_triple(tmp_path, capsys):
    curve = write(tmp_path, "c.json", CURVE6)
    code, out = run(capsys, "symroots", "--curve", curve, "--triple", "0,1,2")
    assert code == 0
    doc = json.loads(out)
    assert doc["l_pow_2g"] == "16/5"
    assert "nu_l" not in doc


def test_symroots_with_prime(tmp_path, capsys):
    curve = write(tmp_path, "c.json", CURVE3)
    code, out = run(capsys, "symroots", "--curve", curve, "--triple", "0,2,1")
    assert code == 0
    doc = json.loads(out)
    assert doc["nu_l"] == "2"
    assert doc["pairing_nu"] == "1"
    assert math.isclose(float(doc["pairing_log"]), math.log(3))


def test_symroots_all_triples(tmp_path, capsys):
    curve = write(tmp_path, "c.json", CURVE6)
    code, out = run(capsys, "symroots", "--curve", curve, "--all-triples")
    assert code == 0
    doc = json.loads(out)
    assert len(doc["results"]) == 6 * 5 * 4


def test_symroots_needs_triple_mode(tmp_path, capsys):
    curve = write(tmp_path, "c.json", CURVE6)
    code, out = run(capsys, "symroots", "--curve", curve)
    assert code == 1
    assert json.loads(out)["error"] == "validation"


def test_graph_eval(tmp_path, capsys):
    path = write(tmp_path, "loop1.json", LOOP1)
    code, out = run(capsys, "graph", "eval", "--in", path)
    assert code == 0
    assert json.loads(out) == {
        "epsilon": "1/6",
        "phi": "1/12",
        "delta": "1",
        "genus": "2",
    }


def test_graph_eval_deterministic(tmp_path, capsys):
    path = write(tmp_path, "loop1.json", LOOP1)
    _, out1 = run(capsys, "graph", "eval", "--in", path)
    _, out2 = run(capsys, "graph", "eval", "--in", path)
    assert out1 == out2


def test_out_file(tmp_path, capsys):
    path = write(tmp_path, "loop1.json", LOOP1)
    target = tmp_path / "result.json"
    code, out = run(capsys, "graph", "eval", "--in", path, "--out", str(target))
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["epsilon"] == "1/6"


def test_cluster(tmp_path, capsys):
    curve = write(tmp_path, "c.json", CURVE3)
    code, out = run(capsys, "cluster", "--curve", curve, "--triple", "0,2,1")
    assert code == 0
    doc = json.loads(out)
    assert doc["checks"] == ["ok"]
    rec = doc["pairings"]["(0,2,1)"]
    assert rec == {
        "combination": "8",
        "expected_from_symroots": "8",
        "match": True,
    }
    assert any(n["level"] == 2 for n in doc["tree"]["nodes"])


def test_cluster_rejects_bad_form(tmp_path, capsys):
    curve = write(
        tmp_path, "c.json", {"genus": 2, "roots": ["0", "3", "1", "4", "2", "5"]}
    )
    code, out = run(capsys, "cluster", "--curve", curve, "--prime", "3")
    assert code == 0  # diagnostic report, not an error
    doc = json.loads(out)
    assert doc["checks"] != ["ok"]
    assert "tree" not in doc


def test_genus2(capsys):
    code, out = run(
        capsys, "genus2", "--type", "VII", "--params", "1,1,1", "--graph-check"
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["chi"] == "1/9"
    assert doc["graph_check"]["matches_table"] is True


def test_genus2_bad_type(capsys):
    code, out = run(capsys, "genus2", "--type", "IX")
    assert code == 1


def test_invariants_chi(capsys):
    code, out = run(
        capsys,
        "invariants", "chi",
        "--d", "6", "--eps", "5/9", "--delta", "3", "--genus", "2",
    )
    assert code == 0
    assert json.loads(out)["chi"] == "1/9"


def test_global(tmp_path, capsys):
    places = [
        {
            "label": "3",
            "genus": 2,
            "logNv": math.log(3),
            "d": "6",
            "eps": "5/9",
            "delta": "3",
            "phi": "1/9",
            "chi": "1/9",
        }
    ]
    path = write(tmp_path, "places.json", places)
    code, out = run(capsys, "global", "--places", path)
    assert code == 0
    doc = json.loads(out)
    expect = 2 / 5 * float(Fraction(1, 9)) * math.log(3)
    assert math.isclose(float(doc["omega_omega_adm"]), expect)


def test_global_inconsistent_chi(tmp_path, capsys):
    places = [
        {
            "genus": 2,
            "logNv": 1.0,
            "d": "6",
            "eps": "5/9",
            "delta": "3",
            "phi": "1/9",
            "chi": "1/3",
        }
    ]
    path = write(tmp_path, "places.json", places)
    code, out = run(capsys, "global", "--places", path)
    assert code == 1
    assert "inconsistent" in json.loads(out)["detail"]


def test_global_missing_key(tmp_path, capsys):
    path = write(tmp_path, "places.json", [{"genus": 2}])
    code, out = run(capsys, "global", "--places", path)
    assert code == 1


def test_verify_cli(capsys):
    code, out = run(capsys, "verify", "--suite", "subdivision", "--seed", "7")
    assert code == 0
    doc = json.loads(out)
    assert doc["failed"] == 0 and doc["passed"] > 0


def test_missing_file(capsys):
    code, out = run(capsys, "graph", "eval", "--in", "does-not-exist.json")
    assert code == 1
    assert json.loads(out)["error"] == "validation"


def test_malformed_json(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text("{bad")
    code, out = run(capsys, "graph", "eval", "--in", str(path))
    assert code == 1
    assert "malformed" in json.loads(out)["detail"]


def test_bad_graph_schema(tmp_path, capsys):
    path = write(tmp_path, "g.json", {"nodes": []})
    code, out = run(capsys, "graph", "eval", "--in", str(path))
    assert code == 1


def test_bad_subcommand(capsys):
    code, out = run(capsys, "bogus")
    assert code == 1
    assert json.loads(out)["error"] == "validation"


def test_internal_error_exit_code(tmp_path, capsys, monkeypatch):
    path = write(tmp_path, "loop1.json", LOOP1)

    def boom(graph):
        raise RuntimeError("induced failure")

    monkeypatch.setattr(metgraph, "epsilon_phi", boom)
    monkeypatch.setattr(cli.metgraph, "epsilon_phi", boom)
    code, out = run(capsys, "graph", "eval", "--in", path)
    assert code == 2
    assert json.loads(out)["error"] == "internal"
