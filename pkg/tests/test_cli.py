from __future__ import annotations

import json
import subprocess
import sys

import pytest

from geodetic import io as gio
from geodetic.cli import main

from conftest import theta


@pytest.fixture
def files(tmp_path, ditree13):
    paths = {}
    paths["ditree13"] = tmp_path / "ditree13.json"
    paths["ditree13"].write_text(gio.serialize_digraph(ditree13))
    paths["theta"] = tmp_path / "theta.json"
    paths["theta"].write_text(gio.serialize_digraph(theta()))
    paths["tdm"] = tmp_path / "one.json"
    paths["tdm"].write_text('{"n": 1, "triples": [[1, 1, 1]]}\n')
    return paths


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_solve(capsys, files):
    code, out, _ = run(capsys, "solve", "--input", files["ditree13"], "--witness")
    assert code == 0 and out == "size=5\nwitness=4,9,10,11,12\n"
    code, out, _ = run(capsys, "solve", "--input", files["theta"], "--json")
    assert json.loads(out) == {"algorithm": "auto", "size": 4, "verified": True, "witness": [0, 1, 3, 5]}
    code, out, _ = run(capsys, "solve", "--input", files["theta"], "--cap", "3")
    assert code == 0 and out == "cap_exceeded=3\n"


def test_solve_forced_algorithm_error(capsys, files):
    code, out, err = run(capsys, "solve", "--input", files["theta"], "--algo", "ditree")
    assert code == 1 and out == ""
    assert json.loads(err)["error"] == "NotATree"


def test_verify(capsys, files):
    code, out, _ = run(capsys, "verify", "--input", files["theta"], "--set", "0,1,3,5")
    assert code == 0 and out == "geodetic=true\n"
    code, out, _ = run(capsys, "verify", "--input", files["theta"], "--set", "0,1")
    assert code == 2 and out == "geodetic=false uncovered=3,4,5,6,7\n"
    code, _, err = run(capsys, "verify", "--input", files["theta"], "--set", "0,99")
    assert code == 1 and json.loads(err)["error"] == "ParseError"


def test_reduce3dm(capsys, files, tmp_path):
    out_path, lab, dot = tmp_path / "g.json", tmp_path / "l.json", tmp_path / "g.dot"
    code, out, _ = run(capsys, "reduce3dm", "--input", files["tdm"], "--out", out_path,
                       "--labels", lab, "--dot", dot, "--check")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "k=25 lambda=2 vertices=104 arcs=116"
    assert lines[1].startswith("checks=parameters,size,gadget_arcs,dag,fvn_witness")
    assert gio.parse_meta(out_path.read_text()) == {"source": "reduce3dm", "k": 25, "lambda": 2, "n3dm": 1, "m3dm": 1}
    assert len(gio.parse_labels(lab.read_text())) == 104
    assert dot.read_text().startswith("digraph G {\n")
    code, out, _ = run(capsys, "solve", "--input", out_path)
    assert out == "size=25\n"


def test_gen_and_stats(capsys, tmp_path):
    code, out, _ = run(capsys, "gen", "oriented_fen", "--n", "8", "--fen", "2", "--seed", "13")
    assert code == 0
    again = run(capsys, "gen", "oriented_fen", "--n", "8", "--fen", "2", "--seed", "13")[1]
    assert out == again
    path = tmp_path / "g.json"
    path.write_text(out)
    code, out, _ = run(capsys, "stats", "--input", path)
    info = json.loads(out)
    assert info["fen_total"] == 2 and info["n"] == 8 and info["oriented"] and not info["is_tree"]
    code, out, _ = run(capsys, "gen", "3dm", "--n", "2", "--m", "3", "--planted", "--seed", "4")
    assert gio.parse_3dm(out).m == 3


def test_dot(capsys, files):
    code, out, _ = run(capsys, "dot", "--input", files["theta"])
    assert code == 0 and "  0 -> 2;\n" in out and out.endswith("}\n")


def test_bench(capsys, tmp_path):
    spec = tmp_path / "spec.json"
    spec.write_text(json.dumps({"algorithms": ["auto"], "instances": [{"kind": "ditree", "n": 10, "seeds": [1, 2]}]}))
    out_path = tmp_path / "out.csv"
    code, out, _ = run(capsys, "bench", "--spec", spec, "--out", out_path)
    assert code == 0 and out == "records=2\n"
    assert out_path.read_text().startswith("instance_id,kind,n,arcs,fen,seed,algorithm,status,size,")


@pytest.mark.parametrize("argv, kind", [
    (["solve"], "UsageError"),
    (["frobnicate"], "UsageError"),
    (["solve", "--input", "/nonexistent/x.json"], "FileNotFoundError"),
    (["gen", "oriented_fen", "--n", "3", "--fen", "5", "--seed", "1"], "InfeasibleParameters"),
])
def test_errors(capsys, argv, kind):
    code, out, err = run(capsys, *argv)
    assert code == 1 and out == ""
    doc = json.loads(err)
    assert doc["error"] == kind and doc["message"]
    assert err.count("\n") == 1


def test_parse_error_json(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"n": 2, "arcs": [[0, 0]]}')
    code, _, err = run(capsys, "solve", "--input", bad)
    assert code == 1 and json.loads(err)["error"] == "ParseError"


def test_module_entry_point(tmp_path):
    path = tmp_path / "p.json"
    path.write_text('{"n": 3, "arcs": [[0, 1], [1, 2]]}')
    res = subprocess.run([sys.executable, "-m", "geodetic", "solve", "--input", str(path), "--witness"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout == "size=2\nwitness=0,2\n"
