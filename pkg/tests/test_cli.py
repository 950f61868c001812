import io
import json
import subprocess
import sys

import pytest

from lform import default_field, standard_space
from lform.cli import dispatch


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = dispatch(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def run_json(*argv):
    code, out, err = run(*argv, "--json")
    return code, json.loads(out) if out else None


def test_verify_genuine_and_not():
    _, doc = run_json("standard", "--field", "2^2/1,1,1", "--a", "[1, [0,1]]")
    code, out, _ = run("verify", "--field", "2^2/1,1,1", "--Q", json.dumps(doc["prompt"]["Q"]))
    assert code == 0 and out == "verdict: prompt\n"
    code, _, err = run("verify", "--field", "2^2/1,1,1", "--Q", "[[[1,1],[0,1]],[[1,0],[0,1]]]")
    assert code == 2 and "dependent" in err
    code, doc = run_json("verify", "--field", "3^2/2,1,1", "--Q", "[[1,1],[0,[0,1]]]")
    assert code == 1 and doc["verdict"] is False
    assert doc["schema"] == "lform.verify/1" and doc["exit"] == 1
    assert doc["manifest"]["version"] == "0.1.0"


def test_standard_and_build():
    code, doc = run_json("standard", "--field", "3^2/2,1,1", "--a", "[1, [0,1]]")
    assert code == 0 and doc["pole_count"] == 8 and doc["lambda"] == 2
    Q = json.dumps(doc["prompt"]["Q"])
    code, doc2 = run_json("build", "--field", "3^2/2,1,1", "--Q", Q)
    assert code == 0 and doc2["poles"] == doc["poles"]


def test_build_scale_and_file(tmp_path):
    F = default_field(5, 2)
    s = standard_space([1, 5], F)
    f = tmp_path / "q.json"
    # scaling by mu breaks the normalization; --scale recovers a genuine prompt
    f.write_text(json.dumps(s.prompt.scale(5).to_json()))
    code, _ = run_json("build", "--field", "5^2/2,1,1", "--Q", f"@{f}")
    assert code == 1
    code, doc2 = run_json("build", "--field", "5^2/2,1,1", "--Q", f"@{f}", "--scale")
    assert code == 0 and doc2["pole_count"] == 24


def test_residues():
    code, doc = run_json("residues", "--field", "5", "--form", "[[1], [0, 4, 0, 1]]")
    assert code == 0 and doc["logarithmic"] is True
    code, doc = run_json("residues", "--field", "5", "--form", "[[1, 0, 1], [0, 1]]")
    assert code == 1 and doc["logarithmic"] is False
    # a double pole is an input error
    code, _, err = run("residues", "--field", "5", "--form", "[[2, 1], [0, 0, 1]]")
    assert code == 2


def test_twist_pullback_equiv():
    a = "[1, [0,1]]"
    _, doc = run_json("standard", "--field", "3^2/2,1,1", "--a", a)
    Q = json.dumps(doc["prompt"]["Q"])
    code, t = run_json("twist", "--field", "3^2/2,1,1", "--Q", Q, "--times", "2")
    assert code == 0 and t["poles"] == doc["poles"]
    code, pb = run_json("pullback", "--field", "3^2/2,1,1", "--Q", Q, "--S", "[1, 1]")
    assert code == 0 and pb["pole_count"] == 8
    code, eq = run_json("equiv", "--field", "3^2/2,1,1", "--Q", Q, "--Q2", json.dumps(pb["prompt"]["Q"]))
    assert code == 0 and eq["equivalent"]


def test_char2():
    code, doc = run_json("char2", "--field", "2^4/1,1,0,0,1", "--W", "[[1], [[0,1,0,0]]]", "--n", "2")
    assert code == 0 and doc["lambda"] == doc["expected_lambda"] == 1
    assert doc["space"]["pole_count"] == 3
    code, _, err = run("char2", "--field", "2^4/1,1,0,0,1", "--W", "[[1], [[0,1,0,0]]]", "--n", "3")
    assert code == 2 and "input error" in err


def test_replays():
    code, doc = run_json("replay", "l15-f27")
    assert code == 0 and doc["pole_count"] == 20 and doc["field"] == "3^3/1,2,0,1"
    code, doc = run_json("replay", "l20")
    assert code == 0 and all(doc["checks"].values())
    code, doc = run_json("replay", "l12")
    assert code == 0
    assert sum(r["verified"] for r in doc["members"]) == 76


def test_search_and_identities():
    code, doc = run_json("search", "--p", "2", "--lambda", "1", "--field", "2^2/1,1,1",
                         "--normalization", "none")
    assert code == 0 and doc["certificate"]["hits"] == 72
    code, out, _ = run("search", "--p", "3", "--lambda", "1", "--field", "3^3/1,2,0,1")
    assert code == 0 and out.startswith("no prompt")
    code, doc = run_json("identities", "--field", "2^3/1,1,0,1", "--trials", "20", "--n", "2", "3")
    assert code == 0 and doc["counts"]["3"]["product_formula"] == 20


@pytest.mark.parametrize("argv", [
    ["bogus"],
    ["verify", "--Q", "[[1,1]]"],
    ["verify", "--field", "4", "--Q", "[[1,1]]"],
    ["verify", "--field", "3", "--Q", "not json"],
    ["verify", "--field", "3", "--Q", "[[1,1],[2,2]]"],
    ["search", "--p", "3", "--lambda", "2", "--field", "3^3/1,2,0,1", "--max-space", "10"],
])
def test_input_errors(argv):
    code, out, err = run(*argv)
    assert code == 2 and out == "" and err


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "lform", "replay", "l15-f81", "--json"],
                       capture_output=True, text=True)
    assert r.returncode == 0
    doc = json.loads(r.stdout)
    assert doc["pole_count"] == 20 and doc["schema"] == "lform.replay/1"
