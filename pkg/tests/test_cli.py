from __future__ import annotations

import itertools
import json
import subprocess
import sys

import pytest

from gallai.cli import main


def run(args, stdin=None):
    proc = subprocess.run([sys.executable, "-m", "gallai.cli", *args], input=stdin,
                          capture_output=True, text=True)
    return proc.returncode, proc.stdout, proc.stderr


@pytest.fixture
def files(tmp_path):
    out = {}

    def put(name, text):
        p = tmp_path / name
        p.write_text(text)
        out[name] = str(p)

    put("k3.txt", "0 1\n1 2\n2 0\n")
    put("k5.txt", "\n".join(f"{a} {b}" for a, b in itertools.combinations(range(5), 2)))
    put("k5m.txt", "\n".join(f"{a} {b}" for a, b in itertools.combinations(range(5), 2) if (a, b) != (0, 4)))
    put("split.txt", "0 1\n2 3\n")
    put("k3_good.json", json.dumps({"n": 3, "paths": [[0, 1, 2], [2, 0]], "relaxed_budget": True}))
    put("k3_cycle.json", json.dumps({"n": 3, "paths": [[0, 1, 2, 0]]}))
    put("k5m_two.json", json.dumps({"n": 5, "paths": [[0, 1, 2, 3, 4], [1, 3, 0, 2, 4, 1]]}))
    put("k3_short.json", json.dumps({"n": 3, "paths": [[0, 1, 2]]}))
    out["dir"] = tmp_path
    return out


def test_decompose_k3(files):
    code, out, _ = run(["decompose", files["k3.txt"]])
    assert code == 0
    doc = json.loads(out.splitlines()[0])
    assert len(doc["paths"]) == 2 and doc["relaxed_budget"] is True and doc["meets_bound"]
    assert out.splitlines()[1].startswith("ok")


def test_decompose_stdin_json_and_dot(files):
    dot = files["dir"] / "k3.dot"
    code, out, _ = run(["decompose", "-", "--json", "--dot", str(dot), "--trace"], stdin="0 1\n1 2\n2 0\n")
    assert code == 0
    doc = json.loads(out)
    assert doc["colors"] == 2 and "trace" in doc and "verdict" in doc
    assert dot.read_text().startswith("graph")


def test_decompose_input_errors(files):
    code, _, err = run(["decompose", files["split.txt"]])
    assert code == 1 and "graph not connected" in err
    code, _, err = run(["decompose", files["k5.txt"]])
    assert code == 1 and "not planar" in err
    code, _, err = run(["decompose", "-"], stdin="0 1\n0 1\n")
    assert code == 1 and "duplicate" in err
    code, _, _ = run(["decompose", str(files["dir"] / "missing.txt")])
    assert code == 1


def test_verify(files):
    assert run(["verify", files["k3.txt"], files["k3_good.json"]])[0] == 0
    code, out, _ = run(["verify", files["k3.txt"], files["k3_cycle.json"]])
    assert code == 3 and "color 0 is a cycle" in out
    code, out, _ = run(["verify", files["k5m.txt"], files["k5m_two.json"]])
    assert code == 3 and "cycle" in out
    code, _, err = run(["verify", files["k3.txt"], files["k3_short.json"]])
    assert code == 1 and "domain mismatch" in err


def test_verify_budget_message(files, tmp_path):
    p5 = tmp_path / "p5.txt"
    p5.write_text("0 1\n1 2\n2 3\n3 4\n")
    claim = tmp_path / "p5.json"
    claim.write_text(json.dumps({"n": 5, "paths": [[0, 1], [1, 2], [2, 3], [3, 4]]}))
    code, out, _ = run(["verify", str(p5), str(claim)])
    assert code == 3 and "4 colors exceed the budget of 2" in out


def test_decompose_then_verify_round_trip(files, tmp_path):
    code, out, _ = run(["decompose", files["k5m.txt"], "--json"])
    claim = tmp_path / "k5m.json"
    claim.write_text(out)
    assert code == 0 and run(["verify", files["k5m.txt"], str(claim)])[0] == 0


def test_census_cli(capsys):
    assert main(["census", "--n", "3"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert (doc["count"], doc["relaxed_count"], doc["violations"]) == (4, 1, 0)
    assert main(["census", "--n", "2"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert (doc["count"], doc["relaxed_count"]) == (1, 0)
    assert main(["census", "--n", "9"]) == 1


def test_fuzz_cli_deterministic(capsys, tmp_path):
    args = ["fuzz", "--n-range", "8..12", "--count", "6", "--seed", "1", "--out-dir", str(tmp_path)]
    assert main(args) == 0
    first = capsys.readouterr().out
    assert main(args) == 0
    assert capsys.readouterr().out == first
    doc = json.loads(first)
    assert doc["meets_bound_ratio"] == 1.0 and doc["rule_histogram"]


def test_analyze_cli(files, capsys):
    assert main(["analyze", files["k5m.txt"]]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["witness"]["kind"] == "CI" and doc["rule"]["rule_id"] == "Xl"
    assert main(["analyze", files["k5.txt"]]) == 1
