import json
import subprocess
import sys

import pytest

from addmin.cli import main

from .conftest import EX_DEMAND, EX_EIGEN, EX_SUPER, EX_SUPER_DEMAND


@pytest.fixture
def write(tmp_path):
    def _write(doc, name="in.json"):
        p = tmp_path / name
        p.write_text(doc if isinstance(doc, str) else json.dumps(doc))
        return str(p)
    return _write


def test_eigen_text(write, capsys):
    path = write({"n": 2, "A": EX_EIGEN})
    assert main(["eigen", "--input", path, "--format", "text"]) == 0
    assert capsys.readouterr().out.rstrip().endswith("Λ(A) = [1, 2]")


def test_super_max_json(write, capsys):
    path = write({"n": 2, "A": EX_SUPER, "b": EX_SUPER_DEMAND})
    assert main(["super-max", "--input", path]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["lambda_opt"] == "1"
    rows = {tuple(p["cell"]): p["polyhedron"]["rows"] for p in doc["region"]["pieces"]}
    first = {(tuple(r["coeffs"]), r["rel"], r["rhs"]) for r in rows[(1, 1)]}
    assert (("-1", "0"), "<=", "-0.3") in first
    assert (("1", "0"), "<=", "0.4") in first
    assert (("1", "-1"), "<=", "0") in first and (("-1", "1"), "<=", "0") in first


def test_verify(write, capsys):
    path = write({"n": 2, "A": EX_EIGEN})
    assert main(["verify", "--input", path, "--x", "0.1,0.1"]) == 0
    assert capsys.readouterr().out.strip() == "eigenpair: yes, λ = 2"
    assert main(["verify", "--input", path, "--x", "1,1", "--lambda", "1", "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["holds"] is False


def test_super_region_and_constrained(write, capsys):
    path = write({"n": 2, "A": EX_SUPER, "lambda": "1"})
    assert main(["super-region", "--input", path]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert [p["cell"] for p in doc["region"]["pieces"]] == [[1, 1], [2, 1]]
    path = write({"n": 2, "A": EX_EIGEN, "b": EX_DEMAND})
    assert main(["constrained", "--input", path, "--format", "text"]) == 0
    assert capsys.readouterr().out.rstrip().endswith("Λ*(A) = [1, 1.5]")


def test_infeasible_exit_two(write, tmp_path, capsys):
    path = write({"n": 2, "A": [["0.1", "0.1"], ["0.5", "0.5"]], "b": ["0.5", "0.5"]})
    out = tmp_path / "out.json"
    assert main(["constrained", "--input", path, "--output", str(out)]) == 2
    doc = json.loads(out.read_text())
    assert doc["feasible"] is False and doc["lambda_set"] == [] and doc["families"] == []
    assert main(["super-max", "--input", path]) == 2
    doc = json.loads(capsys.readouterr().out)
    assert doc["lambda_opt"] is None and doc["region"]["pieces"] == []


@pytest.mark.parametrize(
    "doc, args, needle",
    [
        ({"n": 2, "A": [["0.4", "1.5"], ["0", "0"]]}, ["eigen"], "A[0][1]"),
        ({"n": 2, "A": [["0.4", "0.5"], ["0", "0"]], "b": ["0.1", "-1"]}, ["constrained"], "b[1]"),
        ({"n": 3, "A": [["0.4", "0.5"], ["0", "0"]]}, ["eigen"], "n"),
        ({"n": 2, "A": [["0.4", "0.5"], ["0", "0"]]}, ["constrained"], "b"),
        ({"n": 2, "A": [["0.4", "0.5"], ["0", "0"]]}, ["super-region"], "lambda"),
        ({"n": 2, "A": [["0.4", "0.5"], ["0", "0"]]}, ["verify", "--x", "0.1"], "x"),
        ({"n": 2, "A": [["0.4", "0.5"], ["0", "0"]]}, ["verify", "--x", "0.1,abc"], "x[1]"),
        ({"n": 2, "A": [["0.4", "0.5"], ["0", "0"]]}, ["eigen", "--max-cells", "2"], "cells exceed"),
        ("{not json", ["eigen"], "malformed JSON"),
    ],
)
def test_validation_exit_one(write, capsys, doc, args, needle):
    path = write(doc)
    assert main([args[0], "--input", path, *args[1:]]) == 1
    assert needle in capsys.readouterr().err


def test_unreadable_and_bad_flags(tmp_path, capsys):
    assert main(["eigen", "--input", str(tmp_path / "missing.json")]) == 1
    assert "cannot read" in capsys.readouterr().err
    with pytest.raises(SystemExit) as e:
        main(["eigen", "--input", "x", "--format", "yaml"])
    assert e.value.code == 1


def test_byte_identical_output(write, tmp_path):
    path = write({"n": 2, "A": EX_EIGEN})
    outs = []
    for k in range(2):
        out = tmp_path / f"o{k}.json"
        assert main(["eigen", "--input", path, "--output", str(out), "--seed", "5"]) == 0
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]


def test_module_entry_point(write):
    path = write({"n": 2, "A": EX_EIGEN})
    r = subprocess.run([sys.executable, "-m", "addmin", "verify", "--input", path, "--x", "1,0.7"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.strip() == "eigenpair: yes, λ = 1"
