import json
import os
import pathlib
import subprocess

import pytest

ROOT = pathlib.Path(__file__).resolve().parents[2]
CORPUS = ROOT / "data" / "corpus"
BIN = os.environ.get("BBCRYSTAL_BIN", str(ROOT / "build" / "bbcrystal"))


def run(*args):
    return subprocess.run([BIN, *args], capture_output=True, text=True, check=False)


@pytest.fixture(scope="module")
def bb():
    return pytest.importorskip("bbcrystal")


def test_cli_blambda_chain():
    r = run("crystal", "blambda", "--datum", str(CORPUS / "sl2.json"), "--lambda", "2", "--height", "4")
    assert r.returncode == 0
    g = json.loads(r.stdout)
    assert len(g["vertices"]) == 3
    assert [(e["from"], e["to"], e["l"]) for e in g["edges"]] == [(0, 1, 1), (1, 2, 1)]


def test_cli_validate_rejects_broken():
    r = run("--json-errors", "datum", "validate", str(CORPUS / "broken.json"))
    assert r.returncode == 2
    assert "off-diagonal" in json.loads(r.stdout)["error"]["message"]


def test_cli_verify_iso1():
    r = run("verify", "all", "--datum", str(CORPUS / "iso1.json"), "--height", "5")
    assert r.returncode == 0
    assert json.loads(r.stdout)["ok"]


def test_cli_global_feeds_perfect(tmp_path):
    path = tmp_path / "g.json"
    datum = str(CORPUS / "reim.json")
    assert run("global", "--datum", datum, "--lambda", "1,1", "--height", "3", "--out", str(path)).returncode == 0
    r = run("perfect", "check-lower", "--datum", datum, "--height", "3", "--basis", str(path))
    assert r.returncode == 0
    out = json.loads(r.stdout)
    assert out["lambda"] == [1, 1]
    assert out["isomorphic_to_crystal"]
    assert all(e["c"] == "1" for e in out["certificate"]["entries"] if e["target"] is not None)


def test_module_partition_counts(bb):
    counts = bb.crystal([[0]], [1], 6)["counts"]
    assert [counts[f"({m})"] for m in range(7)] == [1, 1, 2, 3, 5, 7, 11]


def test_module_perfect_and_dual(bb):
    assert bb.perfect([[2, -1], [-1, 2]], [1, 1], 3, dom=[1, 1])["ok"]
    assert bb.perfect([[2, -1], [-1, 2]], [1, 1], 3, dom=[1, 1], upper=True)["ok"]


def test_module_verify_and_errors(bb):
    assert bb.verify_all([[0]], [1], 4)["ok"]
    with pytest.raises(ValueError, match="diagonal"):
        bb.validate_datum('{"A": [[1]], "D": [1]}')
    code, out, err = bb.run_cli(["datum", "validate", str(CORPUS / "iso1.json")])
    assert code == 0 and json.loads(out)["tags"] == ["iso"]
