import json
from pathlib import Path

import pytest

from drsplit.cli import EXIT_INVALID, EXIT_MISMATCH, EXIT_OK, main

REPO = Path(__file__).resolve().parents[1]


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_bananas_example(capsys):
    code, out, _ = run(capsys, "bananas", "--g", "0", "--n", "4", "--A", "2,-2")
    data = json.loads(out)
    assert code == EXIT_OK and data["b_bound"] == 2 and len(data["bananas"]) == 3
    assert all(set(b["multiplicity"].split("/")) and "/" in b["multiplicity"] for b in data["bananas"])


def test_bananas_single_b_and_zero_vector(capsys):
    code, out, _ = run(capsys, "bananas", "--g", "0", "--n", "4", "--A", "2,-2", "--b", "0")
    assert code == EXIT_OK and [b["b"] for b in json.loads(out)["bananas"]] == [0]
    code, out, _ = run(capsys, "bananas", "--g", "1", "--n", "2", "--A", "0,0")
    assert json.loads(out)["bananas"] == []


def test_bananas_proposition_mode(capsys):
    code, out, _ = run(capsys, "bananas", "--g", "0", "--n", "4", "--A", "1,1,1,-3", "--mode", "proposition")
    assert code == EXIT_OK and len(json.loads(out)["bananas"]) == 2


@pytest.mark.parametrize("argv", [
    ("bananas", "--g", "0", "--n", "4", "--A", "1,0"),
    ("bananas", "--g", "0", "--n", "4", "--A", "x"),
    ("bananas", "--n", "4", "--A", "1,-1"),
    ("verify-relation", "--g", "0", "--n", "4", "--A", "1,-1"),
    ("delta", "--curve", "missing.json"),
])
def test_invalid_exit_code(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == EXIT_INVALID and "invalid input" in err


def test_dr(capsys):
    code, out, _ = run(capsys, "dr", "--g", "1", "--n", "2", "--A", "1,-1")
    data = json.loads(out)
    assert code == EXIT_OK and data["r_independent"] and data["class"]["g"] == 1


def test_verify_splitting_cli(capsys, tmp_path):
    out_file = tmp_path / "r.json"
    code, _, _ = run(capsys, "verify-splitting", "--g", "0", "--n", "4", "--A", "2,-2", "--out", str(out_file))
    data = json.loads(out_file.read_text())
    assert code == EXIT_OK and data["passed"] and "runtime_seconds" not in data
    assert data["conventions"]["relation_psi_sign"] == -1
    code, out, _ = run(capsys, "verify-splitting", "--g", "0", "--n", "4", "--A", "2,-2", "--timings")
    assert "runtime_seconds" in json.loads(out)


def test_jobs_output_is_identical(capsys):
    argv = ("verify-relation", "--g", "0", "--n", "5", "--A", "2,-1,1,-3,1")
    _, serial, _ = run(capsys, *argv)
    _, parallel, _ = run(capsys, *argv, "--jobs", "3")
    assert serial == parallel and json.loads(serial)["passed"]


def test_fixture_record_then_compare_then_mismatch(capsys, tmp_path):
    argv = ("verify-splitting", "--g", "0", "--n", "4", "--A", "1,-1", "--fixtures", str(tmp_path))
    code, out, _ = run(capsys, *argv)
    assert code == EXIT_OK and json.loads(out)["fixture"].startswith("recorded")
    (path,) = (tmp_path / "v1" / "reports").iterdir()
    code, out, _ = run(capsys, *argv)
    assert code == EXIT_OK and json.loads(out)["fixture"].startswith("matches")
    stored = json.loads(path.read_text())
    stored["pairings"][0]["lhs"] = "7/1"
    path.write_text(json.dumps(stored))
    code, _, err = run(capsys, *argv)
    assert code == EXIT_MISMATCH and "mismatch" in err


def test_fixture_env(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("DRSPLIT_FIXTURES", str(tmp_path))
    code, _, _ = run(capsys, "dr", "--g", "1", "--n", "1", "--A", "1", "--k", "1")
    assert code == EXIT_OK and list((tmp_path / "v1" / "reports").iterdir())


def test_delta_from_fixture_curves(capsys):
    code, out, _ = run(capsys, "delta", "--curve", "fig3-case2.json", "--fixtures", str(REPO / "fixtures"))
    assert code == EXIT_OK and out == "a4*l4 - a3*l3 + (a2+a4)*l\n"


def test_delta_from_path(capsys, tmp_path):
    curve = REPO / "fixtures" / "v1" / "curves" / "fig3-case3.json"
    out_file = tmp_path / "d.json"
    code, out, _ = run(capsys, "delta", "--curve", str(curve), "--out", str(out_file))
    assert out.strip() == "a4*l4 - a3*l3 - (a2+a3)*l"
    assert json.loads(out_file.read_text())["delta"] == out.strip()


def test_delta_malformed(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{}")
    code, _, _ = run(capsys, "delta", "--curve", str(bad))
    assert code == EXIT_INVALID


STORED = sorted((REPO / "fixtures" / "v1" / "reports").glob("*.json"))


@pytest.mark.parametrize("path", STORED, ids=[p.stem for p in STORED])
def test_stored_reports_still_match(capsys, path):
    data = json.loads(path.read_text())
    kind = path.name.split("__")[0]
    command = {"splitting": "verify-splitting", "relation": "verify-relation", "dr": "dr"}[kind]
    inp = data["input"]
    code, out, _ = run(capsys, command, "--g", str(inp["g"]), "--n", str(inp["n"]),
                       "--A", ",".join(map(str, inp["A"])), "--k", str(inp["k"]),
                       "--fixtures", str(REPO / "fixtures"))
    assert code == EXIT_OK and json.loads(out)["fixture"].startswith("matches")
