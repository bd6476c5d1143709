import json
import subprocess
import sys

import pytest

from lapoly.cli import EXIT_BUDGET, EXIT_INPUT, EXIT_MISMATCH, EXIT_OK, main


def run_cli(*args):
    return subprocess.run(
        [sys.executable, "-m", "lapoly.cli", *args],
        capture_output=True,
        text=True,
    )


def test_build_boundary_simplex():
    r = run_cli("build", "--boundary-simplex", "3", "--k", "2")
    assert r.returncode == EXIT_OK
    out = json.loads(r.stdout)
    res = out["results"]
    assert res["vertex_count"] == 4
    assert res["dim"] == 2
    assert res["facet_count"] == 4
    assert "digest" in out["inputs"]


def test_build_complex_files(tmp_path):
    plain = tmp_path / "cycle4.cplx"
    plain.write_text("order: 1 2 3 4\n1 2\n2 3\n3 4\n1 4\n", encoding="utf-8")
    swapped = tmp_path / "cycle4_swapped.cplx"
    swapped.write_text("order: 1 2 4 3\n1 2\n2 3\n3 4\n1 4\n", encoding="utf-8")
    r = run_cli("build", "--complex", str(plain), "--k", "1")
    assert r.returncode == EXIT_OK
    out = json.loads(r.stdout)
    assert out["results"]["dim"] == 3
    assert out["results"]["vertex_count"] == 4
    r = run_cli("build", "--complex", str(swapped), "--k", "1")
    out = json.loads(r.stdout)
    assert out["results"]["dim"] == 2


def test_build_input_errors(tmp_path):
    r = run_cli("build", "--k", "1")
    assert r.returncode == EXIT_INPUT
    r = run_cli("build", "--boundary-simplex", "3", "--complex", "x", "--k", "1")
    assert r.returncode == EXIT_INPUT
    bad = tmp_path / "bad.cplx"
    bad.write_text("order: 1 2\n1 3\n", encoding="utf-8")
    r = run_cli("build", "--complex", str(bad), "--k", "0")
    assert r.returncode == EXIT_INPUT
    r = run_cli("build", "--boundary-simplex", "3", "--k", "5")
    assert r.returncode == EXIT_INPUT


@pytest.mark.parametrize(
    "d,method,expected",
    [
        (2, "structural", [1, 10, 5]),
        (1, "ehrhart", [1, 2, 0]),
        (3, "census", [1, 22, 78, 24, 0]),
        (3, "fundamental", [1, 22, 78, 24, 0]),
        (7, "structural",
         [1, 926, 157566, 1135846, 2188310, 1150800, 145600, 3920, 0]),
    ],
)
def test_hstar_methods(d, method, expected):
    r = run_cli("hstar", "--d", str(d), "--method", method)
    assert r.returncode == EXIT_OK, r.stderr
    out = json.loads(r.stdout)
    assert out["results"]["hstar"] == expected
    assert out["results"]["volume"] == sum(expected)


def test_hstar_flags():
    r = run_cli("hstar", "--d", "5")
    out = json.loads(r.stdout)
    res = out["results"]
    assert res["real_rooted"] is True
    assert res["unimodal"] is True and res["peak"] == 3
    assert res["palindromic"] is False


def test_hstar_budget_and_input_errors():
    r = run_cli("--budget-cells", "100", "hstar", "--d", "4", "--method", "census")
    assert r.returncode == EXIT_BUDGET
    r = run_cli("hstar", "--d", "6", "--method", "fundamental")
    assert r.returncode == EXIT_INPUT
    r = run_cli("--budget-points", "50", "hstar", "--d", "3",
                "--method", "ehrhart")
    assert r.returncode == EXIT_BUDGET


def test_budget_env_override(tmp_path):
    import os

    env = dict(os.environ)
    env["LAPOLY_BUDGET_CELLS"] = "10"
    r = subprocess.run(
        [sys.executable, "-m", "lapoly.cli", "hstar", "--d", "2",
         "--method", "census"],
        capture_output=True, text=True, env=env,
    )
    assert r.returncode == EXIT_BUDGET


def test_verify_table_pass_and_determinism():
    r1 = run_cli("verify-table", "--max-d", "4")
    r2 = run_cli("verify-table", "--max-d", "4")
    assert r1.returncode == EXIT_OK
    out1 = json.loads(r1.stdout)
    out2 = json.loads(r2.stdout)
    assert out1["results"] == out2["results"]
    assert out1["inputs"]["digest"] == out2["inputs"]["digest"]
    rows = out1["results"]["rows"]
    for d in range(1, 5):
        row = rows[str(d)]
        assert row["match"] is True
        assert set(row["oracles"]) >= {"census", "ehrhart"}
        for vec in row["oracles"].values():
            assert vec == row["structural"]


def test_verify_table_tampered_reference(tmp_path):
    from lapoly.cli import load_reference_table

    table = load_reference_table()
    rows = {str(d): list(table[d]) for d in table}
    rows["2"][1] = 11
    bad = tmp_path / "tampered.json"
    bad.write_text(json.dumps({"rows": rows}), encoding="utf-8")
    r = run_cli("verify-table", "--max-d", "3", "--table", str(bad))
    assert r.returncode == EXIT_MISMATCH
    out = json.loads(r.stdout)
    assert out["results"]["rows"]["2"]["diff"] == [
        {"index": 1, "computed": 10, "reference": 11}
    ]


def test_main_entry_point(capsys):
    rc = main(["hstar", "--d", "2"])
    assert rc == EXIT_OK
    out = json.loads(capsys.readouterr().out)
    assert out["results"]["hstar"] == [1, 10, 5]
