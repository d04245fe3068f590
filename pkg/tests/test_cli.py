import json
import os
import subprocess
import sys

from clag.clsets import kset_from_indices, kset_to_json, point_pencil
from clag.geometry import ambient


def run_cli(*argv, env=None):
    full_env = dict(os.environ)
    if env:
        full_env.update(env)
    return subprocess.run([sys.executable, "-m", "clag.cli", *argv],
                          capture_output=True, text=True, env=full_env)


def test_scheme_command(tmp_path):
    out = tmp_path / "scheme.json"
    r = run_cli("scheme", "--n", "3", "--q", "2", "--brute-force",
                "--out", str(out))
    assert r.returncode == 0
    doc = json.loads(out.read_text())
    assert doc["P"][0] == ["1", "12", "3", "12"]
    assert doc["brute_force"]["diff"] == []
    assert doc["seed"] == 0


def test_scheme_hyperplanes_adjudication(tmp_path):
    out = tmp_path / "hyp.json"
    r = run_cli("scheme", "--n", "3", "--q", "2", "--hyperplanes",
                "--brute-force", "--out", str(out))
    assert r.returncode == 0
    doc = json.loads(out.read_text())
    entries = {e["entry"]: e for e in doc["adjudication"]["entries"]}
    assert entries["P[0][2]"]["adopted"]["matches_brute_force"]
    assert entries["P[0][2]"]["variant"]["valency_row_sum"] is False
    assert entries["P[1][2]"]["adopted"]["orthogonality"]


def test_scheme_table_format():
    r = run_cli("scheme", "--n", "3", "--q", "2", "--format", "table")
    assert r.returncode == 0
    assert "P =" in r.stdout and "Q =" in r.stdout
    assert "12" in r.stdout


def test_scheme_guard_path(tmp_path):
    r = run_cli("scheme", "--n", "5", "--q", "4", "--brute-force",
                "--out", str(tmp_path / "big.json"))
    assert r.returncode == 0
    doc = json.loads((tmp_path / "big.json").read_text())
    assert "skipped" in doc["brute_force"]


def test_search_command(tmp_path):
    out = tmp_path / "cert.json"
    r = run_cli("search", "--n", "3", "--q", "2", "--k", "1", "--x", "1",
                "--out", str(out))
    assert r.returncode == 0
    cert = json.loads(out.read_text())
    assert cert["solution_count"] == 8


def test_search_nonexistence(tmp_path):
    out = tmp_path / "cert2.json"
    r = run_cli("search", "--n", "3", "--q", "2", "--x", "2",
                "--out", str(out))
    assert r.returncode == 0
    assert json.loads(out.read_text())["solution_count"] == 0


def test_search_byte_identical(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run_cli("search", "--n", "3", "--q", "2", "--x", "1", "--out", str(a))
    run_cli("search", "--n", "3", "--q", "2", "--x", "1", "--out", str(b))
    assert a.read_bytes() == b.read_bytes()


def test_verify_pencil(tmp_path):
    space = ambient(3, 2, "affine")
    pen = point_pencil(space, (1, 0, 0, 0), 1)
    setfile = tmp_path / "pencil.json"
    setfile.write_text(json.dumps(kset_to_json(pen)))
    out = tmp_path / "verdict.json"
    r = run_cli("verify", "--set", str(setfile), "--all-checks",
                "--out", str(out))
    assert r.returncode == 0
    doc = json.loads(out.read_text())
    assert doc["is_cameron_liebler"] and doc["x"] == "1"
    statuses = {name: c["status"] for name, c in doc["checks"].items()}
    assert all(s == "pass" for s in statuses.values())
    assert "certificate" in doc["checks"]["definitional"]


def test_verify_single_line_fails(tmp_path):
    space = ambient(3, 2, "affine")
    setfile = tmp_path / "one.json"
    setfile.write_text(json.dumps(kset_to_json(kset_from_indices(space, 1, [0]))))
    r = run_cli("verify", "--set", str(setfile))
    assert r.returncode == 1
    doc = json.loads(r.stdout)
    assert doc["checks"]["integrality"]["status"] == "fail"
    assert doc["checks"]["definitional"]["status"] == "fail"


def test_verify_empty_set(tmp_path):
    space = ambient(3, 2, "affine")
    setfile = tmp_path / "empty.json"
    setfile.write_text(json.dumps(kset_to_json(kset_from_indices(space, 1, []))))
    r = run_cli("verify", "--set", str(setfile))
    assert r.returncode == 0
    assert json.loads(r.stdout)["x"] == "0"


def test_verify_malformed_input(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    r = run_cli("verify", "--set", str(bad))
    assert r.returncode == 2
    assert "malformed" in r.stderr


def test_spread_command(tmp_path):
    out = tmp_path / "spread.json"
    r = run_cli("spread", "--type", "2", "--n", "3", "--q", "2",
                "--at-infinity", "0:0:0:1", "--out", str(out))
    assert r.returncode == 0
    doc = json.loads(out.read_text())
    assert doc["size"] == 4 and doc["verified"] and doc["type"] == "II"


def test_spread_type1_and_type3(tmp_path):
    r = run_cli("spread", "--type", "1", "--n", "3", "--q", "2", "--affine",
                "--out", str(tmp_path / "s1.json"))
    assert r.returncode == 0
    assert json.loads((tmp_path / "s1.json").read_text())["size"] == 4
    r = run_cli("spread", "--type", "3", "--n", "3", "--q", "2",
                "--pi", "0:1:0:0;0:0:1:0",
                "--choices", "0:1:0:0|0:0:1:0",
                "--out", str(tmp_path / "s3.json"))
    assert r.returncode == 0
    doc = json.loads((tmp_path / "s3.json").read_text())
    assert doc["size"] == 4 and doc["type"] == "III+"


def test_spread_usage_errors():
    assert run_cli("spread", "--type", "2", "--n", "3", "--q", "2").returncode == 2
    r = run_cli("spread", "--type", "1", "--n", "4", "--q", "2")
    assert r.returncode == 2  # divisibility violated


def test_project_command(tmp_path):
    space = ambient(4, 2, "affine")
    pen = point_pencil(space, (1, 0, 0, 0, 0), 2)
    setfile = tmp_path / "pen2.json"
    setfile.write_text(json.dumps(kset_to_json(pen)))
    out = tmp_path / "img.json"
    r = run_cli("project", "--set", str(setfile), "--axis", "0:0:0:0:1",
                "--out", str(out))
    assert r.returncode == 0
    doc = json.loads(out.read_text())
    assert doc["x"] == "1" and doc["is_cameron_liebler"]
    assert doc["same_parameter"]


def test_usage_error_exit_code():
    assert run_cli("search", "--n", "3").returncode == 2
    assert run_cli().returncode == 2


def test_size_guard_env(tmp_path):
    r = run_cli("search", "--n", "3", "--q", "3", "--x", "0",
                env={"CLAG_SIZE_GUARD": "50"})
    assert r.returncode == 2
    assert "scale exceeded" in r.stderr


def test_seed_recorded(tmp_path):
    out = tmp_path / "c.json"
    run_cli("search", "--n", "3", "--q", "2", "--x", "0", "--seed", "42",
            "--out", str(out))
    assert json.loads(out.read_text())["seed"] == 42
