import json
import os
import subprocess
import sys

import pytest

PKG = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


def run_cli(*args, env_extra=None):
    env = dict(os.environ)
    env["PYTHONPATH"] = os.path.join(PKG, "src")
    if env_extra:
        env.update(env_extra)
    return subprocess.run(
        [sys.executable, "-m", "qbfunc.cli", *args],
        capture_output=True, text=True, env=env)


def test_usage_error_exit_code():
    p = run_cli("compute", "--family", "Z", "--rank", "3")
    assert p.returncode == 1
    p = run_cli("compute", "--family", "A", "--rank", "4")  # not regular
    assert p.returncode == 1


def test_derive_and_cache(tmp_path):
    d = str(tmp_path)
    p = run_cli("derive", "--family", "A", "--rank", "3", "--seed", "7",
                "--cache-dir", d, "--json")
    assert p.returncode == 0, p.stderr
    payload = json.loads(p.stdout)
    assert payload["generators"] == 4
    assert payload["rules"] == 6
    assert payload["schema"] == 1
    cache_file = os.path.join(d, payload["cache"])
    first = open(cache_file, "rb").read()
    os.remove(cache_file)
    p2 = run_cli("derive", "--family", "A", "--rank", "3", "--seed", "7",
                 "--cache-dir", d, "--json")
    assert p2.returncode == 0
    assert open(cache_file, "rb").read() == first           # byte identical
    assert p2.stdout == p.stdout


def test_compute_json_deterministic(tmp_path):
    d = str(tmp_path)
    args = ("compute", "--family", "A", "--rank", "3", "--seed", "7",
            "--cache-dir", d, "--json")
    p1 = run_cli(*args)
    p2 = run_cli(*args)
    assert p1.returncode == 0, p1.stderr
    assert p1.stdout == p2.stdout
    payload = json.loads(p1.stdout)
    assert payload["theorem_ok"] and payload["classical_ok"]
    assert payload["constant"] == "1"
    assert payload["exponents"] == ["1", "2"]


def test_compute_human_output(tmp_path):
    p = run_cli("compute", "--family", "D", "--rank", "4", "--i0", "1",
                "--seed", "7", "--cache-dir", str(tmp_path))
    assert p.returncode == 0, p.stderr
    assert "[s+1]" in p.stdout and "[s+3]" in p.stdout
    assert "(s+1)(s+3)" in p.stdout


def test_verify_subset(tmp_path):
    p = run_cli("verify", "--family", "A", "--rank", "3", "--seed", "7",
                "--cache-dir", str(tmp_path), "--checks",
                "norms,confluence,hilbert", "--json")
    assert p.returncode == 0, p.stderr
    payload = json.loads(p.stdout)
    assert set(payload["checks"]) == {"norms", "confluence", "hilbert"}
    assert payload["ok"]


def test_budget_exit_code(tmp_path):
    p = run_cli("derive", "--family", "C", "--rank", "3", "--seed", "7",
                "--budget-seconds", "0.0")
    assert p.returncode == 3


def test_env_cache_dir(tmp_path):
    d = str(tmp_path)
    p = run_cli("derive", "--family", "A", "--rank", "3", "--seed", "7",
                "--json", env_extra={"QB_CACHE_DIR": d})
    assert p.returncode == 0, p.stderr
    assert any(name.endswith(".table") for name in os.listdir(d))
