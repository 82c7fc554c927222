import json
import subprocess
import sys

import pytest

from fusionforge.cli import main

SCENARIOS = [
    ["verify-stability", "--group", "Q8", "--char-subgroup", "C2"],
    ["verify-stability", "--group", "C4"],
    ["build-gamma", "--group", "C4"],
    ["check-park", "--group", "Q8", "--char-subgroup", "C2"],
    ["mackey", "--group", "C2^2"],
    ["bigcenter", "--group", "ES(27,exp_p)"],
    ["run-example", "cyclic", "--p", "2", "--N", "2"],
    ["run-example", "quaternion", "--p", "2", "--N", "3"],
    ["run-example", "elem_abelian", "--p", "2", "--N", "2"],
    ["plan", "--group", "ES(27,exp_p)"],
]


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("argv", SCENARIOS, ids=lambda a: " ".join(a[:2]))
def test_scenarios_pass_and_emit_schema(argv, capsys):
    code, out, _ = run(argv + ["--json"], capsys)
    assert code == 0
    data = json.loads(out)
    assert set(data) == {"scenario", "inputs", "claims", "elapsed_ms"}
    assert all(c["verdict"] == "pass" for c in data["claims"])


def test_text_output(capsys):
    code, out, _ = run(["verify-stability", "--group", "Q8", "--char-subgroup", "C2"], capsys)
    assert code == 0
    assert "[pass] left-stable" in out and out.strip().endswith("verdict: pass")


def test_failed_claim_exit_code(capsys):
    code, out, _ = run(["verify-stability", "--group", "C4", "--regular", "--json"], capsys)
    assert code == 1
    data = json.loads(out)
    bad = next(c for c in data["claims"] if c["id"] == "left-stable")
    assert bad["verdict"] == "fail" and "discrepancy" in bad["witness"]
    code, _, _ = run(["verify-stability", "--group", "Q8", "--char-subgroup", "C4"], capsys)
    assert code == 1


@pytest.mark.parametrize("argv", [
    ["verify-stability", "--group", "Q9"],
    ["verify-stability", "--group", "Q8", "--char-subgroup", "C8"],
    ["run-example", "quaternion", "--p", "3"],
    ["run-example", "torus"],
    ["plan"],
    ["plan", "--group", "C4", "--bogus"],
    ["bigcenter", "--group", "Sym3"],
    [],
])
def test_usage_errors(argv, capsys):
    code, _, err = run(argv, capsys)
    assert code == 2
    assert err


def test_caps_flag_is_enforced(capsys):
    code, _, err = run(["verify-stability", "--group", "C8", "--max-s-order", "4"], capsys)
    assert code == 2 and "exceeds" in err
    code, _, _ = run(["verify-stability", "--group", "C8"], capsys)
    assert code == 0


def test_env_override_warns():
    env = {"FUSIONFORGE_MAX_ORDER": "4", "PATH": ""}
    proc = subprocess.run([sys.executable, "-m", "fusionforge", "verify-stability", "--group", "C8"],
                          capture_output=True, text=True, env=env)
    assert proc.returncode == 2
    assert "FUSIONFORGE_MAX_ORDER" in proc.stderr


@pytest.mark.parametrize("argv", SCENARIOS[:4] + SCENARIOS[-1:], ids=lambda a: " ".join(a[:2]))
def test_byte_identical_across_processes(argv):
    outs = set()
    for seed in ("0", "7"):
        proc = subprocess.run([sys.executable, "-m", "fusionforge", *argv, "--json"],
                              capture_output=True, env={"PYTHONHASHSEED": seed, "PATH": ""})
        assert proc.returncode == 0
        outs.add(proc.stdout)
    assert len(outs) == 1
