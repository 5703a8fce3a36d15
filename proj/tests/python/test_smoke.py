import json
import os
import subprocess

import pytest

CLI = os.environ.get("SEQMC_CLI")


def _core():
    return pytest.importorskip("seqmc")


def test_boundaries_start():
    seqmc = _core()
    t = seqmc.BoundaryTable(0.05)
    t.extend_to(5)
    assert t.upper_bounds() == [2, 3, 4, 5, 5]
    assert t.lower_bounds() == [-1] * 5


def test_run_and_interval():
    seqmc = _core()
    t = seqmc.BoundaryTable(0.05)
    r = seqmc.run_bernoulli(t, 0.2, seed=7)
    assert r.stopped and r.side == seqmc.Side.upper
    ci = seqmc.confidence_interval(t, r, 0.1, horizon=20000)
    assert ci.p_low <= r.p_hat <= ci.p_high


def test_generator_stream_and_truncation():
    seqmc = _core()
    t = seqmc.BoundaryTable(0.05)
    r = seqmc.run_bits(t, (0 for _ in range(5000)))
    assert r.stopped and r.side == seqmc.Side.lower and r.successes == 0
    r = seqmc.run_bits(t, iter([1] + [0] * 19))
    assert not r.stopped and r.steps == 20
    lo, hi = seqmc.interim_interval(t, 20)
    assert 0 <= lo <= hi <= 1


def test_naive_risk_and_chisq():
    seqmc = _core()
    assert abs(seqmc.naive_risk(0.11, 999, 0.1) - 0.146) < 5e-4
    assert seqmc.chisq_pvalue(0.0, 3) == 1.0


@pytest.mark.skipif(not CLI, reason="CLI path not provided")
def test_cli_run_is_deterministic():
    cmd = [CLI, "run", "--simulate-p", "0.2", "--seed", "7"]
    a = subprocess.run(cmd, capture_output=True, text=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, text=True, check=True).stdout
    assert a == b
    out = json.loads(a)
    assert out["seed"] == 7 and out["result"]["side"] == "upper"


@pytest.mark.skipif(not CLI, reason="CLI path not provided")
def test_cli_rejects_large_epsilon():
    r = subprocess.run([CLI, "run", "--simulate-p", "0.2", "--eps", "0.3"], capture_output=True, text=True)
    assert r.returncode == 2
    assert "1/4" in r.stderr
