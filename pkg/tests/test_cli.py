import json
import math
import subprocess
import sys

import pytest

from bridgepot.cli import main


def run_cli(*args):
    """Invoke main() in-process, capturing stdout/stderr."""
    import contextlib
    import io

    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = main(list(args))
    return code, out.getvalue(), err.getvalue()


BALL = '{"type":"ball","radius":1.0,"amplitude":-1.0}'


def test_kernel_f_example():
    code, out, _ = run_cli("kernel", "f", "--a", "1", "--b", "1", "--beta", "1.5", "--c", "1")
    assert code == 0
    rec = json.loads(out)
    assert rec["status"] == "converged"
    assert rec["value"] == pytest.approx(math.sqrt(math.pi), rel=1e-8)
    # value is inside [2 i_app, 4 i_app] = [f/2, f] here by the sandwich
    assert set(rec) >= {"value", "error", "status"}


def test_kernel_k0_example():
    code, out, _ = run_cli("kernel", "k0", "--d", "4", "--x", "2,0,0,0", "--y", "0,0,0,0")
    assert code == 0
    assert json.loads(out)["value"] == 0.25


def test_kernel_g_and_j():
    code, out, _ = run_cli("kernel", "g", "--t", "1", "--x", "0,0,0", "--y", "0,0,0")
    assert json.loads(out)["value"] == pytest.approx((4 * math.pi) ** -1.5)
    code, out, _ = run_cli("kernel", "j", "--x", "1,0,0", "--y", "0,0,0")
    assert json.loads(out)["value"] == pytest.approx(2 * math.sqrt(math.pi), rel=1e-10)
    code, out, _ = run_cli("kernel", "j", "--x", "1,0,0", "--y", "2,0,0", "--direct")
    assert code == 0


def test_transform_commands():
    code, out, _ = run_cli("transform", "newton", "--potential", BALL, "--x", "0,0,0")
    assert code == 0 and json.loads(out)["value"] == pytest.approx(0.5, rel=1e-9)
    code, out, _ = run_cli(
        "transform", "s", "--potential", '{"type":"constant","value":-0.7}',
        "--t", "2", "--x", "0,0,0", "--y", "0,0,0",
    )
    assert json.loads(out)["value"] == pytest.approx(1.4, rel=1e-9)
    code, out, _ = run_cli("transform", "k", "--potential", BALL, "--x", "1,0,0", "--y", "0,1,0")
    assert code == 0 and json.loads(out)["status"] == "converged"
    kv = json.loads(out)["value"]
    code, out, _ = run_cli("transform", "jt", "--potential", BALL, "--x", "1,0,0", "--y", "0,1,0")
    assert code == 0
    assert json.loads(out)["value"] == pytest.approx(2 * math.sqrt(math.pi) * kv, rel=1e-9)
    code, out, _ = run_cli(
        "transform", "n", "--potential", '{"type":"constant","value":-0.5}',
        "--t", "2", "--x", "0,0,0", "--y", "0,0,0",
    )
    assert json.loads(out)["value"] == pytest.approx((4 * math.pi) ** 1.5, rel=1e-9)


def test_norm_commands():
    code, out, _ = run_cli(
        "norm", "newton", "--potential", BALL, "--grid-density", "3", "--multistarts", "1"
    )
    rec = json.loads(out)
    assert code == 0
    assert rec["value"] == pytest.approx(0.5, rel=1e-6)
    assert "sup" in rec and rec["sup"]["evaluations"] > 0
    code, out, _ = run_cli("norm", "ldh", "--potential", BALL, "--d", "4")
    assert json.loads(out)["value"] == pytest.approx((math.pi**2 / 2) ** 0.5, rel=1e-9)


def test_norm_divergence_reported():
    code, out, _ = run_cli(
        "norm", "k", "--potential", '{"type":"counterexample_a"}', "--d", "4",
        "--grid-density", "3", "--multistarts", "1", "--nm-iters", "5",
        "--radii", "1e2,1e3,1e4,1e5",
    )
    rec = json.loads(out)
    assert code == 0  # a divergence verdict is a successful computation
    assert rec["status"] == "diverged" and rec["value"] == "inf"
    assert rec["diagnosis"]["verdict"] == "divergent"


def test_simulate_commands():
    args = (
        "simulate", "ratio", "--potential", '{"type":"constant","value":-0.5}',
        "--t", "2", "--x", "0,0,0", "--y", "0,0,0", "--paths", "50", "--steps", "8",
        "--seed", "3",
    )
    code, out, _ = run_cli(*args)
    assert code == 0
    assert json.loads(out)["value"] == pytest.approx(math.exp(-1.0), rel=1e-12)


def test_verify_command_and_csv():
    code, out, _ = run_cli("verify", "lemma_const")
    rec = json.loads(out)
    assert code == 0 and rec["passed"] is True
    assert rec["runtime_ms"] == 0.0  # suppressed unless --timings
    code, out, _ = run_cli("verify", "lemma_const", "--format", "csv")
    lines = out.strip().split("\n")
    assert lines[0] == "name,value,bound,passed"
    assert len(lines) == 4


def test_verify_cfg_override():
    code, out, _ = run_cli("verify", "jk0", "--cfg", "samples=5", "--cfg", "dims=[3]")
    rec = json.loads(out)
    assert code == 0 and rec["inputs"]["samples"] == 5


def test_counterexample_command():
    code, out, _ = run_cli(
        "counterexample", "--radii", "1e2,1e3,1e4,1e5", "--compact-terms", "0", "--d", "4"
    )
    rec = json.loads(out)
    assert code == 0 and rec["passed"] is True
    names = {f["name"] for f in rec["findings"]}
    assert "counterexample.k_truncation_verdict" in names


def test_exit_codes():
    # unknown subcommand -> 2 (argparse)
    code, _, _ = run_cli("frobnicate")
    assert code == 2
    # malformed potential -> 2
    code, _, err = run_cli("transform", "k", "--potential", "{bad json", "--x", "0,0,0", "--y", "0,0,0")
    assert code == 2 and "usage error" in err
    # bad point parse -> 2
    code, _, _ = run_cli("kernel", "g", "--t", "1", "--x", "a,b,c", "--y", "0,0,0")
    assert code == 2
    # dimension mismatch -> 2
    code, _, _ = run_cli("kernel", "g", "--t", "1", "--x", "0,0", "--y", "0,0,0")
    assert code == 2
    # computation that cannot converge in budget -> 1, no partial value printed
    code, out, err = run_cli(
        "kernel", "f", "--a", "1", "--b", "1", "--beta", "1.01", "--c", "1",
        "--rel-tol", "1e-14", "--max-subdivisions", "1",
    )
    assert code == 1 and out == "" and "computation error" in err
    # d < 3 -> 1 with the dedicated dimension message
    code, _, err = run_cli("kernel", "g", "--t", "1", "--x", "0,0", "--y", "0,0", "--d", "2")
    assert code == 1 and "d=1 and d=2" in err


def test_float_round_trip_format():
    code, out, _ = run_cli("kernel", "k0", "--x", "1,0,0", "--y", "0,1,0")
    val = json.loads(out)["value"]
    assert val == math.exp(-0.5)  # shortest repr round-trips exactly


def test_cli_determinism_subprocess():
    cmd = [
        sys.executable, "-m", "bridgepot.cli",
        "simulate", "s", "--potential", BALL,
        "--t", "1", "--x", "0,0,0", "--y", "1,0,0",
        "--paths", "500", "--steps", "32", "--seed", "9",
    ]
    a = subprocess.run(cmd, capture_output=True)
    b = subprocess.run(cmd, capture_output=True)
    assert a.returncode == 0
    assert a.stdout == b.stdout
