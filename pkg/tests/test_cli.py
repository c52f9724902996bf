import json
import os
import subprocess
import sys

import pytest

from negbeta.cli import parse_beta, run
from negbeta.dynamics import PrecisionConfig
from negbeta.errors import NegBetaError


def invoke(argv, env=None):
    proc = subprocess.run(
        [sys.executable, "-m", "negbeta.cli", *argv],
        capture_output=True, text=True,
        env={**os.environ, **(env or {})},
    )
    return proc.returncode, proc.stdout, proc.stderr


def envelope(argv, env=None):
    code, out, err = invoke([*argv, "--format", "json"], env=env)
    assert code == 0, err
    return json.loads(out)


def strip_timing(env):
    return {k: v for k, v in env.items() if k != "timing_ms"}


def test_analyze_text_contains_polynomial_and_value():
    code, out, _ = invoke(["analyze", "4321", "--format", "text"])
    assert code == 0
    assert "x^3 - 2x^2 - x + 1" in out
    assert "2.247" in out


def test_analyze_length_one_convention():
    env = envelope(["analyze", "1"])
    assert env["results"]["b_minus"] == "1"
    assert env["results"]["convention"] is True


def test_count_b1_text():
    code, out, _ = invoke(["count-b1", "6"])
    assert code == 0
    assert out.strip() == "2 5 12 19 34"


def test_spectrum_csv():
    code, out, _ = invoke(["spectrum", "3", "--format", "csv"])
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "b_minus,polynomial,permutations"
    assert lines[1].startswith("1,x - 1,123 132")
    assert lines[2].startswith("1.618034,x^2 - x - 1,312")


def test_invert_json():
    env = envelope(["invert", "(2)"])
    res = env["results"]
    assert res["pi"] == "1243"
    assert res["verified"] is True
    assert res["b_minus"] == "2"
    assert res["rho"] == "21" and res["y"] == [0, 2] and res["c"] == 2


def test_expansion_rational_and_poly_beta():
    code, out, _ = invoke(["expansion", "--beta", "2"])
    assert code == 0 and out.strip() == "(2)"
    code, out, _ = invoke(["expansion", "--beta", "poly:-1,-1,1:1"])
    assert code == 0 and out.strip() == "1(0)"
    code, out, _ = invoke(["expansion", "--beta", "7/3", "--digits", "10"])
    assert code == 0 and "not yet periodic" in out


def test_member_subcommand():
    code, out, _ = invoke(["member", "110010(2)", "--beta", "2"])
    assert code == 0 and out.strip() == "false"
    code, out, _ = invoke(["member", "110010(2)", "--beta", "21/10"])
    assert code == 0 and out.strip() == "true"


def test_pat_subcommand():
    code, out, _ = invoke(["pat", "1(100)", "4"])
    assert code == 0 and out.strip() == "3421"


def test_realize_subcommand():
    env = envelope(["realize", "4321"])
    assert env["results"]["min_alphabet"] == 3


def test_verify_subcommand():
    env = envelope(["verify", "1423"])
    assert env["results"]["passed"] is True


def test_extremal_subcommand():
    code, out, _ = invoke(["extremal", "4"])
    assert code == 0
    assert "2.247" in out and "4321" in out


def test_domain_error_exit_code():
    code, _, err = invoke(["analyze", "4421"])
    assert code == 2
    assert "malformed-permutation" in err


def test_malformed_word_exit_code():
    code, _, err = invoke(["invert", "abc"])
    assert code == 2


def test_envelope_deterministic_across_runs_and_jobs():
    first = envelope(["count-b1", "5"])
    second = envelope(["count-b1", "5"])
    jobs2 = envelope(["count-b1", "5", "--jobs", "2"])
    assert strip_timing(first) == strip_timing(second)
    assert strip_timing(first)["results"] == strip_timing(jobs2)["results"]


def test_envelope_schema_fields():
    env = envelope(["analyze", "3421"])
    assert env["schema"] == "negbeta/1"
    assert env["command"][0] == "analyze"
    assert "precision_bits" in env and "timing_ms" in env
    assert env["results"]["b_minus"] == "1"
    assert env["results"]["b1_exponent"] == 2


def test_precision_env_var_and_flag():
    env = envelope(["analyze", "3421"], env={"NEGBETA_PRECISION": "512"})
    assert env["precision_bits"] == 512
    env = envelope(["analyze", "3421", "--precision", "256"],
                   env={"NEGBETA_PRECISION": "512"})
    assert env["precision_bits"] == 256


def test_parse_beta_forms():
    p = PrecisionConfig()
    assert parse_beta("2", p).rational == 2
    assert parse_beta("21/10", p).rational.denominator == 10
    golden = parse_beta("poly:-1,-1,1:1", p)
    assert abs(float(golden) - 1.618033988) < 1e-8
    with pytest.raises(NegBetaError):
        parse_beta("poly:-1,-1,1:5", p)
    # x^2 - 3x + 1 has two real roots but only one above 1
    assert abs(float(parse_beta("poly:1,-3,1:1", p)) - 2.618033988) < 1e-8


def test_global_flags_accepted_before_subcommand():
    code, out, _ = invoke(["--format", "json", "count-b1", "4"])
    assert code == 0
    assert json.loads(out)["results"]["counts"] == [2, 5, 12]
