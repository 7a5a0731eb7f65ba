"""Exit codes, JSON schema, and output determinism of the command line."""

import json

import numpy as np
import pytest

from hyperquadric.cli import main

SQRT2_STR = "1.41421356237309504880168872421"


def run_json(capsys, argv):
    rc = main(argv + ["--format", "json"])
    out = capsys.readouterr().out
    return rc, json.loads(out)


def test_table_quadric_tube(capsys):
    rc, payload = run_json(capsys, ["table", "--model", "quadric-tube",
                                    "--r", "1", "--m", "3"])
    assert rc == 0
    assert payload["alpha"] == pytest.approx(1.591892, abs=1e-5)
    assert payload["mu"] == pytest.approx(1.256367, abs=1e-5)
    assert payload["k"] == pytest.approx(payload["mu"], abs=1e-15)
    assert payload["alpha_mu_product"] == pytest.approx(2.0, abs=1e-12)
    assert sum(e["multiplicity"] for e in payload["entries"]) == 5


def test_table_horosphere(capsys):
    rc, payload = run_json(capsys, ["table", "--model", "horosphere", "--m", "4"])
    assert rc == 0
    assert payload["alpha"] == pytest.approx(1.414214, abs=1e-5)
    assert payload["mu"] == pytest.approx(1.414214, abs=1e-5)
    assert payload["lambda"] == 0.0
    assert payload["r"] is None


def test_table_rejects_negative_radius(capsys):
    assert main(["table", "--model", "quadric-tube", "--r", "-1"]) == 2
    assert "error" in capsys.readouterr().err


def test_table_requires_radius_for_tubes(capsys):
    assert main(["table", "--model", "realform-tube"]) == 2


def test_classify_cases(capsys):
    rc, payload = run_json(capsys, ["classify", "--k", "1"])
    assert rc == 0
    assert payload["case"] == "TubeAroundQuadric"
    assert payload["r"] == pytest.approx(0.623225, abs=1e-5)
    rc, payload = run_json(capsys, ["classify", "--k", SQRT2_STR])
    assert payload["case"] == "Horosphere" and payload["r"] is None
    rc, payload = run_json(capsys, ["classify", "--k", "2"])
    assert payload["case"] == "TubeAroundRealForm"
    assert payload["r"] == pytest.approx(0.623225, abs=1e-5)


def test_classify_rejects_nonpositive_k(capsys):
    assert main(["classify", "--k", "0"]) == 2
    assert main(["classify", "--k", "-3"]) == 2


def test_decompose_principal(capsys):
    rc, payload = run_json(capsys, ["decompose", "[[1,0],[0,0],[0,0]]"])
    assert rc == 0
    assert payload["kind"] == "principal"
    assert payload["t"] == 0.0
    assert payload["reconstruction_residual"] <= 1e-10


def test_decompose_isotropic(capsys):
    s = 1.0 / np.sqrt(2.0)
    vec = json.dumps([[s, 0.0], [0.0, s], [0.0, 0.0]])
    rc, payload = run_json(capsys, ["decompose", vec])
    assert rc == 0
    assert payload["kind"] == "isotropic"
    assert payload["q_modulus"] <= 1e-12


def test_decompose_regular(capsys):
    vec = json.dumps([[float(np.cos(0.3)), 0.0], [0.0, float(np.sin(0.3))], [0.0, 0.0]])
    rc, payload = run_json(capsys, ["decompose", vec])
    assert rc == 0
    assert payload["kind"] == "regular"
    assert payload["t"] == pytest.approx(0.3, abs=1e-9)


def test_decompose_error_paths(capsys):
    assert main(["decompose", "not json"]) == 2
    assert main(["decompose", "[[1,0],[0,0]]"]) == 2  # m = 2 too small
    assert main(["decompose", "[[2,0],[0,0],[0,0]]"]) == 2  # badly non-unit
    assert main(["decompose", "[[1,0],[0,0],[0,0]]", "--m", "4"]) == 2  # m mismatch
    capsys.readouterr()
    # within 1e-3 of unit: renormalized with a warning
    rc = main(["decompose", "[[1.0005,0],[0,0],[0,0]]"])
    captured = capsys.readouterr()
    assert rc == 0
    assert "renormalizing" in captured.err


def test_oracle_command(capsys):
    rc, payload = run_json(capsys, ["oracle", "--model", "quadric-tube",
                                    "--r", "0.5", "--m", "3", "--step", "1e-3"])
    assert rc == 0
    assert payload["max_residual"] <= 1e-7
    assert payload["ode"]["alpha"] == pytest.approx(payload["closed_form"]["alpha"],
                                                    abs=1e-7)
    assert main(["oracle", "--model", "horosphere", "--r", "1"]) == 2


def test_verify_exit_codes_and_schema(capsys):
    rc, payload = run_json(capsys, ["verify", "--suite", "decompose",
                                    "--m", "3", "--seed", "7", "--samples", "40"])
    assert rc == 0
    assert set(payload) == {"suite", "m", "seed", "checks", "overall"}
    assert payload["overall"] is True
    for check in payload["checks"]:
        assert set(check) == {"name", "residual", "tolerance", "pass"}
    assert main(["verify", "--suite", "nosuch"]) == 2
    # an impossible tolerance forces a verification failure
    capsys.readouterr()
    assert main(["verify", "--suite", "decompose", "--samples", "8",
                 "--tol", "-1"]) == 1


def test_verify_reports_are_byte_identical(capsys):
    argv = ["verify", "--suite", "curvature", "--m", "3", "--seed", "11",
            "--samples", "25", "--format", "json"]
    assert main(argv) == 0
    first = capsys.readouterr().out
    assert main(argv) == 0
    second = capsys.readouterr().out
    assert first == second


def test_verify_includes_sign_variant_note(capsys):
    rc, payload = run_json(capsys, ["verify", "--suite", "tubes", "--m", "3",
                                    "--samples", "10", "--step", "5e-3"])
    assert rc == 0
    names = [c["name"] for c in payload["checks"]]
    assert "normal_jacobi_sign_variant_info" in names
