import json

import pytest

from ar1persist.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_coeffs_exact(capsys):
    code, out, _ = run_cli(capsys, "coeffs", "--order", "2", "--format", "exact")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines == ["K0 = 1/2", "K1 = 1/pi", "K2 = 1/pi - 2/pi^2"]


def test_coeffs_float(capsys):
    code, out, _ = run_cli(capsys, "coeffs", "--order", "0", "--format", "float")
    assert code == 0
    assert out.strip() == "K0 = 0.5"


def test_coeffs_order8_matches_reference(capsys):
    code, out, _ = run_cli(capsys, "coeffs", "--order", "8", "--format", "exact")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[5] == ("K5 = 43/(40*pi) - 19/pi^2 + 116/pi^3 - 280/pi^4 + 224/pi^5")
    assert lines[8] == ("K8 = 1/pi - 8843/(168*pi^2) + 16541/(18*pi^3) - 23147/(3*pi^4)"
                       " + 34944/pi^5 - 86688/pi^6 + 109824/pi^7 - 54912/pi^8")


def test_coeffs_negative_order(capsys):
    code, _, err = run_cli(capsys, "coeffs", "--order", "-1")
    assert code == 2
    assert "order" in err


def test_coeffs_csv(capsys):
    code, out, _ = run_cli(capsys, "--output", "csv", "coeffs", "--order", "1")
    assert code == 0
    rows = out.strip().splitlines()
    assert rows[0] == "n,K_n"
    assert rows[1] == "0,1/2"


def test_lambda_both_rho_zero(capsys):
    code, out, _ = run_cli(capsys, "--output", "json", "lambda", "--rho", "0",
                           "--method", "both", "--order", "8")
    assert code == 0
    payload = json.loads(out)
    assert payload["outputs"]["lambda_series"] == pytest.approx(0.5, abs=1e-10)
    assert payload["outputs"]["lambda_nystrom"] == pytest.approx(0.5, abs=1e-10)
    assert payload["outputs"]["difference"] < 1e-10


def test_lambda_both_cross_method(capsys):
    code, out, _ = run_cli(capsys, "--output", "json", "lambda", "--rho", "0.25",
                           "--method", "both", "--order", "40")
    assert code == 0
    payload = json.loads(out)
    assert payload["outputs"]["difference"] < 1e-8


def test_lambda_rejects_large_rho(capsys):
    code, _, err = run_cli(capsys, "lambda", "--rho", "0.99", "--method", "nystrom")
    assert code == 2
    assert "0.95" in err


def test_json_round_trip(capsys):
    _, out, _ = run_cli(capsys, "--output", "json", "radius",
                        "--order", "20", "--window", "8")
    rendered = out.strip()
    assert json.dumps(json.loads(rendered), indent=2, sort_keys=True) == rendered


def test_persistence_table_and_determinism(capsys):
    args = ("--output", "json", "persistence", "--rho", "0", "--paths", "1000000",
            "--nmax", "20", "--seed", "42", "--fit-lo", "5", "--fit-hi", "13")
    code, out1, _ = run_cli(capsys, *args)
    assert code == 0
    payload = json.loads(out1)
    rows = payload["outputs"]["table"]["rows"]
    p3 = rows[3][2]
    se = (0.0625 * (1 - 0.0625) / 1_000_000) ** 0.5
    assert abs(p3 - 0.0625) < 4 * se
    code, out2, _ = run_cli(capsys, *args)
    assert out1 == out2
    # provenance records the generator identity
    assert "PCG64" in payload["provenance"]["generator"]


def test_radius_default(capsys):
    code, out, _ = run_cli(capsys, "radius", "--order", "20", "--window", "8")
    assert code == 0
    assert "proven lower bound: 1/3" in out
    assert "ESTIMATE" in out


def test_radius_window_too_large(capsys):
    code, _, err = run_cli(capsys, "radius", "--order", "10", "--window", "20")
    assert code == 2
    assert "window" in err


def test_validate_bogus_suite(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["validate", "--suite", "bogus"])
    assert exc.value.code == 2


def test_validate_fast(capsys):
    code, out, _ = run_cli(capsys, "validate", "--suite", "fast")
    assert code == 0
    assert "checks passed" in out
