import csv
import io
import json
import subprocess
import sys

import pytest

from malmsten.cli import RunConfig, run
from malmsten.errors import DomainError
from malmsten.precision import PrecisionReal
from malmsten.reconstruct import FourierRow, RelationResult, fourier_partial_sum


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out)
    return code, out.getvalue()


def call_json(*argv):
    code, text = call(*argv, "--format", "json")
    return code, json.loads(text)


def test_verify_single():
    code, doc = call_json("verify", "eq-1.1", "--digits", "30")
    assert code == 0
    assert doc["command"] == "verify" and doc["status"] == "ok"
    [row] = doc["results"]
    assert row["status"] == "PASS" and row["id"] == "sin4x"
    assert PrecisionReal.from_json(row["residual"]).value < 1e-25


def test_verify_all_in_registry_order():
    code, doc = call_json("verify", "all", "--digits", "20", "--workers", "2")
    assert code == 0
    assert len(doc["results"]) >= 25
    assert all(r["status"] == "PASS" for r in doc["results"])
    assert doc["results"][0]["id"] == "sin4x"


def test_verify_unknown_id(capsys):
    code, _ = call("verify", "bogus-id")
    assert code == 2
    assert "bogus-id" in capsys.readouterr().err


def test_coeffs_rows():
    code, text = call("coeffs", "--family", "sin4nx", "--n", "3", "--digits", "60", "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(text)))
    assert rows[0]["coefficients"] == "-7"
    assert rows[2]["coefficients"] == "-161/45, 496/3, -2032"
    assert text.splitlines()[1].count('"') == 0 and '"-14/3, 124"' in text


def test_coeffs_xi():
    code, doc = call_json("coeffs", "--family", "xi", "--n", "4", "--digits", "60")
    assert code == 0
    row = doc["results"][3]
    assert row["coefficients_ascending"][::2] == ["277/258048", "-173/30720", "13/1536", "-1/256"]


def test_coeffs_unknown_family():
    assert call("coeffs", "--family", "nope", "--n", "1")[0] == 2


def test_poly_command():
    code, doc = call_json("poly", "--family", "lambda", "--n", "2", "--digits", "40")
    assert code == 0 and doc["results"][0]["status"] == "PASS"


def test_pslq_examples():
    code, doc = call_json("pslq", "pi", "beta(1)")
    assert code == 0
    assert doc["results"][0]["coefficients"] == [1, -4]
    code, doc = call_json("pslq", "F3:1", "zeta3-over-pi2")
    assert doc["results"][0]["coefficients"] == [1, 7]
    result = RelationResult.from_json(doc["results"][0])
    assert result.found


def test_pslq_none_up_to_bound():
    code, doc = call_json("pslq", "pi", "F5:0:2", "F5:0:3", "F5:0:4", "--digits", "60")
    assert code == 0
    assert doc["results"][0]["status"] == "none-up-to-bound"
    assert doc["config"]["max_height"] == 10**6


def test_pslq_precision_failure(capsys):
    code, _ = call("pslq", "pi", "ln2", "gamma", "lnpi", "--digits", "15")
    assert code == 1
    assert "--digits" in capsys.readouterr().err


def test_fourier_json_schema():
    code, doc = call_json("fourier", "--K", "1", "--digits", "20")
    assert code == 0
    [row] = doc["results"]
    assert set(row) == {"k", "partial_sum", "delta", "error_bound"}
    assert FourierRow.from_json(row).partial_sum.value == fourier_partial_sum(1, 20).value


def test_fourier_five_rows():
    code, doc = call_json("fourier", "--K", "5", "--digits", "20")
    deltas = [abs(FourierRow.from_json(r).delta.value) for r in doc["results"]]
    assert len(deltas) == 5 and all(a > b for a, b in zip(deltas, deltas[1:]))


def test_constants_and_env(monkeypatch):
    monkeypatch.setenv("MALMSTEN_DIGITS", "40")
    code, doc = call_json("constants", "zeta(3)", "beta(2)")
    assert code == 0 and doc["config"]["digits"] == 40
    assert doc["results"][0]["value"].startswith("1.2020569031595942853997381615114")


def test_bad_env(monkeypatch):
    monkeypatch.setenv("MALMSTEN_DIGITS", "lots")
    assert call("constants", "pi")[0] == 2


def test_integrate_and_divergence():
    code, doc = call_json("integrate", "F14:0")
    assert code == 0 and doc["results"][0]["transform"] == "log-pullback"
    assert call("integrate", "TRIG:cos4")[0] == 1


def test_global_flags_after_subcommand_and_before():
    a = call("constants", "pi", "--digits", "12")[1]
    b = call("--digits", "12", "constants", "pi")[1]
    assert a == b


def test_output_is_deterministic():
    first = call("--format", "json", "--seed", "5", "verify", "sin8x", "malmsten-zeta3")[1]
    second = call("--format", "json", "--seed", "5", "verify", "sin8x", "malmsten-zeta3")[1]
    assert first == second and json.loads(first)["config"]["seed"] == 5


def test_text_table():
    code, text = call("verify", "malmsten-zeta3", "--digits", "20")
    assert code == 0
    header, row = text.splitlines()
    assert header.split()[:2] == ["id", "status"] and "PASS" in row


def test_low_digits_rejected():
    assert call("constants", "pi", "--digits", "5")[0] == 2
    with pytest.raises(DomainError):
        RunConfig(digits=5)


def test_bad_format_is_usage_error():
    with pytest.raises(SystemExit) as info:
        run(["constants", "pi", "--format", "xml"], io.StringIO())
    assert info.value.code == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "malmsten", "verify", "bogus-id"], capture_output=True, text=True)
    assert proc.returncode == 2
