"""Exit codes, report documents, and input validation of the console entry point."""

import csv
import json

import pytest

from lfverify.cli import main


def run_constants(tmp_path, *extra):
    out = tmp_path / "report.json"
    code = main(["constants", "--out", str(out), *extra])
    return code, json.loads(out.read_text())


def test_constants_document_shape(tmp_path):
    code, doc = run_constants(tmp_path)
    # the final negative constant misses its claimed bound, so the honest
    # exit status is failure even though 26 of 27 records pass
    assert code == 1
    assert doc["schema_version"] == "1"
    assert len(doc["constants"]) == 27
    by_name = {r["name"]: r for r in doc["constants"]}
    assert by_name["c11"]["pass"] is True
    assert abs(by_name["c11"]["computed"]["re"] - 3.61226) < 1e-5
    failed = [r["name"] for r in doc["constants"] if not r["pass"]]
    assert failed == ["c3_real"]
    assert doc["zeros"] is None
    assert doc["identities"] == []
    assert len(doc["notes"]) == 3
    assert doc["meta"]["quadrature_tol"] == 1e-10
    assert "timestamp" in doc["meta"]


def test_constants_tol_flag_propagates(tmp_path):
    code, doc = run_constants(tmp_path, "--tol", "1e-08")
    assert code == 1
    assert doc["meta"]["quadrature_tol"] == 1e-8


def test_constants_stdout_json(capsys):
    code = main(["constants"])
    assert code == 1
    doc = json.loads(capsys.readouterr().out)
    assert doc["schema_version"] == "1"


def test_constants_markdown(tmp_path):
    out = tmp_path / "report.md"
    code = main(["constants", "--format", "markdown", "--out", str(out)])
    assert code == 1
    text = out.read_text()
    assert text.startswith("# lfverify report")
    assert "| name | computed | claim | claimed | tolerance | pass |" in text
    assert text.count("| NO |") == 1
    assert "c3_real" in text


def test_constants_bad_out_path():
    assert main(["constants", "--out", "/nonexistent-dir/x.json"]) == 2


def test_report_validates_against_packaged_schema(tmp_path):
    jsonschema = pytest.importorskip("jsonschema")
    import lfverify
    from pathlib import Path

    schema = json.loads(
        (Path(lfverify.__file__).parent / "report_schema.json").read_text()
    )
    _, doc = run_constants(tmp_path)
    jsonschema.validate(doc, schema)

    code = main(
        ["identities", "--max-n", "50", "--moduli", "3", "--out", str(tmp_path / "i.json")]
    )
    assert code == 0
    jsonschema.validate(json.loads((tmp_path / "i.json").read_text()), schema)


def test_identities_small_run(tmp_path):
    out = tmp_path / "identities.json"
    code = main(["identities", "--max-n", "300", "--moduli", "3", "--out", str(out)])
    assert code == 0
    doc = json.loads(out.read_text())
    names = [r["name"] for r in doc["identities"]]
    assert names == [
        "divisor_sum_mod3",
        "euler_product_mod3",
        "coefficient_bounds_mod3",
        "local_factor_cases",
        "local_factor_envelope",
    ]
    assert all(r["pass"] for r in doc["identities"])
    assert doc["constants"] == []
    assert doc["meta"]["parameters"] == {"max_n": 300, "moduli": [3]}


def test_identities_input_validation(tmp_path):
    assert main(["identities", "--max-n", "0"]) == 2
    assert main(["identities", "--max-n", "2000000"]) == 2
    assert main(["identities", "--moduli", "3,x"]) == 2
    assert main(["identities", "--moduli", ","]) == 2
    # no real primitive character mod 6
    assert main(["identities", "--max-n", "10", "--moduli", "6"]) == 2


def test_zeros_happy_path(tmp_path, capsys):
    csv_path = tmp_path / "z3.csv"
    code = main(["zeros", "--modulus", "3", "--t-max", "12", "--csv", str(csv_path)])
    assert code == 0
    line = capsys.readouterr().out.strip()
    assert line.startswith("2 zeros ->")
    assert "below floor" in line
    with open(csv_path, newline="") as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == 2
    assert abs(float(rows[0]["gamma"]) - 8.039737) < 1e-5
    assert abs(float(rows[1]["gamma"]) - 11.249206) < 1e-5


def test_zeros_json_report(tmp_path):
    csv_path = tmp_path / "z4.csv"
    out = tmp_path / "z4.json"
    code = main(
        [
            "zeros", "--modulus", "4", "--t-max", "15",
            "--csv", str(csv_path), "--out", str(out),
        ]
    )
    assert code == 0
    doc = json.loads(out.read_text())
    assert doc["zeros"] == str(csv_path)
    params = doc["meta"]["parameters"]
    assert params["modulus"] == 4
    assert params["alpha_hat"] > 0


def test_zeros_empty_segment(tmp_path, capsys):
    csv_path = tmp_path / "empty.csv"
    code = main(["zeros", "--modulus", "4", "--t-max", "0.01", "--csv", str(csv_path)])
    assert code == 0
    assert capsys.readouterr().out.startswith("0 zeros")
    with open(csv_path, newline="") as fh:
        assert list(csv.DictReader(fh)) == []


def test_zeros_input_validation(tmp_path):
    assert main(["zeros", "--modulus", "0", "--t-max", "10"]) == 2
    assert main(["zeros", "--modulus", "6", "--t-max", "10"]) == 2
    assert main(["zeros", "--modulus", "4", "--t-max", "-1"]) == 2
    assert main(["zeros", "--modulus", "4", "--t-max", "10", "--step", "0.5"]) == 2
    assert main(["zeros", "--modulus", "4", "--t-max", "10", "--char-index", "5"]) == 2
    assert (
        main(["zeros", "--modulus", "4", "--t-max", "10", "--alpha-hat", "-1"]) == 2
    )
    assert (
        main(
            ["zeros", "--modulus", "4", "--t-max", "10", "--csv", "/nonexistent-dir/z.csv"]
        )
        == 2
    )


def test_argparse_guards():
    with pytest.raises(SystemExit):
        main([])
    with pytest.raises(SystemExit):
        main(["constants", "--format", "yaml"])
