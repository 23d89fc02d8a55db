import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from lcak.catalogs import CATALOG_NAMES, catalog, catalog_entry
from lcak.cli import main
from lcak.errors import ParseError, ValidationError
from lcak.fuzzing import fuzz, summary_to_json
from lcak.specfile import Report, load_spec, run_report

GOLDEN = Path(__file__).parent / "golden"

A41_SPEC = """
{
  "dim": 4,
  "name": "A4_1",
  "brackets": [
    {"i": 2, "j": 4, "coefficients": {"1": "1"}},
    {"i": 3, "j": 4, "coefficients": {"2": "1"}}
  ],
  "J": "split",
  "g": "identity"
}
"""


def test_catalog_entries_all_validate():
    entries = catalog()
    assert set(entries) == set(CATALOG_NAMES)
    for name, s in entries.items():
        assert s.alg.validate().ok, name
        assert s.validation.ok, name
        assert s.exact, name


def test_catalog_expected_flags():
    from lcak.conditions import classify_metric
    rep = classify_metric(catalog_entry("A4_1"))
    assert rep.flags["pluricanonical"] and not rep.flags["vaisman"]
    from lcak import connection, arith
    s = catalog_entry("abelian_kahler")
    dth = connection.covariant_one_form(s, s.lee_form().theta)
    assert dth.max_abs() == 0
    img = catalog_entry("A4_8").nijenhuis_image()
    assert len(img) == 2 and all(v[0] == 0 and v[3] == 0 for v in img)


@pytest.mark.parametrize("name", CATALOG_NAMES)
def test_golden_reports_bit_for_bit(name):
    report = run_report(catalog_entry(name))
    expect = (GOLDEN / f"{name}.json").read_text(encoding="utf-8")
    assert report.to_json() == expect


@pytest.mark.parametrize("name", CATALOG_NAMES)
def test_report_round_trip(name):
    report = run_report(catalog_entry(name))
    text = report.to_json()
    again = Report.from_json(text)
    assert again.to_json() == text
    assert json.loads(text) == json.loads(again.to_json())


def test_load_spec_a41_text():
    s = load_spec(A41_SPEC)
    assert s.exact and s.dim == 4
    report = run_report(s)
    assert report.condition_report["flags"]["pluricanonical"]


def test_load_spec_empty_brackets_identity_preset():
    s = load_spec({"dim": 4, "brackets": [], "J": "split", "g": "identity"})
    report = run_report(s)
    assert report.condition_report["flags"]["vaisman"]


def test_load_spec_j_not_acs():
    bad = {"dim": 4, "brackets": [],
           "J": [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]}
    with pytest.raises(ValidationError) as err:
        load_spec(bad)
    assert err.value.code == "J_NOT_ACS"


def test_load_spec_parse_errors():
    with pytest.raises(ParseError) as err:
        load_spec("{not json")
    assert err.value.code == "PARSE_ERROR"
    with pytest.raises(ValidationError) as err:
        load_spec({"dim": 3})
    assert err.value.code == "BAD_DIM"
    with pytest.raises(ValidationError) as err:
        load_spec({"dim": 4, "brackets": [{"i": 1, "j": 9,
                                           "coefficients": {"1": "1"}}]})
    assert err.value.code == "BAD_INDEX"
    with pytest.raises(ValidationError) as err:
        load_spec({"dim": 4, "brackets": [
            {"i": 1, "j": 2, "coefficients": {"3": "1"}},
            {"i": 2, "j": 3, "coefficients": {"1": "1"}},
            {"i": 1, "j": 3, "coefficients": {"1": "-1"}}]})
    assert err.value.code == "JACOBI_FAILED"


def test_load_spec_float_mode():
    data = json.loads(A41_SPEC)
    data["options"] = {"arithmetic_mode": "float", "tolerance": 1e-8}
    s = load_spec(data)
    assert not s.exact and s.tol == 1e-8


def test_cli_check_exit_codes(tmp_path):
    path = tmp_path / "a41.json"
    path.write_text(A41_SPEC, encoding="utf-8")
    out = io.StringIO()
    assert main(["check", str(path)], out=out) == 0
    assert main(["check", str(path), "--expect", "pluricanonical=true"],
                out=io.StringIO()) == 0
    assert main(["check", str(path), "--expect", "vaisman=true"],
                out=io.StringIO()) == 1
    assert main(["check", str(tmp_path / "missing.json")],
                out=io.StringIO()) == 2
    bad = tmp_path / "bad.json"
    bad.write_text('{"dim": 4, "J": [[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]]}',
                   encoding="utf-8")
    assert main(["check", str(bad)], out=io.StringIO()) == 2


def test_cli_check_json_output(tmp_path):
    path = tmp_path / "a41.json"
    path.write_text(A41_SPEC, encoding="utf-8")
    out = io.StringIO()
    assert main(["check", str(path), "--json"], out=out) == 0
    data = json.loads(out.getvalue())
    assert data["condition_report"]["flags"]["pluricanonical"] is True
    assert data["extras"]["theta"] == {"3": "-1"}


def test_cli_catalog_listing_and_entry():
    out = io.StringIO()
    assert main(["catalog"], out=out) == 0
    assert set(out.getvalue().split()) == set(CATALOG_NAMES)
    out = io.StringIO()
    assert main(["catalog", "A4_8", "--json"], out=out) == 0
    data = json.loads(out.getvalue())
    assert data["extras"]["theta"] == {"4": "-1"}


def test_cli_classify_aa():
    out = io.StringIO()
    assert main(["classify-aa", "--a", "0", "--b", "1,0", "--v", "0,1",
                 "--A", "0,0;0,0", "--json"], out=out) == 0
    data = json.loads(out.getvalue())
    assert data["label"]["name"] == "A4_1"
    # precondition failure exits 1
    assert main(["classify-aa", "--a", "1", "--b", "1,0", "--v", "0,1",
                 "--A", "0,0;0,0"], out=io.StringIO()) == 1


def test_cli_fuzz_deterministic():
    s1 = fuzz(0, 10, "almost_abelian_4d")
    s2 = fuzz(0, 10, "almost_abelian_4d")
    assert summary_to_json(s1) == summary_to_json(s2)
    assert s1["identity_failures"] == []


def test_cli_version_prints_conventions():
    out = io.StringIO()
    assert main(["--version"], out=out) == 0
    text = out.getvalue()
    assert "lcak" in text and "curvature" in text and "lee_normalization" in text


def test_cli_subprocess_entry_point(tmp_path):
    path = tmp_path / "a41.json"
    path.write_text(A41_SPEC, encoding="utf-8")
    proc = subprocess.run([sys.executable, "-m", "lcak.cli", "check", str(path),
                           "--json"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["condition_report"]["flags"]["is_lcs"] is True


def test_report_all_checks_pass_flag():
    rep = run_report(catalog_entry("A4_1"))
    assert rep.all_checks_pass
