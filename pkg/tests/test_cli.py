import json
import subprocess
import sys
from pathlib import Path

import pytest

from bdivalg.cli import main
from bdivalg.scenario import REPORT_SCHEMA

SCENARIOS = Path(__file__).resolve().parent.parent / "scenarios"

EXPECTED = {
    "hilbert": 0,
    "saturate_5n3": 0,
    "saturate_fail": 2,
    "straighten_5n3": 0,
    "plcone_min": 0,
    "fingen_5n3": 0,
    "fingen_rank2": 0,
    "diophantine_sqrt2": 0,
    "diophantine_rational": 3,
    "counterexample": 0,
    "example33": 0,
    "malformed": 64,
}


def run(args, tmp_path):
    out = tmp_path / "report.json"
    code = main(list(args) + ["--out", str(out)])
    return code, (json.loads(out.read_text()) if out.exists() else None), out


@pytest.mark.parametrize("name,code", sorted(EXPECTED.items()))
def test_scenario_exit_codes(name, code, tmp_path):
    got, doc, _ = run(["run", str(SCENARIOS / f"{name}.json")], tmp_path)
    assert got == code
    if code in (0, 2, 3):
        assert doc["schema"] == REPORT_SCHEMA


def test_fingen_report_contents(tmp_path):
    code, doc, _ = run(["fingen", str(SCENARIOS / "fingen_5n3.json")], tmp_path)
    assert code == 0
    text = json.dumps(doc)
    assert '"kappa": 6' in text


def test_reports_are_byte_identical(tmp_path):
    for name in ("fingen_rank2", "diophantine_sqrt2", "example33"):
        a = tmp_path / "a.json"
        b = tmp_path / "b.json"
        main(["run", str(SCENARIOS / f"{name}.json"), "--out", str(a)])
        main(["run", str(SCENARIOS / f"{name}.json"), "--out", str(b)])
        assert a.read_bytes() == b.read_bytes()


def test_suite_seed_determinism_and_jobs(tmp_path):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    assert main(["suite", str(SCENARIOS / "suite_small.json"), "--out", str(a)]) == 0
    assert main(["suite", str(SCENARIOS / "suite_small.json"), "--jobs", "2", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_schema_error_exit_65(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"kind": "saturate", "monoid": {"generators": "oops"}}))
    assert main(["run", str(bad)]) == 65


def test_expression_error_exit_64(tmp_path, capsys):
    doc = json.loads((SCENARIOS / "saturate_5n3.json").read_text())
    doc["system"]["expressions"]["P"] = "floor(5q/3)"
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc))
    assert main(["run", str(bad)]) == 64
    assert "column" in capsys.readouterr().err


def test_malformed_json_reports_position(capsys):
    assert main(["run", str(SCENARIOS / "malformed.json")]) == 64
    err = capsys.readouterr().err
    assert "line" in err


def test_missing_file_is_parse_error():
    assert main(["run", "/nonexistent/scenario.json"]) == 64


def test_degree_bound_override(tmp_path):
    code, doc, _ = run(["saturate", str(SCENARIOS / "saturate_5n3.json"), "--degree-bound", "10"], tmp_path)
    assert code == 0
    assert doc["parameters"]["degree_bound"] == 10


def test_timings_only_when_requested(tmp_path):
    _, doc, _ = run(["run", str(SCENARIOS / "hilbert.json")], tmp_path)
    assert "timings" not in json.dumps(doc)
    _, doc, _ = run(["run", str(SCENARIOS / "hilbert.json"), "--timings"], tmp_path)
    assert "timings" in json.dumps(doc)


def test_plot_artifact(tmp_path):
    pytest.importorskip("matplotlib")
    png = tmp_path / "walk.png"
    code, _, _ = run(["diophantine", str(SCENARIOS / "diophantine_sqrt2.json"), "--plot", str(png)], tmp_path)
    assert code == 0 and png.stat().st_size > 0


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "bdivalg", "example33"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["schema"] == REPORT_SCHEMA
