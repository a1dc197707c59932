import json
from fractions import Fraction

import pytest

from otlck.cli import JobSpec, main, report_bytes, run
from otlck.errors import SchemaError

INOUE_GROUP = {"field": {"min_poly": ["-1", "-1", "0", "1"]},
               "generators": [["0", "1", "0"]]}
ALPHA_FAMILY = {"n": 3, "generators": [[[0, 0, 1], [1, 0, 1], [0, 1, 0]]]}


def _write(tmp_path, name, payload):
    p = tmp_path / name
    p.write_text(json.dumps(payload, sort_keys=True))
    return str(p)


def _job(command, input_path, **kw):
    return JobSpec(command, input_path, None, kw.get("precision", 64),
                   kw.get("cap", 4096), kw.get("bounds", {}))


def test_jobspec_schema_validation():
    with pytest.raises(SchemaError):
        JobSpec.from_dict({"command": "converse"})  # missing schema tag
    with pytest.raises(SchemaError):
        JobSpec.from_dict({"schema": "otlck.job/1", "command": "nope"})
    with pytest.raises(SchemaError):
        JobSpec.from_dict({"schema": "otlck.job/1", "command": "converse",
                           "unexpected": 1})
    job = JobSpec.from_dict({"schema": "otlck.job/1", "command": "converse",
                             "input": "x.json"})
    assert job.command == "converse"


def test_field_inspect_and_units(tmp_path):
    path = _write(tmp_path, "field.json", {"min_poly": ["-1", "-1", "0", "1"]})
    report, code = run(_job("field-inspect", path))
    assert code == 0 and report["signature"] == [1, 1]
    upath = _write(tmp_path, "units.json", INOUE_GROUP)
    report, code = run(_job("units-verify", upath))
    assert code == 0 and report["generators"][0]["unit"]


def test_admissible_and_build(tmp_path):
    upath = _write(tmp_path, "units.json", INOUE_GROUP)
    report, code = run(_job("admissible", upath))
    assert code == 0 and report["verdict"] == "Admissible"
    report, code = run(_job("build-ot", upath))
    assert code == 0
    re_lo, re_hi = report["matrix_c"]["entries"][0][0]["re"]
    assert Fraction(re_lo) <= Fraction(-1, 2) <= Fraction(re_hi)
    assert report["integer_matrices"][0] == [["0", "0", "1"],
                                             ["1", "0", "1"], ["0", "1", "0"]]


def test_converse_exit_codes(tmp_path):
    fpath = _write(tmp_path, "fam.json", ALPHA_FAMILY)
    report, code = run(_job("converse", fpath))
    assert code == 0 and report["verdict"] == "OT"
    bad = _write(tmp_path, "id.json",
                 {"n": 2, "generators": [[[1, 0], [0, 1]]]})
    report, code = run(_job("converse", bad))
    assert code == 2 and report["verdict"] == "NotSimple"


def test_sol3_demo_report():
    report, code = run(_job("sol3-demo", None, precision=110))
    assert code == 0
    assert report["converse"]["verdict"] == "NotOtLike"
    assert report["converse"]["min_poly"] == ["1", "-3", "1"]
    assert report["converse"]["signature"] == [2, 0]
    assert all(report["eigenvalue_widths_below_1e-30"])


def test_reports_are_deterministic(tmp_path):
    jobs = [
        _job("units-verify", _write(tmp_path, "u.json", INOUE_GROUP)),
        _job("admissible", _write(tmp_path, "a.json", INOUE_GROUP)),
        _job("build-ot", _write(tmp_path, "b.json", INOUE_GROUP)),
        _job("converse", _write(tmp_path, "f.json", ALPHA_FAMILY)),
        _job("sol3-demo", None),
    ]
    for job in jobs:
        r1, c1 = run(job)
        r2, c2 = run(job)
        assert c1 == c2
        assert report_bytes(r1) == report_bytes(r2)


def test_main_entry(tmp_path, capsys):
    upath = _write(tmp_path, "units.json", INOUE_GROUP)
    out = str(tmp_path / "report.json")
    assert main(["admissible", "--input", upath, "--output", out]) == 0
    data = json.loads(open(out).read())
    assert data["verdict"] == "Admissible"
    # run subcommand with a job spec file
    jpath = _write(tmp_path, "job.json", {
        "schema": "otlck.job/1", "command": "admissible", "input": upath})
    assert main(["run", jpath]) == 0
    # schema violations exit 2
    bad = _write(tmp_path, "bad.json", {"schema": "nope", "command": "x"})
    assert main(["run", bad]) == 2
