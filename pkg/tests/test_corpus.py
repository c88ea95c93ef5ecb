import pytest

from gph.corpus import (GOLDEN, OPS, golden_path, list_cases, load_case, report_text, run_all, run_case)
from gph.errors import InputError
from gph.io import SCHEMA, dump_json

CASES = ["cmfree-tensor", "ex-d4-square", "ex-morita-context", "ex-not-symmetric", "gorenstein-pairs"]


def test_list_cases():
    assert list_cases() == CASES


def test_unknown_case():
    with pytest.raises(InputError, match="unknown case"):
        run_case("no-such-case")


@pytest.mark.parametrize("case_id", CASES)
def test_case_files_are_well_formed(case_id):
    spec = load_case(case_id)
    assert spec["id"] == case_id and spec["schema"] == SCHEMA
    for a in spec["assertions"]:
        assert a["op"] in OPS
        assert a["source"] in ("worked-example", "derived", "trivial")
        if a["source"] == "derived":
            assert a.get("oracle")


@pytest.mark.parametrize("case_id", CASES)
def test_case_passes_and_matches_golden(case_id):
    report = run_case(case_id)
    assert report["summary"]["failed"] == 0, report_text(report)
    assert dump_json(report) == golden_path(case_id).read_text()


def test_d4_case_has_twelve_assertions():
    r = run_case("ex-d4-square")
    assert r["summary"] == {"total": 12, "passed": 12, "failed": 0}


def test_reports_are_deterministic():
    assert dump_json(run_case("ex-not-symmetric")) == dump_json(run_case("ex-not-symmetric"))


def test_run_all_concurrently():
    reports = run_all(workers=4)
    assert sorted(reports) == CASES
    for cid, rep in reports.items():
        assert dump_json(rep) == golden_path(cid).read_text()


def test_golden_directory_complete():
    assert sorted(p.stem for p in GOLDEN.glob("*.json")) == CASES


def test_report_text_lists_each_assertion():
    r = run_case("ex-not-symmetric")
    text = report_text(r)
    assert text.splitlines()[0] == "case ex-not-symmetric: 10/10 assertions pass"
    assert len(text.splitlines()) == 11


def test_failing_assertion_is_reported(monkeypatch):
    import gph.corpus as corpus
    spec = load_case("ex-not-symmetric")
    spec["assertions"] = [dict(spec["assertions"][3], expect="yes")]
    monkeypatch.setattr(corpus, "load_case", lambda cid: spec)
    r = corpus.run_case("ex-not-symmetric")
    assert r["summary"]["failed"] == 1 and r["results"][0]["pass"] is False
