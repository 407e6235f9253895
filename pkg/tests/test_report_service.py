import json

from services import cayley_service as cayley
from services import report_service as reports
from services.census_service import census_filter
from services.verify_service import run_check


def test_analyze_left_zero(left_zero_2):
    report = reports.analyze(left_zero_2, source="lz2", names=("t1", "t2"))
    assert report.uniform is True
    assert report.classification == "TwoElementLeftZero"
    assert report.zero_elements == (0, 1)
    assert report.idempotent_shape == "LeftZeroPair"
    assert report.witness is None
    assert report.names_of(report.zero_elements) == "{t1, t2}"


def test_analyze_non_uniform_has_witness(right_zero_2):
    report = reports.analyze(cayley.adjoin_identity(right_zero_2))
    assert report.uniform is False
    assert report.classification is None
    assert report.witness is not None
    assert len(report.witness.blocks) < 3


def test_analyze_singleton_leaves_uniformity_unset():
    report = reports.analyze(cayley.cyclic_group(1))
    assert report.uniform is None
    assert report.classification is None
    text = reports.render_analysis(report)
    assert "uniform: n/a" in text


def test_report_dict_round_trip(z2_two_left_zeros, right_zero_2):
    for s in (z2_two_left_zeros, cayley.adjoin_identity(right_zero_2)):
        report = reports.analyze(s, source="x")
        payload = json.loads(reports.dumps(report.to_dict()))
        assert payload["schema"] == "v1"
        assert reports.AnalysisReport.from_dict(payload) == report


def test_dumps_is_deterministic(z2_zero):
    first = reports.dumps(reports.analyze(z2_zero, source="z").to_dict())
    second = reports.dumps(reports.analyze(z2_zero, source="z").to_dict())
    assert first == second
    assert first.endswith("\n")


def test_render_analysis(z2_zero):
    text = reports.render_analysis(reports.analyze(z2_zero, source="z2_zero.txt", names=("e", "a", "0")))
    assert "uniform: true" in text
    assert "classification: ZeroGroup" in text
    assert "group part: {e, a}" in text


def test_render_analysis_with_witness(right_zero_2):
    text = reports.render_analysis(reports.analyze(cayley.adjoin_identity(right_zero_2)))
    assert "uniform: false" in text
    assert "witness: subact" in text
    assert "classification: none" in text


def test_render_census():
    records = census_filter(2, ["uniform", "regular"])
    text = reports.render_census(2, ["uniform", "regular"], records)
    assert text.splitlines()[0] == "order 2 [uniform, regular]: 4 semigroups"
    payload = reports.census_payload(2, ["uniform", "regular"], records)
    assert payload["count"] == 4
    assert all("regular" in rec["flags"] for rec in payload["records"])


def test_render_verification():
    report = run_check("C1", 3)
    text = reports.render_verification([report])
    assert text.startswith("C1 zero bound: PASS")
    assert text.rstrip().endswith("overall: PASS")
    payload = reports.verification_payload([report])
    assert payload["passed"] is True
    assert payload["checks"][0]["check_id"] == "C1"
