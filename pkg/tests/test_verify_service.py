import pytest

from services.errors import BoundExceeded, RangeError
from services.verify_service import CHECKS, run_all, run_check
from utils.config import Bounds


def test_registry_covers_all_checks():
    assert list(CHECKS) == [f"C{i}" for i in range(1, 21)]


def test_zero_bound_check_passes():
    report = run_check("C1", 4)
    assert report.passed
    assert report.counterexamples == []
    assert report.instances_scanned > 0


def test_main_classification_passes_and_reports_case_ii_discrepancy():
    report = run_check("C13", 4)
    assert report.passed, [f.detail for f in report.counterexamples]
    assert report.tallies.get("GroupWithTwoLeftZeros", 0) >= 1
    details = " ".join(f.detail for f in report.discrepancies)
    assert "G=Z3" in details


def test_negated_check_produces_counterexamples():
    report = run_check("C2", 3, negate=True)
    assert report.negated
    assert not report.passed
    assert report.counterexamples


def test_run_all_order_three_passes():
    reports = run_all(3)
    failed = {r.check_id: [f.detail for f in r.counterexamples] for r in reports if not r.passed}
    assert failed == {}


def test_run_all_order_four_passes():
    reports = run_all(4)
    failed = {r.check_id: [f.detail for f in r.counterexamples] for r in reports if not r.passed}
    assert failed == {}


def test_irreducibility_check_reports_uniform_reducible_instances():
    report = run_check("C16", 3)
    assert report.passed, [f.detail for f in report.counterexamples]
    right_zero_3 = ((0, 1, 2), (0, 1, 2), (0, 1, 2))
    assert right_zero_3 in [f.table for f in report.discrepancies]
    assert report.tallies["not irreducible"] == len(report.discrepancies)


def test_irreducibility_check_negated_fails():
    assert not run_check("C16", 3, negate=True).passed


def test_run_all_order_one_scans_no_census_instance():
    report = run_check("C1", 1)
    assert report.passed
    assert report.instances_scanned == 0


def test_case_ii_action_check_flags_strict_rule():
    report = run_check("C20", 3)
    assert report.passed
    assert report.discrepancies
    assert report.tallies.get("faithful", 0) >= 1
    assert report.tallies.get("not faithful", 0) >= 1


def test_rees_sweep_check_passes():
    report = run_check("C14", 2)
    assert report.passed
    assert report.instances_scanned > 0


def test_characterisation_table_records_printed_row_gaps():
    report = run_check("C15", 3)
    assert report.passed
    assert any("band" in f.detail for f in report.discrepancies)


def test_check_ids_are_case_insensitive():
    assert run_check(" c1 ", 2).check_id == "C1"


def test_unknown_check():
    with pytest.raises(RangeError):
        run_check("C99", 3)


def test_max_order_bounds():
    with pytest.raises(BoundExceeded):
        run_check("C1", 6)
    with pytest.raises(RangeError):
        run_check("C1", 0)


def test_bounds_reach_the_census():
    with pytest.raises(BoundExceeded):
        run_check("C1", 3, bounds=Bounds(canonical_order=2))


def test_report_dict_is_stable():
    d = run_check("C1", 2).to_dict()
    assert list(d) == [
        "check_id", "title", "statement", "max_order", "negated", "instances_scanned",
        "passed", "counterexamples", "discrepancies", "tallies", "elapsed",
    ]
