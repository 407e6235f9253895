import json

import pytest

from cli.app import EXIT_CHECK_FAILED, EXIT_INPUT_ERROR, EXIT_OK, main, parse_sandwich
from cli.table_format import parse_table
from services import cayley_service as cayley


def run(capsys, *argv):
    code = main(["--no-progress", *[str(a) for a in argv]])
    out, err = capsys.readouterr()
    return code, out, err


def test_uniform_left_zero(capsys, samples_dir):
    code, out, _ = run(capsys, "uniform", samples_dir / "left_zero_2.txt")
    assert code == EXIT_OK
    assert out == "uniform: true\n"


def test_uniform_prints_witness(capsys, samples_dir):
    code, out, _ = run(capsys, "uniform", samples_dir / "right_zero_2_with_identity.txt")
    assert code == EXIT_OK
    lines = out.splitlines()
    assert lines[0] == "uniform: false"
    assert lines[1].startswith("witness: subact {")


def test_classify_zero_group(capsys, samples_dir):
    code, out, _ = run(capsys, "classify", samples_dir / "z2_zero.txt")
    assert code == EXIT_OK
    assert "classification: ZeroGroup" in out
    assert "group part: {e, a}" in out

    code, out, _ = run(capsys, "classify", samples_dir / "z2_zero.txt", "--json")
    assert json.loads(out)["classification"] == "ZeroGroup"


def test_analyze_json_is_deterministic(capsys, samples_dir):
    path = samples_dir / "z2_two_left_zeros.txt"
    code, first, _ = run(capsys, "analyze", path, "--json")
    _, second, _ = run(capsys, "analyze", path, "--json")
    assert code == EXIT_OK
    assert first == second
    payload = json.loads(first)
    assert payload["schema"] == "v1"
    assert payload["uniform"] is True
    assert payload["classification"] == "GroupWithTwoLeftZeros"
    assert payload["names"] == ["e", "a", "t1", "t2"]


def test_analyze_text(capsys, samples_dir):
    code, out, _ = run(capsys, "analyze", samples_dir / "left_zero_2.txt")
    assert code == EXIT_OK
    assert "uniform: true" in out
    assert "left zeros: {t1, t2}" in out


def test_congruence_with_names(capsys, samples_dir):
    code, out, _ = run(capsys, "congruence", samples_dir / "z2_two_left_zeros.txt", "--pair", "e", "a")
    assert code == EXIT_OK
    assert out == "blocks: {e, a} {t1, t2}\n"


def test_congruence_unknown_element(capsys, samples_dir):
    code, _, err = run(capsys, "congruence", samples_dir / "z2_two_left_zeros.txt", "--pair", "e", "zz")
    assert code == EXIT_INPUT_ERROR
    assert "unknown element" in err


def test_construct_strict_case_ii_fails_for_z3(capsys):
    code, _, err = run(capsys, "construct", "group-two-left-zeros", "Z3")
    assert code == EXIT_INPUT_ERROR
    assert "not associative at (1, 1, 3)" in err


def test_construct_writes_table(capsys, tmp_path):
    out_file = tmp_path / "case_ii.txt"
    code, _, _ = run(capsys, "construct", "group-two-left-zeros", "Z2", "--out", out_file)
    assert code == EXIT_OK
    parsed = parse_table(out_file.read_text(encoding="utf-8"))
    assert parsed.semigroup.order == 4
    assert parsed.names == ("g0", "g1", "t1", "t2")


def test_construct_with_sigma(capsys):
    code, out, _ = run(capsys, "construct", "group-two-left-zeros", "Z2", "--sigma", "trivial")
    assert code == EXIT_OK
    s = parse_table(out).semigroup
    assert s.mul(1, 2) == 2


def test_construct_rees_matrix_0(capsys):
    code, out, _ = run(capsys, "construct", "rees-matrix0", "Z1", "1", "2", "0;0")
    assert code == EXIT_OK
    s = parse_table(out).semigroup
    assert cayley.are_isomorphic(s, cayley.adjoin_zero(cayley.right_zero_semigroup(2)))


def test_construct_rees_matrix_0_irregular(capsys):
    code, _, err = run(capsys, "construct", "rees-matrix0", "Z2", "2", "1", "0,z")
    assert code == EXIT_INPUT_ERROR
    assert "zero row or column" in err


def test_construct_named_group(capsys):
    code, out, _ = run(capsys, "construct", "group", "S3")
    assert code == EXIT_OK
    assert parse_table(out).semigroup.order == 6


def test_construct_unknown_family(capsys):
    code, _, err = run(capsys, "construct", "monoid", "3")
    assert code == EXIT_INPUT_ERROR
    assert "unknown family" in err


def test_opposite(capsys, samples_dir):
    code, out, _ = run(capsys, "opposite", samples_dir / "left_zero_2.txt")
    assert code == EXIT_OK
    assert parse_table(out).semigroup == cayley.right_zero_semigroup(2)


def test_census_with_filters(capsys):
    code, out, _ = run(capsys, "census", "--order", "2", "--filter", "uniform,regular")
    assert code == EXIT_OK
    assert out.splitlines()[0] == "order 2 [uniform, regular]: 4 semigroups"

    code, out, _ = run(capsys, "census", "--order", "2", "--filter", "uniform", "--filter", "!regular", "--json")
    assert code == EXIT_OK
    assert json.loads(out)["count"] == 1


def test_census_cache_and_catalogue(capsys, tmp_path):
    url = f"sqlite:///{tmp_path / 'cat.sqlite'}"
    code, _, _ = run(capsys, "census", "--order", "3", "--cache", tmp_path / "cache", "--db", url)
    assert code == EXIT_OK
    assert (tmp_path / "cache" / "semigroups_order_3.txt").exists()


@pytest.mark.parametrize(
    "argv",
    [
        ("census", "--order", "7"),
        ("census", "--order", "2", "--filter", "flying"),
        ("verify", "--check", "C1", "--max-order", "6"),
        ("verify", "--check", "C42", "--max-order", "2"),
    ],
)
def test_input_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == EXIT_INPUT_ERROR
    assert err.startswith("error: ")


def test_bad_table_file(capsys, write_table):
    path = write_table("2\n0 1\n1 x\n")
    code, _, err = run(capsys, "uniform", path)
    assert code == EXIT_INPUT_ERROR
    assert "line 3, column 3" in err


def test_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "analyze", tmp_path / "nope.txt")
    assert code == EXIT_INPUT_ERROR
    assert "cannot read" in err


def test_usage_error(capsys):
    assert main([]) == 2
    capsys.readouterr()


def test_verify_single_check(capsys):
    code, out, _ = run(capsys, "verify", "--check", "C1", "--max-order", "3")
    assert code == EXIT_OK
    assert out.rstrip().endswith("overall: PASS")


def test_verify_all_order_three(capsys):
    code, out, _ = run(capsys, "verify", "--check", "all", "--max-order", "3", "--json")
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["passed"] is True
    assert len(payload["checks"]) == 20


def test_verify_negated_fails(capsys):
    code, out, _ = run(capsys, "verify", "--check", "C2", "--max-order", "3", "--negate")
    assert code == EXIT_CHECK_FAILED
    assert "FAIL (negated)" in out


def test_verify_history(capsys, tmp_path):
    url = f"sqlite:///{tmp_path / 'runs.sqlite'}"
    run(capsys, "verify", "--check", "C1,C16", "--max-order", "2", "--db", url)
    code, out, _ = run(capsys, "history", "--db", url, "--json")
    assert code == EXIT_OK
    runs = json.loads(out)["runs"]
    assert [r["check_id"] for r in runs] == ["C16", "C1"]
    assert all(r["passed"] for r in runs)


def test_history_empty(capsys, tmp_path):
    code, out, _ = run(capsys, "history", "--db", f"sqlite:///{tmp_path / 'empty.sqlite'}")
    assert code == EXIT_OK
    assert out == "no verification runs recorded\n"


def test_parse_sandwich():
    assert parse_sandwich("0,1;z,0") == ((0, 1), (None, 0))
