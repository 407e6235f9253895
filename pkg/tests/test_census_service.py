import pytest

from services import cayley_service as cayley
from services import census_service as census_mod
from services.census_service import PUBLISHED_COUNTS, census, census_filter, parse_predicates
from services.classify_service import RegularUniformTag
from services.errors import BoundExceeded, CensusCacheError, RangeError


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_census_counts(n):
    result = census(n)
    assert len(result) == PUBLISHED_COUNTS[n]


@pytest.mark.slow
def test_census_count_order_5():
    assert len(census(5, workers=2)) == PUBLISHED_COUNTS[5]


def test_census_is_canonical_sorted_and_deterministic():
    first = census(3)
    flats = [s.flat() for s in first]
    assert flats == sorted(flats)
    assert all(cayley.canonical_form(s) == s.flat() for s in first)
    assert [s.flat() for s in census(3)] == flats


def test_census_independent_of_workers():
    assert [s.flat() for s in census(3, workers=2)] == [s.flat() for s in census(3)]


def test_census_bounds():
    with pytest.raises(BoundExceeded):
        census(6)
    with pytest.raises(BoundExceeded):
        census(7, allow_extended=True)
    with pytest.raises(RangeError):
        census(0)


def test_enumerate_semigroups_streams_census():
    assert len(list(census_mod.enumerate_semigroups(2))) == 5


def test_cache_round_trip(tmp_path):
    result = census(3, cache_dir=tmp_path)
    path = census_mod.cache_path(tmp_path, 3)
    assert path.name == "semigroups_order_3.txt"
    lines = path.read_text(encoding="utf-8").splitlines()
    assert len(lines) == 24
    assert lines == sorted(lines)
    assert all(line.startswith("3;") for line in lines)
    assert census_mod.read_cache(path, 3) == result


def test_read_cache_rejects_non_canonical_table(tmp_path):
    path = tmp_path / "bad.txt"
    # Z2 avec l'identité en 1
    path.write_text("2;1,0,0,1\n", encoding="utf-8")
    with pytest.raises(CensusCacheError):
        census_mod.read_cache(path, 2)


def test_read_cache_rejects_wrong_count(tmp_path):
    path = census_mod.cache_path(tmp_path, 2)
    census_mod.write_cache(path, census(2)[:4])
    with pytest.raises(CensusCacheError, match="expected 5"):
        census_mod.read_cache(path, 2)


def test_read_cache_rejects_non_associative(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("2;1,1,0,0\n", encoding="utf-8")
    with pytest.raises(CensusCacheError):
        census_mod.read_cache(path, 2)


def test_corrupt_cache_is_rebuilt(tmp_path):
    path = census_mod.cache_path(tmp_path, 2)
    path.write_text("2;0,0,0,0\n", encoding="utf-8")
    assert len(census(2, cache_dir=tmp_path)) == 5
    assert len(path.read_text(encoding="utf-8").splitlines()) == 5


def test_make_record_singleton():
    record = census_mod.make_record(cayley.cyclic_group(1))
    assert record.uniform is None
    assert record.tag is RegularUniformTag.NOT_APPLICABLE


def test_census_records_exclude_singleton():
    records = census_mod.census_records(3)
    assert len(records) == 5 + 24
    assert all(r.order >= 2 for r in records)


def test_parse_predicates():
    assert parse_predicates(["uniform", "!band", "not_regular"]) == [
        ("uniform", True), ("band", False), ("regular", False),
    ]
    with pytest.raises(RangeError):
        parse_predicates(["flying"])


def test_filter_order_two_uniform():
    uniform = census_filter(2, ["uniform"])
    assert len(uniform) == 5
    regular = census_filter(2, ["uniform", "regular"])
    assert len(regular) == 4
    assert all(r.tag is not RegularUniformTag.NOT_APPLICABLE for r in regular)


def test_filter_order_four_uniform_bands():
    found = {r.flat() for r in census_filter(4, ["uniform", "band"])}
    expected = {
        cayley.canonical_form(cayley.right_zero_semigroup(4)),
        cayley.canonical_form(cayley.adjoin_zero(cayley.right_zero_semigroup(3))),
    }
    assert found == expected


def test_filter_negation():
    everything = census_filter(3)
    uniform = census_filter(3, ["uniform"])
    not_uniform = census_filter(3, ["!uniform"])
    assert len(uniform) + len(not_uniform) == len(everything) == 24
