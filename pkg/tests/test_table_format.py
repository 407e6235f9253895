import pytest

from cli.table_format import TableFormatError, format_table, parse_table, read_table
from services import cayley_service as cayley
from services.errors import AssociativityError


def test_parse_with_names_and_comments():
    parsed = parse_table("# Z3\n# names: e a b\n3\n0 1 2\n1 2 0\n\n2 0 1\n", source="z3")
    assert parsed.semigroup == cayley.cyclic_group(3)
    assert parsed.names == ("e", "a", "b")
    assert parsed.name(2) == "b"
    assert parsed.source == "z3"


@pytest.mark.parametrize(
    "text, line, column",
    [
        ("2\n0 1\n1 x\n", 3, 3),
        ("2\n0 2\n1 1\n", 2, 3),
        ("2\n0 1 1\n1 0\n", 2, 5),
        ("2\n0 1\n", 3, 1),
        ("two\n", 1, 1),
        ("2 2\n", 1, 1),
        ("2\n0 1\n1 0\n0 0\n", 4, 1),
        ("# names: a b c\n2\n0 1\n1 0\n", 1, 1),
    ],
)
def test_parse_errors_carry_position(text, line, column):
    with pytest.raises(TableFormatError) as exc:
        parse_table(text)
    assert (exc.value.line, exc.value.column) == (line, column)


def test_parse_empty():
    with pytest.raises(TableFormatError, match="empty table"):
        parse_table("# nothing\n")


def test_parse_non_associative():
    with pytest.raises(AssociativityError):
        parse_table("2\n1 1\n0 0\n")


def test_read_table_missing_file(tmp_path):
    with pytest.raises(TableFormatError, match="cannot read"):
        read_table(tmp_path / "missing.txt")


def test_format_table_reads_back(z2_zero):
    text = format_table(z2_zero, names=("e", "a", "0"), comment="Z2 with zero")
    assert text.startswith("# Z2 with zero\n# names: e a 0\n3\n")
    parsed = parse_table(text)
    assert parsed.semigroup == z2_zero
    assert parsed.names == ("e", "a", "0")


def test_sample_files_parse(samples_dir):
    for path in sorted(samples_dir.glob("*.txt")):
        parsed = read_table(path)
        assert parsed.names is not None
        assert len(parsed.names) == parsed.semigroup.order
