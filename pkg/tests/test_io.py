import pytest

from polysemi.construct import NAMED_EXAMPLES, assemble, named_example
from polysemi.core import NaryOp
from polysemi.errors import ConstructionError, InputError, ParseError
from polysemi.io import (
    parse_construct,
    parse_optab,
    read_construct,
    read_optab,
    serialize_construct,
    serialize_optab,
)
from polysemi.reduction import extend_binary
from polysemi.construct import make_cyclic


@pytest.mark.parametrize("name", list(NAMED_EXAMPLES))
def test_golden_fixture_round_trip(name, data_dir):
    text = (data_dir / f"{name}.optab").read_text()
    op = parse_optab(text)
    assert op == named_example(name)
    assert serialize_optab(op) == text


def test_ternary_sum_serialization():
    text = serialize_optab(extend_binary(make_cyclic(2), 3))
    assert text == "optab 1\narity 3\nsize 2\ntable\n0 1\n1 0\n1 0\n0 1\n"
    assert serialize_optab(NaryOp([0], 1, 2)) == "optab 1\narity 2\nsize 1\ntable\n0\n"


def test_parse_tolerates_comments_and_layout():
    text = "# xor\noptab 1\narity 3  # ternary\nsize 2\ntable 0 1 1 0\n1 0 0 1\n"
    assert parse_optab(text) == extend_binary(make_cyclic(2), 3)


@pytest.mark.parametrize("text,line", [
    ("optab 2\narity 2\nsize 1\ntable\n0\n", 1),
    ("optab 1\nsize 2\n", 2),
    ("optab 1\narity 2\nsize 2\ntable\n0 1\n1\n", 6),
    ("optab 1\narity 2\nsize 2\ntable\n0 1\n1 2\n", 6),
    ("optab 1\narity 2\nsize 2\nlabels a a\ntable\n0 1 1 0\n", 4),
    ("optab 1\narity 2\nsize 2\ntable\n0 x 1 0\n", 5),
    ("optab 1\narity 2\nsize 1\ntable\n0\n0\n", 6),
])
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(ParseError) as exc:
        parse_optab(text)
    assert exc.value.line == line
    assert str(exc.value).startswith(f"line {line}:")


def test_construct_round_trip_and_assembly(data_dir):
    text = (data_dir / "chain5.construct").read_text()
    spec = parse_construct(text)
    assert serialize_construct(spec) == text
    _, F = assemble(spec)
    assert F.table.tolist() == named_example("chain5-4ary").table.tolist()


def test_construct_clause_error(data_dir):
    spec = read_construct(data_dir / "exp3-ternary.construct")
    with pytest.raises(ConstructionError) as exc:
        assemble(spec)
    assert exc.value.clause == "a"


def test_construct_parse_errors():
    with pytest.raises(ParseError):
        parse_construct("construct 1\nsize 3\narity 3\ngroup 0 0\ngrouptable 0 1 1 0\n")
    with pytest.raises(ParseError):
        parse_construct("construct 1\nsize 3\narity 3\ngroup 0 1\ngrouptable 0 1 1 0\n")


def test_missing_file():
    with pytest.raises(InputError):
        read_optab("/nonexistent/file.optab")
