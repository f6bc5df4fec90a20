import pytest

from forest_skein.errors import DomainError, ParseError
from forest_skein.forests import A, B, Forest, I, Node, caret
from forest_skein.groups import random_element
from forest_skein.permutations import Permutation
from forest_skein.points import RationalPoint, random_point
from forest_skein.syntax import (
    format_element,
    format_forest,
    format_perm,
    parse_element,
    parse_forest,
    parse_perm,
    parse_point,
    parse_tree,
)


def test_trees_and_forests():
    assert parse_tree("a(I, b(I,I))") == Node(A, I, caret(B))
    assert parse_tree(" I ") == I
    f = parse_forest("a(I,I), I, b(I,I)")
    assert f == Forest((caret(A), I, caret(B)))
    assert format_forest(f) == "a(I,I),I,b(I,I)"


@pytest.mark.parametrize(
    "text, position",
    [
        ("a(I,x)", 4),
        ("a(I,I", 5),
        ("c(I,I)", 0),
        ("a(I,I)I", 6),
        ("a (I , x)", 4),
    ],
)
def test_tree_errors_carry_positions(text, position):
    with pytest.raises(ParseError) as exc:
        parse_tree(text)
    assert exc.value.position == position
    assert f"position {position}" in str(exc.value)


def test_permutations():
    assert parse_perm("id", 3) == Permutation.identity(3)
    assert parse_perm("rot(1)", 3) == Permutation((2, 3, 1))
    assert parse_perm("rot(-1)", 3) == Permutation((3, 1, 2))
    assert parse_perm("perm(2 1 3)", 3) == Permutation((2, 1, 3))
    assert format_perm(Permutation((3, 1, 2))) == "rot(2)"
    assert format_perm(Permutation((2, 1, 3))) == "perm(2 1 3)"
    with pytest.raises(DomainError):
        parse_perm("perm(1 2)", 3)
    with pytest.raises(ParseError):
        parse_perm("swap", 3)


def test_elements(ctx3):
    g = parse_element("[a(I,I) | rot(1) | b(I,I)]", ctx3)
    assert g.type_tag == "T"
    assert g.perm == Permutation((2, 1))
    assert format_element(g) == "[a(I,I) | rot(1) | b(I,I)]"
    assert parse_element("[I|id|I]", ctx3).type_tag == "F"
    assert parse_element("[I|id|I]", ctx3, "V").type_tag == "V"


def test_element_errors(ctx3):
    with pytest.raises(ParseError) as exc:
        parse_element("[a(I,I) | foo | a(I,I)]", ctx3)
    assert exc.value.position == 8
    with pytest.raises(ParseError):
        parse_element("[a(I,I) | id a(I,I)]", ctx3)
    with pytest.raises(ParseError):
        parse_element("[a(I,I) | id | a(I,I)", ctx3)
    # well-formed but outside the requested group
    with pytest.raises(DomainError):
        parse_element("[a(I,I) | rot(1) | b(I,I)]", ctx3, "F")
    with pytest.raises(DomainError):
        parse_element("[a(I,I) | id | I]", ctx3)


def test_points():
    assert parse_point("1 10(0)") == RationalPoint("11", "0")
    assert str(parse_point("0(10)")) == "(01)"
    assert str(parse_point("(1)")) == "(1)"
    with pytest.raises(ParseError) as exc:
        parse_point("01(1x)")
    assert exc.value.position == 4
    with pytest.raises(ParseError):
        parse_point("01()")


@pytest.mark.parametrize("type_tag", ["F", "T", "V"])
def test_random_elements_survive_formatting(ctx3, rng, type_tag):
    for _ in range(200):
        g = random_element(ctx3, rng, carets=int(rng.integers(0, 6)), type_tag=type_tag)
        assert parse_element(format_element(g), ctx3, type_tag) == g


def test_random_points_survive_formatting(rng):
    for _ in range(1000):
        x = random_point(rng)
        assert parse_point(str(x)) == x
