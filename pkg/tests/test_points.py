from fractions import Fraction

import pytest

from forest_skein.errors import DomainError
from forest_skein.points import (
    ONE,
    ZERO,
    RationalPoint,
    common_prefix,
    cone_interval,
    from_circle,
    lex_less,
    random_point,
    sigma_circle,
)


def test_normal_form_is_unique():
    assert RationalPoint("0101", "01") == RationalPoint("", "01")
    assert RationalPoint("1", "0000") == RationalPoint("1", "0")
    assert RationalPoint("110", "10") == RationalPoint("1", "10")
    assert str(RationalPoint("1100", "0")) == "11(0)"


def test_empty_period_is_rejected():
    with pytest.raises(DomainError):
        RationalPoint("01", "")


def test_drop_and_prepend(rng):
    for _ in range(200):
        x = random_point(rng)
        w = "".join(str(b) for b in rng.integers(0, 2, size=int(rng.integers(0, 5))))
        assert x.prepend(w).drop(len(w)) == x
        assert x.prepend(w).startswith(w)


def test_sigma_circle_values():
    assert sigma_circle(RationalPoint("1", "0")) == Fraction(1, 2)
    assert sigma_circle(ONE) == 0
    assert sigma_circle(ZERO) == 0
    assert sigma_circle(RationalPoint("", "10")) == Fraction(2, 3)
    assert sigma_circle(RationalPoint("01", "1")) == Fraction(1, 2)


def test_from_circle_inverts_sigma(rng):
    for _ in range(200):
        x = random_point(rng)
        if x.period == "1":
            continue
        assert from_circle(sigma_circle(x)) == x


def test_cone_interval():
    assert cone_interval("") == (0, 1)
    assert cone_interval("101") == (Fraction(5, 8), Fraction(3, 4))


def test_lex_order():
    assert lex_less(ZERO, ONE)
    assert not lex_less(ONE, ZERO)
    assert common_prefix(ONE, ONE) is None
    assert common_prefix(RationalPoint("01", "0"), RationalPoint("", "01")) == "010"
