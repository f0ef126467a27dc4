from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, strategies as st

from wcatalan.errors import DomainError
from wcatalan.evaluate import peak_histogram
from wcatalan.exactnum import (
    as_rat,
    binomial,
    catalan,
    format_rational,
    narayana,
    parse_rational,
    pochhammer,
    pochhammer_half,
)


@pytest.mark.parametrize("n,k,expected", [(0, 0, 1), (4, 2, 6), (6, 3, 20), (5, -1, 0), (5, 6, 0)])
def test_binomial_values(n, k, expected):
    assert binomial(n, k) == expected


def test_binomial_rejects_negative_n():
    with pytest.raises(DomainError):
        binomial(-1, 0)


@given(st.integers(1, 64), st.data())
def test_pascal(n, data):
    k = data.draw(st.integers(0, n))
    if 1 <= k <= n - 1:
        assert binomial(n, k) == binomial(n - 1, k - 1) + binomial(n - 1, k)
    assert binomial(n, k) == binomial(n, n - k)


@pytest.mark.parametrize("n,expected", [(0, 1), (3, 5), (5, 42)])
def test_catalan(n, expected):
    assert catalan(n) == expected


def test_catalan_matches_path_count():
    for k in range(9):
        assert sum(peak_histogram(k).values()) == catalan(k)


@pytest.mark.parametrize("k,i,expected", [(3, 1, 1), (3, 2, 3), (4, 2, 6), (3, 0, 0), (3, 4, 0)])
def test_narayana(k, i, expected):
    assert narayana(k, i) == expected


def test_narayana_row_sums_and_symmetry():
    for k in range(1, 31):
        assert sum(narayana(k, i) for i in range(1, k + 1)) == catalan(k)
        for i in range(1, k + 1):
            assert narayana(k, i) == narayana(k, k + 1 - i)


@pytest.mark.parametrize("n,expected", [(0, Fraction(1)), (1, Fraction(1, 2)), (3, Fraction(15, 8))])
def test_pochhammer_half(n, expected):
    assert pochhammer_half(n) == expected
    assert pochhammer(Fraction(1, 2), n) == expected


def test_central_binomial_pochhammer_bridge():
    for k in range(201):
        assert binomial(2 * k, k) == pochhammer_half(k) * 4**k / factorial(k)


@pytest.mark.parametrize("text,value", [
    ("3", Fraction(3)), ("-3", Fraction(-3)), ("7/5", Fraction(7, 5)), ("-4/9", Fraction(-4, 9)),
    ("+2/4", Fraction(1, 2)), ("0/7", Fraction(0)),
])
def test_parse_rational(text, value):
    assert parse_rational(text) == value


@pytest.mark.parametrize("text", ["1/0", "1.5", "", "a", "1/", "/2", "1e3", "2/-3"])
def test_parse_rational_rejects(text):
    with pytest.raises(DomainError):
        parse_rational(text)


@given(st.fractions())
def test_rational_literal_round_trip(x):
    r = parse_rational(format_rational(x))
    assert r == x
    assert r.denominator > 0


def test_as_rat_refuses_floats():
    with pytest.raises(TypeError):
        as_rat(0.5)
