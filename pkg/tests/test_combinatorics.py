import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from hypertrees.combinatorics import (
    DegreeSequence,
    LogReal,
    degree_stats,
    falling_factorial,
    log_gamma,
    log_rational,
    parse_degrees,
    tree_shape,
)
from hypertrees.errors import DimensionError, DivisibilityError, DomainError


def naive_falling(a, b):
    out = 1
    for i in range(b):
        out *= a - i
    return out


@given(st.integers(-30, 60), st.integers(0, 20))
def test_falling_factorial_matches_product(a, b):
    assert falling_factorial(a, b) == naive_falling(a, b)


@given(st.integers(0, 60), st.integers(0, 20), st.integers(0, 20))
def test_falling_factorial_splits(a, b, c):
    # (a)_{b+c} = (a)_b (a-b)_c
    assert falling_factorial(a, b + c) == falling_factorial(a, b) * falling_factorial(a - b, c)


def test_falling_factorial_edges():
    assert falling_factorial(5, 0) == 1
    assert falling_factorial(3, 5) == 0
    assert falling_factorial(6, 2) == 30
    with pytest.raises(DomainError):
        falling_factorial(3, -1)


def test_degree_stats_regular():
    k = degree_stats([2] * 9)
    assert k.M == 18 and k.M2 == 18 and k.k_avg == 2 and k.k_max == 2
    assert k.is_regular and not k.has_zero
    assert k.k_hat == 2.0
    assert k.log_product == 9 * math.log(2)
    assert k.sq_dev == 0
    assert str(k) == "2^9"


def test_degree_stats_irregular():
    k = degree_stats([1, 2, 3, 6])
    assert k.k_avg == Fraction(3)
    assert k.product == 36
    assert k.sq_dev == 4 + 1 + 0 + 9
    assert math.isclose(k.k_hat, 36 ** 0.25)


def test_zero_entry():
    k = degree_stats([0, 2, 2, 2])
    assert k.has_zero
    assert k.k_hat == 0.0
    assert k.log_product == -math.inf


def test_degree_validation():
    with pytest.raises(DimensionError):
        degree_stats([2, 2])
    with pytest.raises(DomainError):
        degree_stats([2, -1, 3])


@pytest.mark.parametrize("text,expected", [
    ("2^9", (2,) * 9), ("1,2,3", (1, 2, 3)), ("1 2  3\n", (1, 2, 3)), (" 3 ^ 4", (3, 3, 3, 3)),
])
def test_parse_degrees(text, expected):
    assert parse_degrees(text).degrees == expected


def test_parse_degrees_garbage():
    with pytest.raises(DomainError):
        parse_degrees("a,b,c")


def test_tree_shape():
    assert tree_shape(9, 3).t == 4
    assert tree_shape(13, 7).t == 2
    with pytest.raises(DivisibilityError, match=r"\(r-1\) divides \(n-1\)"):
        tree_shape(6, 3)
    with pytest.raises(DomainError, match="graphs"):
        tree_shape(5, 2)


@given(st.floats(0.01, 300))
def test_log_gamma_recurrence(x):
    # ln G(x+1) = ln x + ln G(x)
    assert math.isclose(log_gamma(x + 1), math.log(x) + log_gamma(x), rel_tol=1e-12, abs_tol=1e-12)


def test_log_gamma_half_and_mpmath():
    assert math.isclose(log_gamma(0.5), 0.5 * math.log(math.pi), rel_tol=1e-15)
    for x in (0.3, 1.7, 12.5, 1e4 + 0.25, 1e7):
        assert math.isclose(log_gamma(x), float(mpmath.loggamma(x)), rel_tol=1e-13)
    with pytest.raises(DomainError):
        log_gamma(0)


def test_log_rational_huge():
    q = Fraction(math.factorial(400), math.factorial(399) * 3)
    assert math.isclose(log_rational(q), math.log(400 / 3))


def test_logreal_arithmetic():
    a = LogReal.from_rational(Fraction(3, 4))
    b = LogReal.from_float(2.0)
    assert math.isclose((a * b).to_float(), 1.5)
    assert math.isclose((a / b).to_float(), 0.375)
    assert LogReal.zero().is_zero and (LogReal.zero() * a).is_zero
    big = LogReal.from_log(1e5)
    assert not big.representable and big.to_float() == math.inf
    assert math.isclose(big.log10_abs, 1e5 / math.log(10))
    with pytest.raises(ZeroDivisionError):
        a / LogReal.zero()


def test_logreal_sign():
    neg = LogReal.from_float(-2.0)
    assert neg.sign == -1 and math.isclose(neg.to_float(), -2.0)
    assert math.isclose((neg * neg).to_float(), 4.0)
