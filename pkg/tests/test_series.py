from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from wonderful_gkm.poly import Polynomial
from wonderful_gkm.series import TruncatedSeries, inverse_todd_series, series_of_linear, todd_factor, todd_series

import oracles


def test_todd_coefficients_match_bernoulli_numbers():
    assert list(todd_series(4).coeffs) == [1, Fraction(1, 2), Fraction(1, 12), 0, Fraction(-1, 720)]
    assert list(todd_series(16).coeffs) == oracles.todd_coefficients(16)


@given(st.integers(0, 12))
def test_todd_times_inverse_is_one(n):
    prod = todd_series(n) * inverse_todd_series(n)
    assert prod.coeffs == (1,) + (0,) * n


def test_reciprocal_needs_a_unit_constant_term():
    with pytest.raises(ZeroDivisionError):
        TruncatedSeries((Fraction(0), Fraction(1))).reciprocal()


def test_todd_factor_of_zero_is_one():
    assert todd_factor((0, 0), 5) == Polynomial.one(2)


def test_todd_factor_of_opposite_characters():
    chi = (1, -2)
    prod = (todd_factor(chi, 2) * todd_factor((-1, 2), 2)).truncate(2)
    lin = Polynomial.linear(chi)
    assert prod == Polynomial.one(2) - (lin * lin).scale(Fraction(1, 12))


@given(st.tuples(st.integers(-3, 3), st.integers(-3, 3)), st.integers(0, 6))
def test_series_of_linear_is_the_substituted_series(chi, n):
    lin = Polynomial.linear(chi)
    expected = Polynomial.zero(2)
    power = Polynomial.one(2)
    for c in todd_series(n).coeffs:
        expected = expected + power.scale(c)
        power = power * lin
    f = Polynomial(2, {(1, 0): Fraction(2, 3), (0, 0): 1})
    assert series_of_linear(todd_series(n), f, chi, n) == (f * expected).truncate(n)


def test_negative_orders_are_rejected():
    with pytest.raises(ValueError):
        todd_series(-1)
    with pytest.raises(ValueError):
        todd_factor((1,), -1)
