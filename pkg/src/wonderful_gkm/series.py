"""Univariate truncated power series and the Todd factor x / (1 - e^{-x})."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial, lcm
from typing import Sequence

from .poly import Polynomial


@dataclass(frozen=True)
class TruncatedSeries:
    """Coefficients ``c_0, ..., c_N`` of a power series modulo ``x^{N+1}``."""

    coeffs: tuple[Fraction, ...]

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k]

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n = min(self.order, other.order)
        out = [Fraction(0)] * (n + 1)
        for i in range(n + 1):
            a = self.coeffs[i]
            if a:
                for j in range(n + 1 - i):
                    out[i + j] += a * other.coeffs[j]
        return TruncatedSeries(tuple(out))

    def reciprocal(self) -> "TruncatedSeries":
        c = self.coeffs
        if c[0] == 0:
            raise ZeroDivisionError("series with vanishing constant term is not invertible")
        inv = [Fraction(1) / c[0]]
        for k in range(1, len(c)):
            s = sum(c[j] * inv[k - j] for j in range(1, k + 1))
            inv.append(-s / c[0])
        return TruncatedSeries(tuple(inv))

    def negate_argument(self) -> "TruncatedSeries":
        """The series of ``f(-x)``."""
        return TruncatedSeries(tuple(c if k % 2 == 0 else -c for k, c in enumerate(self.coeffs)))


def inverse_todd_series(n: int) -> TruncatedSeries:
    """(1 - e^{-x}) / x = sum_k (-1)^k x^k / (k+1)!"""
    if n < 0:
        raise ValueError("truncation order must be non-negative")
    return TruncatedSeries(tuple(Fraction((-1) ** k, factorial(k + 1)) for k in range(n + 1)))


def todd_series(n: int) -> TruncatedSeries:
    """x / (1 - e^{-x}) truncated at degree ``n``."""
    return inverse_todd_series(n).reciprocal()


def series_of_linear(series: TruncatedSeries, f: Polynomial, chi: Sequence[int],
                     max_degree: int) -> Polynomial:
    """``f * sum_k c_k l^k`` truncated at ``max_degree``, with ``l`` the linear form of ``chi``.

    Horner evaluation keeps every intermediate product a multiplication by a
    linear form.
    """
    top = min(series.order, max_degree)
    f = f.truncate(max_degree)
    if not any(chi):
        return f.scale(series[0])
    # work over the integers with one common denominator; Fraction arithmetic
    # in the inner loop is several times slower
    den_f = lcm(*(Fraction(c).denominator for c in f.terms.values())) if f.terms else 1
    den_s = lcm(*(series[k].denominator for k in range(top + 1)))
    g = f.scale(den_f)
    coeffs = [int(series[k] * den_s) for k in range(top + 1)]
    acc = g.scale(coeffs[top])
    for k in range(top - 1, -1, -1):
        acc = acc.mul_linear(chi, max_degree) + g.scale(coeffs[k])
    return acc.scale(Fraction(1, den_f * den_s))


def todd_factor(chi: Sequence[int], n: int) -> Polynomial:
    """The Todd factor of the linear form of ``chi``, truncated at degree ``n``."""
    if n < 0:
        raise ValueError("truncation order must be non-negative")
    one = Polynomial.one(len(chi), n)
    return series_of_linear(todd_series(n), one, chi, n)
