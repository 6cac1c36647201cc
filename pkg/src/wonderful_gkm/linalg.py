"""Exact rational linear algebra, delegated to sympy's domain matrices."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from sympy import Matrix
from sympy.matrices.normalforms import hermite_normal_form
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix


def _to_qq(x) -> object:
    x = Fraction(x)
    return QQ(x.numerator, x.denominator)


def _from_qq(x) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))


def as_domain_matrix(rows: Sequence[Sequence]) -> DomainMatrix:
    rows = [list(r) for r in rows]
    ncols = len(rows[0]) if rows else 0
    return DomainMatrix([[_to_qq(x) for x in r] for r in rows], (len(rows), ncols), QQ)


def rank(rows: Sequence[Sequence]) -> int:
    if not rows or not rows[0]:
        return 0
    return as_domain_matrix(rows).rank()


def inverse(rows: Sequence[Sequence]) -> list[list[Fraction]]:
    inv = as_domain_matrix(rows).inv()
    return [[_from_qq(x) for x in r] for r in inv.to_list()]


def solve(rows: Sequence[Sequence], rhs: Sequence) -> list[Fraction] | None:
    """Exact solution of ``rows @ x = rhs`` for a full-column-rank system, ``None`` if inconsistent."""
    a = [list(map(Fraction, r)) for r in rows]
    ncols = len(a[0])
    ata = [[sum(a[k][i] * a[k][j] for k in range(len(a))) for j in range(ncols)] for i in range(ncols)]
    atb = [sum(a[k][i] * Fraction(rhs[k]) for k in range(len(a))) for i in range(ncols)]
    inv = inverse(ata)
    x = [sum(inv[i][j] * atb[j] for j in range(ncols)) for i in range(ncols)]
    for k, r in enumerate(a):
        if sum(r[j] * x[j] for j in range(ncols)) != Fraction(rhs[k]):
            return None
    return x


def lattice_basis(generators: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """A Z-basis (Hermite normal form columns) of the lattice spanned by integer vectors."""
    gens = [list(g) for g in generators if any(g)]
    if not gens:
        return []
    m = Matrix(gens).T
    h = hermite_normal_form(m)
    cols = [tuple(int(h[i, j]) for i in range(h.rows)) for j in range(h.cols)]
    return [c for c in cols if any(c)]
