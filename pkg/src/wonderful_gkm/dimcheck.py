"""Degree-wise dimensions of equivariant GKM tuples on X and on Y.

For each degree ``d`` we count

* ``X``: polynomials ``f`` in ``S^{W_L}_d`` whose translates ``wW_L -> w f``
  satisfy every edge congruence of the X-graph;
* ``Y``: the same with the Y-graph (translates by the lifts of ``W_{G/K}``).

Both are computed as ``dim S^{W_L}_d - rank(constraints)`` with exact
rational ranks. A third column predicts the X dimension from the Betti
numbers of X and the degrees of the invariants of ``W_G``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .gkm import bb_betti
from .poly import Polynomial, monomials
from .rootsystem import fundamental_degrees, type_factors
from .wonderful import WonderfulGKM

DEFAULT_COLUMN_CAP = 20_000


class DimensionCapError(RuntimeError):
    pass


@dataclass
class DimRow:
    degree: int
    invariants: int     # dim S^{W_L}_d
    x_dim: int
    y_dim: int
    hilbert: int        # prediction for x_dim

    @property
    def agree(self) -> bool:
        return self.x_dim == self.y_dim

    def to_json(self) -> dict:
        return {"degree": self.degree, "invariants_WL": self.invariants, "X": self.x_dim,
                "Y": self.y_dim, "hilbert_prediction": self.hilbert, "equal": self.agree}


def invariant_basis(W: WonderfulGKM, d: int, cap: int = DEFAULT_COLUMN_CAP) -> list[Polynomial]:
    """A basis of ``S^{W_L}_d`` from Reynolds averages of monomials."""
    s = W.space
    n = s.n
    mons = monomials(n, d)
    if len(mons) > cap:
        raise DimensionCapError(f"{len(mons)} monomials in degree {d} exceed the cap {cap}")
    wl = s.W_L
    basis: list[Polynomial] = []
    rows: list[list[Fraction]] = []
    seen = set()
    for m in mons:
        f = Polynomial(n, {m: 1})
        avg = Polynomial.zero(n)
        for g in wl:
            avg = avg + s.weyl.act_poly(g, f)
        if avg.is_zero() or avg in seen:
            continue
        seen.add(avg)
        row = [Fraction(avg.coefficient(e)) for e in mons]
        if linalg.rank(rows + [row]) > len(rows):
            rows.append(row)
            basis.append(avg.scale(Fraction(1, len(wl))))
    return basis


def _constraint_rank(W: WonderfulGKM, basis: list[Polynomial], on_y: bool) -> int:
    if not basis:
        return 0
    s = W.space
    graph = W.Y if on_y else W.X
    verts = [s.X_vertices[x] for x in W.y_to_x] if on_y else list(s.X_vertices)
    columns = []
    keys: dict[tuple, int] = {}
    for f in basis:
        tup = [s.weyl.act_poly(u, f) for u in verts]
        col: dict[int, Fraction] = {}
        for k, e in enumerate(graph.edges):
            diff = tup[e.u] - tup[e.v]
            if diff.is_zero():
                continue
            rest = diff.restrict_to_hyperplane(e.weight)
            for mon, c in rest.terms.items():
                idx = keys.setdefault((k, mon), len(keys))
                col[idx] = Fraction(c)
        columns.append(col)
    if not keys:
        return 0
    matrix = [[col.get(i, Fraction(0)) for col in columns] for i in range(len(keys))]
    return linalg.rank(matrix)


def hilbert_prediction(W: WonderfulGKM, d_max: int) -> list[int]:
    """Coefficients of ``P_X(t) / prod (1 - t^{d_i})`` up to ``t^{d_max}``."""
    betti = bb_betti(W.X)
    degs = [d for letter, rank in type_factors(W.space.rs.type_name()) for d in fundamental_degrees(letter, rank)]
    series = [betti[k] if k < len(betti) else 0 for k in range(d_max + 1)]
    for deg in degs:
        for k in range(deg, d_max + 1):
            series[k] += series[k - deg]
    return series


def tuple_dimension_check(W: WonderfulGKM, d_max: int = 3, cap: int = DEFAULT_COLUMN_CAP) -> list[DimRow]:
    """Dimensions of degree-``d`` equivariant GKM tuples on X and Y for ``d <= d_max``."""
    hil = hilbert_prediction(W, d_max)
    rows = []
    for d in range(d_max + 1):
        basis = invariant_basis(W, d, cap)
        if len(basis) * max(len(W.X.edges), 1) > cap * 50:
            raise DimensionCapError(f"degree {d}: constraint system too large")
        x = len(basis) - _constraint_rank(W, basis, on_y=False)
        y = len(basis) - _constraint_rank(W, basis, on_y=True)
        rows.append(DimRow(d, len(basis), x, y, hil[d]))
    return rows
