"""Independent reference computations used by the tests.

Nothing here calls the package's polynomial, series, Weyl-group or
linear-algebra code; inputs are raw root data (Gram matrix, roots, the
involution) and everything else is recomputed with sympy or plain
integer arithmetic.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import product

import sympy as sp


# ---------------------------------------------------------------------------
# Bernoulli numbers and the Todd series

def bernoulli_numbers(n: int) -> list[Fraction]:
    """B_0..B_n with B_1 = -1/2, from sum_{k<=m} C(m+1, k) B_k = 0."""
    b = [Fraction(1)]
    for m in range(1, n + 1):
        s = sum(math.comb(m + 1, k) * b[k] for k in range(m))
        b.append(-s / (m + 1))
    return b


def todd_coefficients(n: int) -> list[Fraction]:
    """Coefficients of x / (1 - e^{-x}) = sum (-1)^k B_k x^k / k!."""
    return [(-1) ** k * bk / math.factorial(k) for k, bk in enumerate(bernoulli_numbers(n))]


# ---------------------------------------------------------------------------
# sympy mirrors of polynomials

def symbols(n: int):
    return sp.symbols(f"x0:{n}")


def to_sympy(p, xs):
    """A package polynomial as a sympy expression."""
    expr = sp.Integer(0)
    for mon, c in p.terms.items():
        term = sp.Rational(Fraction(c).numerator, Fraction(c).denominator)
        for x, e in zip(xs, mon):
            term *= x ** e
        expr += term
    return expr


def linear_form(chi, xs):
    return sum(int(c) * x for c, x in zip(chi, xs))


def vanishes_on_hyperplane(expr, chi, xs) -> bool:
    """Specialization test: substitute a parametrization of ``chi = 0``."""
    p = next(j for j, c in enumerate(chi) if c)
    sub = {xs[p]: -sum(sp.Rational(chi[j], chi[p]) * xs[j] for j in range(len(xs)) if j != p)}
    return sp.expand(expr.subs(sub)) == 0


# ---------------------------------------------------------------------------
# Weyl group data from a Gram matrix

class MatrixWeyl:
    """Weyl group of a root lattice, enumerated as integer matrices.

    Columns of a matrix are the images of the simple roots in simple-root
    coordinates; the group is closed under the simple reflections.
    """

    def __init__(self, gram):
        self.gram = [[Fraction(x) for x in row] for row in gram]
        self.n = len(gram)
        self.simple = [self.reflection(tuple(1 if k == i else 0 for k in range(self.n))) for i in range(self.n)]
        ident = tuple(tuple(1 if i == j else 0 for j in range(self.n)) for i in range(self.n))
        seen = {ident}
        frontier = [ident]
        while frontier:
            nxt = []
            for m in frontier:
                for s in self.simple:
                    u = _matmul(m, s)
                    if u not in seen:
                        seen.add(u)
                        nxt.append(u)
            frontier = nxt
        self.elements = sorted(seen)

    def inner(self, a, b) -> Fraction:
        return sum(self.gram[i][j] * a[i] * b[j] for i in range(self.n) for j in range(self.n))

    def reflection(self, alpha):
        """Matrix of ``x -> x - 2 (x, a)/(a, a) a``."""
        aa = self.inner(alpha, alpha)
        cols = []
        for j in range(self.n):
            e = [1 if k == j else 0 for k in range(self.n)]
            c = 2 * self.inner(e, alpha) / aa
            cols.append([e[k] - c * alpha[k] for k in range(self.n)])
        return tuple(tuple(int(cols[j][i]) for j in range(self.n)) for i in range(self.n))


def _matmul(a, b):
    n = len(a)
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)) for i in range(n))


def apply(m, chi):
    return tuple(sum(m[i][j] * chi[j] for j in range(len(chi))) for i in range(len(m)))


def act_expr(m, expr, xs):
    """``w . f``: substitute each simple root by its image under ``w``."""
    return expr.xreplace({xs[j]: sum(m[k][j] * xs[k] for k in range(len(xs))) for j in range(len(xs))})


# ---------------------------------------------------------------------------
# brute-force dimensions of equivariant tuples

def brute_force_tuple_dims(roots, gram, theta_cols, d: int) -> tuple[int, int]:
    """Dimensions of degree-``d`` equivariant GKM tuples on X and on Y.

    An equivariant tuple is ``g -> g f`` over all of ``W_G`` (X) or of ``W_K``
    (Y). Unknown: ``f`` over the full monomial basis. Constraints: invariance
    under the simple reflections of the fixed subsystem, and every edge
    congruence at every group element, tested by substituting a
    parametrization of the edge hyperplane. Returns the two null-space
    dimensions.
    """
    n = len(gram)
    xs = symbols(n)
    W = MatrixWeyl(gram)
    theta = tuple(tuple(theta_cols[j][i] for j in range(n)) for i in range(n))
    roots = [tuple(r) for r in roots]
    positive = [r for r in roots if sum(r) > 0]
    fixed = [r for r in roots if apply(theta, r) == r]
    fixed_simple = [r for r in fixed if sum(r) == 1]
    moving = [r for r in positive if r not in fixed]
    gammas, lifts = [], []
    for j in range(n):
        a = tuple(1 if k == j else 0 for k in range(n))
        if a in fixed:
            continue
        ta = apply(theta, a)
        g = tuple(x - y for x, y in zip(a, ta))
        if g not in gammas:
            gammas.append(g)
            lifts.append(_matmul(W.reflection(a), W.reflection(ta)))
    WK = [m for m in W.elements if _matmul(m, theta) == _matmul(theta, m)]

    monos = [e for e in product(range(d + 1), repeat=n) if sum(e) == d]
    basis = [sp.Mul(*[x ** e for x, e in zip(xs, mon)]) for mon in monos]

    def rows_for(constraints):
        """Rows of the linear map ``coefficients -> constraint residues``."""
        keyed: dict = {}
        for k, (diff_of, chi) in enumerate(constraints):
            for col, b in enumerate(basis):
                expr = sp.expand(diff_of(b))
                if expr == 0:
                    continue
                if chi is not None:
                    p = next(j for j, c in enumerate(chi) if c)
                    sub = {xs[p]: -sum(sp.Rational(chi[j], chi[p]) * xs[j] for j in range(n) if j != p)}
                    expr = sp.expand(expr.subs(sub))
                for mon, c in sp.Poly(expr, *xs).terms() if expr != 0 else []:
                    keyed.setdefault((k, mon), [0] * len(basis))[col] = c
        return list(keyed.values())

    inv = [(lambda b, s=W.reflection(r): act_expr(s, b, xs) - b, None) for r in fixed_simple]

    def edges(group, along_roots):
        out = []
        for g in group:
            for a in along_roots:
                s = W.reflection(a)
                out.append((lambda b, g=g, s=s: act_expr(g, b, xs) - act_expr(_matmul(g, s), b, xs), apply(g, a)))
            for gm, t in zip(gammas, lifts):
                out.append((lambda b, g=g, t=t: act_expr(g, b, xs) - act_expr(_matmul(g, t), b, xs), apply(g, gm)))
        return out

    def null_dim(constraints):
        rows = rows_for(constraints)
        if not rows:
            return len(basis)
        return len(basis) - sp.Matrix(rows).rank()

    return null_dim(inv + edges(W.elements, moving)), null_dim(inv + edges(WK, []))


# ---------------------------------------------------------------------------
# toric surfaces from a fan

def a2_chamber_fan() -> list[tuple[int, int]]:
    """Rays of the Weyl-chamber fan of A2 in the fundamental co-weight basis, in cyclic order.

    The rays are the orbits of the two fundamental co-weights under the
    reflections ``s_i(w_j) = w_j - delta_ij a_i^vee`` with ``a_1^vee = 2w_1 - w_2``
    and ``a_2^vee = -w_1 + 2w_2``.
    """
    coroots = [(2, -1), (-1, 2)]

    def refl(i, v):
        # pairing of the co-weight v with the simple root a_i is its i-th coordinate
        return tuple(x - v[i] * c for x, c in zip(v, coroots[i]))

    rays = {(1, 0), (0, 1)}
    frontier = list(rays)
    while frontier:
        nxt = []
        for v in frontier:
            for i in range(2):
                u = refl(i, v)
                if u not in rays:
                    rays.add(u)
                    nxt.append(u)
        frontier = nxt
    # planar picture: w_1 = (1, 0), w_2 = (1/2, sqrt(3)/2)
    return sorted(rays, key=lambda v: math.atan2(v[1] * math.sqrt(3) / 2, v[0] + v[1] / 2))


def toric_surface_invariants(rays: list[tuple[int, int]]) -> tuple[list[int], int]:
    """Betti numbers and ``c_1^2`` of the smooth complete toric surface of a 2-d fan.

    Self-intersections come from ``v_{i-1} + v_{i+1} = a_i v_i`` (``D_i^2 = -a_i``),
    neighbouring rays meet once, and ``c_1 = sum D_i``.
    """
    n = len(rays)
    self_int = []
    for i, v in enumerate(rays):
        s = tuple(a + b for a, b in zip(rays[i - 1], rays[(i + 1) % n]))
        k = next(j for j in range(2) if v[j])
        a = Fraction(s[k], v[k])
        assert a.denominator == 1 and tuple(a * x for x in v) == s, "fan is not smooth"
        self_int.append(-int(a))
    c1_squared = sum(self_int) + 2 * n
    return [1, n - 2, 1], c1_squared
