"""Class expressions such as ``c1(T)^3``, ``X1*Y1,s1*L(2)`` or ``td(T)``, and their integrals.

Grammar::

    expr := term ("*" term)*
    term := atom ("^" uint)?
    atom := "c" uint "(" ("T"|"S") ")" | "X" uint | "Y" uint "," ident
          | "td(T)" | "td(S)" | "L(" uint ")"
    ident := "e" | ("s" uint)+

An expression containing ``Y`` or ``L`` atoms is integrated over Y (``X``
atoms are then restricted to Y); otherwise it is integrated over X.
"""

from __future__ import annotations

import re
from math import lcm
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .gkm import GKMError, generic_points
from .series import TruncatedSeries, todd_series
from .wonderful import WonderfulGKM


class ExprSyntaxError(ValueError):
    def __init__(self, message: str, text: str, position: int):
        self.message = message
        self.text = text
        self.position = position
        super().__init__(f"{message} at position {position}\n  {text}\n  {' ' * position}^")


class DegreeMismatch(ValueError):
    def __init__(self, degree: int, dim: int, variety: str):
        self.degree = degree
        self.dim = dim
        self.variety = variety
        super().__init__(f"expression has degree {degree} but dim {variety} = {dim}")


@dataclass(frozen=True)
class Atom:
    kind: str            # "c", "X", "Y", "td", "L"
    index: int = 0       # k of c_k, i of X_i / Y_{i,w}, beta index of L
    bundle: str = ""     # "T" or "S"
    ident: str = ""      # Weyl word of Y_{i,w}

    def __str__(self) -> str:
        if self.kind == "c":
            return f"c{self.index}({self.bundle})"
        if self.kind == "td":
            return f"td({self.bundle})"
        if self.kind == "X":
            return f"X{self.index}"
        if self.kind == "Y":
            return f"Y{self.index},{self.ident}"
        return f"L({self.index})"

    @property
    def degree(self) -> int:
        """Lowest degree (``td`` is inhomogeneous starting in degree 0)."""
        return {"c": self.index, "td": 0}.get(self.kind, 1)


@dataclass(frozen=True)
class Term:
    atom: Atom
    power: int = 1

    def __str__(self) -> str:
        return str(self.atom) if self.power == 1 else f"{self.atom}^{self.power}"


@dataclass(frozen=True)
class ClassExpr:
    terms: tuple[Term, ...]

    def __str__(self) -> str:
        return "*".join(map(str, self.terms))

    @property
    def degree(self) -> int:
        """Degree of the homogeneous part (``td`` factors contribute nothing)."""
        return sum(t.atom.degree * t.power for t in self.terms)

    @property
    def homogeneous(self) -> bool:
        return not any(t.atom.kind == "td" for t in self.terms)

    @property
    def on_y(self) -> bool:
        return any(t.atom.kind in ("Y", "L") for t in self.terms)


_TOKENS = [
    ("C", re.compile(r"c(\d+)\(\s*([TS])\s*\)")),
    ("TD", re.compile(r"td\(\s*([TS])\s*\)")),
    ("L", re.compile(r"L\(\s*(\d+)\s*\)")),
    ("Y", re.compile(r"Y(\d+)\s*,\s*(e|(?:s\d+)+)")),
    ("X", re.compile(r"X(\d+)")),
]


def parse_expr(text: str) -> ClassExpr:
    pos = 0
    n = len(text)
    terms = []

    def skip(p):
        while p < n and text[p].isspace():
            p += 1
        return p

    while True:
        pos = skip(pos)
        for kind, rx in _TOKENS:
            m = rx.match(text, pos)
            if m:
                break
        else:
            raise ExprSyntaxError("expected c<k>(T|S), td(T|S), X<i>, Y<i>,<word> or L(<k>)", text, pos)
        start = pos
        if kind == "C":
            atom = Atom("c", int(m.group(1)), m.group(2))
            if atom.index == 0:
                raise ExprSyntaxError("c0 has degree 0 and contributes nothing; remove it", text, start)
        elif kind == "TD":
            atom = Atom("td", bundle=m.group(1))
        elif kind == "L":
            atom = Atom("L", int(m.group(1)))
        elif kind == "Y":
            atom = Atom("Y", int(m.group(1)), ident=m.group(2))
        else:
            atom = Atom("X", int(m.group(1)))
        if kind in ("L", "Y", "X") and atom.index == 0:
            raise ExprSyntaxError("indices are 1-based", text, start)
        pos = skip(m.end())
        power = 1
        if pos < n and text[pos] == "^":
            pm = re.compile(r"\s*(\d+)").match(text, pos + 1)
            if not pm:
                raise ExprSyntaxError("expected an exponent", text, pos + 1)
            power = int(pm.group(1))
            if power == 0:
                raise ExprSyntaxError("exponent 0 gives a degree-0 factor; remove it", text, pos + 1)
            pos = skip(pm.end())
        terms.append(Term(atom, power))
        if pos == n:
            break
        if text[pos] != "*":
            raise ExprSyntaxError("expected '*' or end of input", text, pos)
        pos += 1
    return ClassExpr(tuple(terms))


def check_indices(W: WonderfulGKM, expr: ClassExpr) -> None:
    for t in expr.terms:
        a = t.atom
        if a.kind == "X" and not 1 <= a.index <= W.r:
            raise IndexError(f"X{a.index}: boundary index must be in 1..{W.r}")
        if a.kind == "L" and not 1 <= a.index <= len(W.space.betas):
            raise IndexError(f"L({a.index}): index must be in 1..{len(W.space.betas)}")
        if a.kind == "Y":
            W.boundary_key(a.index, a.ident)
        if a.kind == "c" and a.index > W.dim_X:
            raise IndexError(f"c{a.index} exceeds dim X = {W.dim_X}")


# ---------------------------------------------------------------------------
# evaluation by scaling: substitute a = lambda * p and keep a series in lambda

def _series_mul(a: list, b: list, top: int) -> list:
    out = [Fraction(0)] * (top + 1)
    for i, x in enumerate(a):
        if x:
            for j in range(min(len(b), top + 1 - i)):
                out[i + j] += x * b[j]
    return out


def _elementary(values: Sequence[int], top: int) -> list:
    e = [Fraction(1)] + [Fraction(0)] * top
    for v in values:
        for k in range(top, 0, -1):
            e[k] += e[k - 1] * v
    return e


def _todd_of_values(values: Sequence[int], top: int, series: TruncatedSeries) -> list:
    """``prod_v sum_k c_k (v lambda)^k`` over the nonzero values, truncated at ``top``."""
    den = lcm(*(series[k].denominator for k in range(top + 1)))
    coeffs = [int(series[k] * den) for k in range(top + 1)]
    out = [1] + [0] * top
    m = 0
    for v in values:
        if v:
            m += 1
            f = [c * v ** k for k, c in enumerate(coeffs)]
            out = [sum(out[i] * f[k - i] for i in range(k + 1)) for k in range(top + 1)]
    scale = den ** m
    return [Fraction(x, scale) for x in out]


def _atom_series(W: WonderfulGKM, atom: Atom, vertex: int, on_y: bool, pt: Sequence[int], top: int,
                 cache: dict) -> list:
    """The atom's value at ``lambda * pt`` as a list of lambda-coefficients."""
    def ev(chi):
        return sum(c * x for c, x in zip(chi, pt))

    x = W.y_to_x[vertex] if on_y else vertex
    tang = W.X.tangents[x]
    ngam = len(W.space.N_plus)
    if atom.kind in ("c", "td"):
        key = (atom.kind, atom.bundle, x, tuple(pt))
        hit = cache.get(key)
        if hit is None:
            vals = [ev(chi) for chi in tang]
            if atom.kind == "c":
                hit = _elementary(vals, top)
                if atom.bundle == "S":
                    for g in vals[ngam:]:
                        # divide by (1 + g lambda)
                        for k in range(1, top + 1):
                            hit[k] -= g * hit[k - 1]
            else:
                hit = _todd_of_values(vals, top, cache.setdefault("td", todd_series(top)))
                if atom.bundle == "S":
                    inv = cache.setdefault("inv", todd_series(top).reciprocal())
                    hit = _series_mul(hit, _todd_of_values(vals[ngam:], top, inv), top)
            cache[key] = hit
        if atom.kind == "c":
            return [Fraction(0)] * atom.index + [hit[atom.index]]
        return hit
    if atom.kind == "X":
        chi = W.space.act(x, W.space.gammas[atom.index - 1])
    elif atom.kind == "Y":
        key = W.boundary_key(atom.index, atom.ident)
        cls = cache.get(("Y", key))
        if cls is None:
            cls = cache[("Y", key)] = W.boundary_classes_Y[key]
        p = cls[vertex]
        return [Fraction(0), p.eval_at(pt)]
    else:
        cls = cache.get(("L", atom.index))
        if cls is None:
            cls = cache[("L", atom.index)] = W.l_beta_direct(atom.index)
        return [Fraction(0), cls[vertex].eval_at(pt)]
    return [Fraction(0), Fraction(ev(chi))]


def integrate_expr(W: WonderfulGKM, expr: ClassExpr | str) -> tuple[Fraction, str]:
    """Integral of the expression over X or Y; returns ``(value, variety)``.

    Localization at two generic points ``p``: each fixed-point contribution
    ``f_v(lambda p) / e_v(lambda p)`` is a series in ``lambda``; the degree-dim
    coefficient summed over vertices is the integral, and all lower
    coefficients must cancel.
    """
    if isinstance(expr, str):
        expr = parse_expr(expr)
    check_indices(W, expr)
    on_y = expr.on_y
    graph = W.Y if on_y else W.X
    variety = "Y" if on_y else "X"
    dim = graph.dim
    if expr.homogeneous and expr.degree != dim or expr.degree > dim:
        raise DegreeMismatch(expr.degree, dim, variety)
    results = []
    for pt in generic_points(graph):
        cache: dict = {}
        total = [Fraction(0)] * (dim + 1)
        for v in graph.vertices:
            acc = [Fraction(1)] + [Fraction(0)] * dim
            for t in expr.terms:
                s = _atom_series(W, t.atom, v, on_y, pt, dim, cache)
                for _ in range(t.power):
                    acc = _series_mul(acc, s, dim)
            euler = 1
            for chi in graph.tangents[v]:
                euler *= sum(c * x for c, x in zip(chi, pt))
            for k in range(dim + 1):
                if acc[k]:
                    total[k] += acc[k] / euler
        if any(total[k] for k in range(dim)):
            raise GKMError("lower-degree parts do not integrate to zero; the class is not valid")
        results.append(total[dim])
    if results[0] != results[1]:
        raise GKMError(f"localization is not constant ({results[0]} vs {results[1]})")
    return results[0], variety


def expr_class(W: WonderfulGKM, expr: ClassExpr | str, max_degree: int | None = None):
    """The expression as an equivariant class (symbolic route, for small spaces)."""
    from .gkm import EquivariantClass

    if isinstance(expr, str):
        expr = parse_expr(expr)
    check_indices(W, expr)
    on_y = expr.on_y
    graph = W.Y if on_y else W.X
    top = graph.dim if max_degree is None else max_degree
    acc = EquivariantClass.constant(graph, 1, top)
    for t in expr.terms:
        a = t.atom
        if a.kind == "c":
            c = W.chern_total(a.bundle, "direct", top, on_y=on_y).homogeneous_part(a.index)
        elif a.kind == "td":
            c = W.todd_class(a.bundle, "direct", top, on_y=on_y)
        elif a.kind == "X":
            c = W.boundary_class_X(a.index)
            c = W.restrict_r(c) if on_y else c
        elif a.kind == "Y":
            c = W.boundary_class_Y(a.index, a.ident)
        else:
            c = W.l_beta_direct(a.index)
        for _ in range(t.power):
            acc = acc * c
    return acc
