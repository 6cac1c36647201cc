"""Characters and sparse multivariate polynomials with exact rational coefficients.

Characters are integer vectors in the basis of simple roots; a polynomial in
``n`` variables is an element of the symmetric algebra of the character
lattice, variable ``a_j`` standing for the ``j``-th simple root.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

Character = tuple[int, ...]
Exponent = tuple[int, ...]
Scalar = Union[int, Fraction]


def character(coords: Iterable[int], rank: int | None = None) -> Character:
    chi = tuple(int(c) for c in coords)
    if rank is not None and len(chi) != rank:
        raise ValueError(f"character {chi} has length {len(chi)}, expected {rank}")
    return chi


def char_add(a: Sequence[int], b: Sequence[int]) -> Character:
    return tuple(x + y for x, y in zip(a, b))


def char_sub(a: Sequence[int], b: Sequence[int]) -> Character:
    return tuple(x - y for x, y in zip(a, b))


def char_neg(a: Sequence[int]) -> Character:
    return tuple(-x for x in a)


def is_zero_char(a: Sequence[int]) -> bool:
    return not any(a)


def pairing(chi: Sequence[int], v: Sequence[Scalar]) -> Fraction:
    """Evaluate the cocharacter ``v`` (given by its values on the simple roots) on ``chi``."""
    if len(chi) != len(v):
        raise ValueError(f"dimension mismatch: character of length {len(chi)}, cocharacter of length {len(v)}")
    return Fraction(sum(c * x for c, x in zip(chi, v)))


def _normalize(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


class Polynomial:
    """Immutable sparse polynomial ``{exponent vector: coefficient}``.

    ``max_degree`` marks a truncated polynomial: terms of higher total degree
    are dropped by every operation, and products of truncated polynomials
    are truncated at the smaller bound.
    """

    __slots__ = ("nvars", "terms", "max_degree", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Exponent, Scalar] | None = None,
                 max_degree: int | None = None):
        clean: dict[Exponent, Scalar] = {}
        if terms:
            for e, c in terms.items():
                if len(e) != nvars:
                    raise ValueError(f"exponent {e} does not have {nvars} entries")
                if any(x < 0 for x in e):
                    raise ValueError(f"negative exponent {e}")
                if max_degree is not None and sum(e) > max_degree:
                    continue
                if c:
                    clean[tuple(e)] = _normalize(Fraction(c) if not isinstance(c, int) else c)
        self.nvars = nvars
        self.terms = clean
        self.max_degree = max_degree
        self._hash = None

    @classmethod
    def _raw(cls, nvars: int, terms: dict, max_degree: int | None) -> "Polynomial":
        p = cls.__new__(cls)
        p.nvars = nvars
        p.terms = terms
        p.max_degree = max_degree
        p._hash = None
        return p

    # construction

    @classmethod
    def zero(cls, nvars: int, max_degree: int | None = None) -> "Polynomial":
        return cls._raw(nvars, {}, max_degree)

    @classmethod
    def constant(cls, c: Scalar, nvars: int, max_degree: int | None = None) -> "Polynomial":
        return cls(nvars, {(0,) * nvars: c}, max_degree)

    @classmethod
    def one(cls, nvars: int, max_degree: int | None = None) -> "Polynomial":
        return cls.constant(1, nvars, max_degree)

    @classmethod
    def variable(cls, j: int, nvars: int) -> "Polynomial":
        e = [0] * nvars
        e[j] = 1
        return cls._raw(nvars, {tuple(e): 1}, None)

    @classmethod
    def linear(cls, chi: Sequence[Scalar], max_degree: int | None = None) -> "Polynomial":
        """The degree-one polynomial of a character (or rational vector)."""
        n = len(chi)
        terms = {}
        for j, c in enumerate(chi):
            if c:
                e = [0] * n
                e[j] = 1
                terms[tuple(e)] = _normalize(c) if isinstance(c, Fraction) else c
        if max_degree is not None and max_degree < 1:
            terms = {}
        return cls._raw(n, terms, max_degree)

    # basic queries

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; ``-1`` for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def min_degree(self) -> int:
        return min((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def degrees(self) -> list[int]:
        return sorted({sum(e) for e in self.terms})

    def homogeneous_part(self, d: int) -> "Polynomial":
        return Polynomial._raw(self.nvars, {e: c for e, c in self.terms.items() if sum(e) == d}, None)

    def truncate(self, n: int | None) -> "Polynomial":
        if n is None:
            return Polynomial._raw(self.nvars, dict(self.terms), None)
        bound = n if self.max_degree is None else min(n, self.max_degree)
        return Polynomial._raw(self.nvars, {e: c for e, c in self.terms.items() if sum(e) <= bound}, bound)

    def coefficient(self, e: Exponent) -> Scalar:
        return self.terms.get(tuple(e), 0)

    def constant_term(self) -> Scalar:
        return self.terms.get((0,) * self.nvars, 0)

    # arithmetic

    def _check(self, other: "Polynomial") -> None:
        if self.nvars != other.nvars:
            raise ValueError(f"polynomials in {self.nvars} and {other.nvars} variables")

    def _bound(self, other: "Polynomial") -> int | None:
        if self.max_degree is None:
            return other.max_degree
        if other.max_degree is None:
            return self.max_degree
        return min(self.max_degree, other.max_degree)

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(other, self.nvars)
        return NotImplemented

    def __add__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        bound = self._bound(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = _normalize(v)
            else:
                out.pop(e, None)
        if bound is not None:
            out = {e: c for e, c in out.items() if sum(e) <= bound}
        return Polynomial._raw(self.nvars, out, bound)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw(self.nvars, {e: -c for e, c in self.terms.items()}, self.max_degree)

    def __sub__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "Polynomial":
        return (-self) + other

    def scale(self, c: Scalar) -> "Polynomial":
        if not c:
            return Polynomial._raw(self.nvars, {}, self.max_degree)
        return Polynomial._raw(self.nvars, {e: _normalize(v * c) for e, v in self.terms.items()}, self.max_degree)

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        bound = self._bound(other)
        out: dict[Exponent, Scalar] = {}
        a = [(e, sum(e), c) for e, c in self.terms.items()]
        b = [(e, sum(e), c) for e, c in other.terms.items()]
        for ea, da, ca in a:
            for eb, db, cb in b:
                if bound is not None and da + db > bound:
                    continue
                e = tuple(x + y for x, y in zip(ea, eb))
                v = out.get(e, 0) + ca * cb
                if v:
                    out[e] = v
                else:
                    del out[e]
        return Polynomial._raw(self.nvars, {e: _normalize(c) for e, c in out.items()}, bound)

    __rmul__ = __mul__

    def __truediv__(self, c: Scalar) -> "Polynomial":
        if isinstance(c, Polynomial):
            return NotImplemented
        return self.scale(Fraction(1) / Fraction(c))

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            raise ValueError("negative power")
        result = Polynomial.one(self.nvars, self.max_degree)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def mul_linear(self, chi: Sequence[Scalar], max_degree: int | None = None) -> "Polynomial":
        """Multiply by the linear form of ``chi`` (cheaper than a general product)."""
        bound = self.max_degree if max_degree is None else (
            max_degree if self.max_degree is None else min(max_degree, self.max_degree))
        out: dict[Exponent, Scalar] = {}
        nz = [(j, c) for j, c in enumerate(chi) if c]
        for e, v in self.terms.items():
            if bound is not None and sum(e) + 1 > bound:
                continue
            for j, c in nz:
                f = e[:j] + (e[j] + 1,) + e[j + 1:]
                w = out.get(f, 0) + v * c
                if w:
                    out[f] = w
                else:
                    del out[f]
        return Polynomial._raw(self.nvars, {e: _normalize(c) for e, c in out.items()}, bound)

    # evaluation and substitution

    def eval_at(self, point: Sequence[Scalar]) -> Fraction:
        if len(point) != self.nvars:
            raise ValueError(f"point of length {len(point)} for polynomial in {self.nvars} variables")
        total: Scalar = 0
        powers: list[dict[int, Scalar]] = [{0: 1} for _ in range(self.nvars)]
        for e, c in self.terms.items():
            t = c
            for j, k in enumerate(e):
                if k:
                    pj = powers[j]
                    if k not in pj:
                        pj[k] = point[j] ** k
                    t = t * pj[k]
            total += t
        return Fraction(total)

    def substitute_linear(self, images: Sequence[Sequence[Scalar]]) -> "Polynomial":
        """Substitute ``a_j -> sum_k images[j][k] a_k`` for every variable ``j``."""
        if len(images) != self.nvars:
            raise ValueError("one image per variable is required")
        if not self.terms:
            return self
        n = len(images[0])
        lin = [Polynomial.linear(v) for v in images]
        powers: list[list[Polynomial]] = [[Polynomial.one(n)] for _ in range(self.nvars)]
        out = Polynomial.zero(n)
        for e, c in self.terms.items():
            t = Polynomial.constant(c, n)
            for j, k in enumerate(e):
                if k:
                    pj = powers[j]
                    while len(pj) <= k:
                        pj.append(pj[-1] * lin[j])
                    t = t * pj[k]
            out = out + t
        return Polynomial._raw(n, out.terms, self.max_degree)

    def restrict_to_hyperplane(self, chi: Sequence[int]) -> "Polynomial":
        """Restriction to ``chi = 0``, parametrized by eliminating the pivot variable of ``chi``."""
        k = _pivot(chi)
        images = []
        for j in range(self.nvars):
            if j == k:
                images.append([Fraction(-c, chi[k]) if i != k else 0 for i, c in enumerate(chi)])
            else:
                images.append([1 if i == j else 0 for i in range(self.nvars)])
        return self.substitute_linear(images)

    # comparison and display

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(other, self.nvars)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def sorted_terms(self) -> list[tuple[Exponent, Scalar]]:
        return sorted(self.terms.items(), key=lambda t: (-sum(t[0]), tuple(-x for x in t[0])))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(f"a{j + 1}" + (f"^{k}" if k > 1 else "") for j, k in enumerate(e) if k)
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            parts.append((sign, body))
        head_sign, head = parts[0]
        s = ("-" if head_sign == "-" else "") + head
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    def __repr__(self) -> str:
        return f"Polynomial({self.nvars}, '{self}')"


def _pivot(chi: Sequence[int]) -> int:
    # prefer a unit coefficient so the elimination stays integral when possible
    nz = [j for j, c in enumerate(chi) if c]
    if not nz:
        raise ValueError("the zero character defines no hyperplane")
    for j in nz:
        if abs(chi[j]) == 1:
            return j
    return min(nz, key=lambda j: abs(chi[j]))


def divisible_by_linear(f: Polynomial, chi: Sequence[int]) -> tuple[bool, Polynomial | None]:
    """Exact test whether the linear form of ``chi`` divides ``f``.

    Synthetic division in a pivot variable ``a_k`` of ``chi``: writing
    ``l = chi_k a_k + r`` and ``f = sum_e A_e a_k^e``, the quotient
    coefficients satisfy ``Q_{e-1} = (A_e - r Q_e) / chi_k`` and the
    remainder is ``A_0 - r Q_0``.
    """
    if len(chi) != f.nvars:
        raise ValueError("dimension mismatch between character and polynomial")
    k = _pivot(chi)
    n = f.nvars
    ck = chi[k]
    if f.is_zero():
        return True, Polynomial.zero(n)
    slices: dict[int, dict[Exponent, Scalar]] = {}
    for e, c in f.terms.items():
        slices.setdefault(e[k], {})[e[:k] + (0,) + e[k + 1:]] = c
    top = max(slices)
    if top == 0:
        return False, None
    rest = [0 if j == k else c for j, c in enumerate(chi)]
    A = {d: Polynomial._raw(n, t, None) for d, t in slices.items()}
    zero = Polynomial.zero(n)
    Q: dict[int, Polynomial] = {top - 1: A[top] / ck}
    for d in range(top - 1, 0, -1):
        Q[d - 1] = (A.get(d, zero) - Q[d].mul_linear(rest)) / ck
    remainder = A.get(0, zero) - Q[0].mul_linear(rest)
    if not remainder.is_zero():
        return False, None
    out: dict[Exponent, Scalar] = {}
    for d, q in Q.items():
        for e, c in q.terms.items():
            out[e[:k] + (d,) + e[k + 1:]] = c
    bound = None if f.max_degree is None else f.max_degree - 1
    return True, Polynomial._raw(n, out, bound)


def monomials(nvars: int, degree: int) -> list[Exponent]:
    """All exponent vectors of the given total degree, in a fixed order."""
    if nvars == 0:
        return [()] if degree == 0 else []
    if nvars == 1:
        return [(degree,)]
    out = []
    for first in range(degree, -1, -1):
        for rest in monomials(nvars - 1, degree - first):
            out.append((first,) + rest)
    return out


def elementary_symmetric(forms: Sequence[Sequence[int]], nvars: int, top: int | None = None) -> list[Polynomial]:
    """``e_0, ..., e_top`` of the given linear forms (the graded pieces of prod (1 + t l))."""
    top = len(forms) if top is None else top
    e = [Polynomial.one(nvars)] + [Polynomial.zero(nvars) for _ in range(top)]
    for chi in forms:
        for k in range(top, 0, -1):
            if not e[k - 1].is_zero():
                e[k] = e[k] + e[k - 1].mul_linear(chi)
    return e
