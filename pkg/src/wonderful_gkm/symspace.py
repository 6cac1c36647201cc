"""Symmetric spaces of minimal rank: descriptors, involutions and their root data.

A space is a product of factors

* ``group:T``  -- the group case ``(T x T) / diag(T)``, theta swaps the two copies;
* ``AC:n``     -- ``SL(2n) / Sp(2n)``, root system ``A_{2n-1}``;
* ``DB:n``     -- ``SO(2n) / SO(2n-1)``, root system ``D_n``;
* ``EF6``      -- ``E6 / F4``.

Characters of the maximal torus are integer vectors in the basis of simple
roots ``Delta_G``. The restriction to the torus of K is modelled by
``q(chi) = chi + theta(chi)``, whose kernel is exactly the saturated
``(-1)``-eigenlattice.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from . import linalg
from .poly import Character
from .rootsystem import (
    DEFAULT_MAX_ORDER,
    RootSystem,
    RootSystemError,
    WeylGroup,
    dot,
    euclidean_simple_roots,
    generate_weyl,
    orbit_closure,
    parabolic_min_reps,
    recognize_cartan_type,
    type_factors,
    weyl_order,
)


class SpaceSyntaxError(ValueError):
    """A malformed space descriptor; ``position`` is a 0-based column."""

    def __init__(self, message: str, text: str, position: int):
        self.message = message
        self.text = text
        self.position = position
        super().__init__(f"{message} at position {position}\n  {text}\n  {' ' * position}^")


class SymmetricSpaceError(ValueError):
    """The involution or the derived root data violate a required invariant."""


# ---------------------------------------------------------------------------
# descriptors

@dataclass(frozen=True)
class Factor:
    kind: str          # "group", "AC", "DB" or "EF6"
    letter: str = ""   # group case only
    rank: int = 0      # rank of the group type, or n for AC/DB

    def __str__(self) -> str:
        if self.kind == "group":
            return f"group:{self.letter}{self.rank}"
        if self.kind == "EF6":
            return "EF6"
        return f"{self.kind}:{self.rank}"


@dataclass(frozen=True)
class SpaceDescriptor:
    factors: tuple[Factor, ...]

    def __str__(self) -> str:
        return ",".join(map(str, self.factors))


_GROUP_RANKS = {"A": 1, "B": 2, "C": 2, "D": 3}


def parse_space(text: str) -> SpaceDescriptor:
    """Parse ``factor ("," factor)*``; errors carry the offending column."""
    factors = []
    pos = 0
    n = len(text)
    if not text:
        raise SpaceSyntaxError("empty space descriptor", text, 0)
    while True:
        m = re.compile(r"group:|AC:|DB:|EF6").match(text, pos)
        if not m:
            raise SpaceSyntaxError("expected 'group:', 'AC:', 'DB:' or 'EF6'", text, pos)
        head = m.group(0)
        pos = m.end()
        if head == "EF6":
            factors.append(Factor("EF6"))
        elif head == "group:":
            t = re.compile(r"([A-G])(\d+)").match(text, pos)
            if not t:
                raise SpaceSyntaxError("expected a simple type such as A2, B3, G2", text, pos)
            letter, rank = t.group(1), int(t.group(2))
            ok = (rank >= _GROUP_RANKS[letter]) if letter in _GROUP_RANKS else (
                (letter, rank) in {("E", 6), ("E", 7), ("E", 8), ("F", 4), ("G", 2)})
            if not ok:
                raise SpaceSyntaxError(f"invalid simple type {letter}{rank}", text, pos)
            factors.append(Factor("group", letter, rank))
            pos = t.end()
        else:
            t = re.compile(r"\d+").match(text, pos)
            if not t:
                raise SpaceSyntaxError("expected an integer", text, pos)
            k = int(t.group(0))
            lo = 2 if head == "AC:" else 3
            if k < lo:
                raise SpaceSyntaxError(f"{head[:-1]}:n requires n >= {lo}", text, pos)
            factors.append(Factor(head[:-1], rank=k))
            pos = t.end()
        if pos == n:
            break
        if text[pos] != ",":
            raise SpaceSyntaxError("expected ',' or end of input", text, pos)
        pos += 1
        if pos == n:
            raise SpaceSyntaxError("trailing ','", text, pos)
    return SpaceDescriptor(tuple(factors))


# ---------------------------------------------------------------------------
# Euclidean models with an involution

@dataclass
class _Model:
    dim: int
    roots: list
    theta: list          # dim x dim matrix of Fractions (row-major)
    restricted_rank: int


def _identity(dim: int, sign: int = 1) -> list[list[Fraction]]:
    return [[Fraction(sign if i == j else 0) for j in range(dim)] for i in range(dim)]


def _factor_model(f: Factor) -> _Model:
    if f.kind == "group":
        dim, simple = euclidean_simple_roots(f.letter, f.rank)
        roots = orbit_closure(simple)
        zero = (Fraction(0),) * dim
        theta = [[Fraction(0)] * (2 * dim) for _ in range(2 * dim)]
        for i in range(dim):
            theta[i][dim + i] = Fraction(1)
            theta[dim + i][i] = Fraction(1)
        doubled = [r + zero for r in roots] + [zero + r for r in roots]
        return _Model(2 * dim, doubled, theta, f.rank)
    if f.kind == "AC":
        dim, simple = euclidean_simple_roots("A", 2 * f.rank - 1)
        theta = [[Fraction(0)] * dim for _ in range(dim)]
        for i in range(0, dim, 2):
            theta[i + 1][i] = Fraction(-1)
            theta[i][i + 1] = Fraction(-1)
        return _Model(dim, orbit_closure(simple), theta, f.rank - 1)
    if f.kind == "DB":
        dim, simple = euclidean_simple_roots("D", f.rank)
        theta = _identity(dim)
        theta[0][0] = Fraction(-1)
        return _Model(dim, orbit_closure(simple), theta, 1)
    # EF6: +1 on the span of the D4 subsystem alpha_2..alpha_5, -1 on its complement
    dim, simple = euclidean_simple_roots("E", 6)
    d4 = simple[1:5]
    g = [[dot(a, b) for b in d4] for a in d4]
    ginv = linalg.inverse(g)
    proj = [[sum(d4[a][i] * ginv[a][b] * d4[b][j] for a in range(4) for b in range(4))
             for j in range(dim)] for i in range(dim)]
    theta = [[2 * proj[i][j] - (1 if i == j else 0) for j in range(dim)] for i in range(dim)]
    return _Model(dim, orbit_closure(simple), theta, 2)


def _combine(models: list[_Model]) -> _Model:
    total = sum(m.dim for m in models)
    roots = []
    theta = [[Fraction(0)] * total for _ in range(total)]
    off = 0
    for m in models:
        pre = (Fraction(0),) * off
        post = (Fraction(0),) * (total - off - m.dim)
        roots.extend(pre + tuple(r) + post for r in m.roots)
        for i in range(m.dim):
            for j in range(m.dim):
                theta[off + i][off + j] = m.theta[i][j]
        off += m.dim
    return _Model(total, roots, theta, sum(m.restricted_rank for m in models))


def _apply(mat, v):
    return tuple(sum((row[j] * v[j] for j in range(len(v)) if v[j]), Fraction(0)) for row in mat)


def _positivity_key(model: _Model):
    roots = model.roots
    m = model.dim
    for base in (31, 37, 41, 43, 101, 1009):
        v = [Fraction(base) ** (m - 1 - k) for k in range(m)]

        def key(a, v=v):
            ta = _apply(model.theta, a)
            return (dot(v, [x - y for x, y in zip(a, ta)]), dot(v, [x + y for x, y in zip(a, ta)]))

        if all(any(key(tuple(r))) for r in roots):
            good = True
            for r in roots:
                k0, k1 = key(tuple(r))
                ta = _apply(model.theta, r)
                if ta != tuple(r) and k0 == 0:
                    good = False
                    break
            if good:
                return key
    raise SymmetricSpaceError("no generic positivity functional found")


# ---------------------------------------------------------------------------
# the space

@dataclass
class QFiber:
    """Preimage of a root of K: one root of L (``case == "a"``) or a pair (``"b"``)."""

    beta: Character
    case: str
    roots: tuple[int, ...]   # root indices: (alpha,) or (alpha, theta(alpha)) with alpha > 0


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str = ""


@dataclass
class Report:
    title: str
    checks: list[CheckResult] = field(default_factory=list)

    def add(self, name: str, ok: bool, detail: str = "") -> bool:
        self.checks.append(CheckResult(name, bool(ok), detail))
        return bool(ok)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.ok]

    def to_json(self) -> dict:
        return {"title": self.title, "ok": self.ok,
                "checks": [{"name": c.name, "ok": c.ok, **({"detail": c.detail} if c.detail else {})}
                           for c in self.checks]}


class SymmetricSpace:
    """Root data of ``G/K`` for an involution ``theta`` of the character lattice.

    ``theta`` is given by the images of the simple roots (integer columns).
    Everything derived from it is computed lazily, so an invalid involution
    can still be inspected by :func:`validate_minimal_rank`.
    """

    def __init__(self, label: str, rs: RootSystem, theta_cols: Sequence[Character],
                 restricted_rank: int, descriptor: SpaceDescriptor | None = None,
                 weyl: WeylGroup | None = None):
        self.label = label
        self.descriptor = descriptor
        self.rs = rs
        self.n = rs.rank
        self.theta_cols = tuple(tuple(c) for c in theta_cols)
        self.expected_restricted_rank = restricted_rank
        self._weyl = weyl

    # -- basic lattice maps --------------------------------------------------

    def theta(self, chi: Sequence[int]) -> Character:
        out = [0] * self.n
        for j, c in enumerate(chi):
            if c:
                col = self.theta_cols[j]
                for k in range(self.n):
                    out[k] += c * col[k]
        return tuple(out)

    def q(self, chi: Sequence[int]) -> Character:
        """Restriction to the torus of K, as ``chi + theta(chi)``."""
        t = self.theta(chi)
        return tuple(a + b for a, b in zip(chi, t))

    def minus_part(self, chi: Sequence[int]) -> Character:
        t = self.theta(chi)
        return tuple(a - b for a, b in zip(chi, t))

    @cached_property
    def theta_perm(self) -> tuple[int, ...]:
        idx = self.rs.index
        out = []
        for c in self.rs.roots:
            t = self.theta(c)
            if t not in idx:
                raise SymmetricSpaceError(f"theta maps root {c} to non-root {t}")
            out.append(idx[t])
        return tuple(out)

    # -- roots of L, restricted roots --------------------------------------

    @cached_property
    def L_roots(self) -> tuple[int, ...]:
        return tuple(i for i in range(len(self.rs.roots)) if self.theta_perm[i] == i)

    @cached_property
    def L_simple(self) -> tuple[int, ...]:
        """Positions ``j`` (0-based) of the simple roots lying in ``Phi_L``."""
        fixed = set(self.L_roots)
        return tuple(j for j, s in enumerate(self.rs.simple) if s in fixed)

    @cached_property
    def N_plus(self) -> tuple[int, ...]:
        """Indices of ``Phi_G^+ \\ Phi_L^+`` in root order."""
        fixed = set(self.L_roots)
        return tuple(i for i, p in enumerate(self.rs.positive) if p and i not in fixed)

    @cached_property
    def N_minus(self) -> tuple[int, ...]:
        fixed = set(self.L_roots)
        return tuple(i for i, p in enumerate(self.rs.positive) if not p and i not in fixed)

    @cached_property
    def _gamma_data(self) -> tuple[tuple[Character, ...], tuple[int, ...]]:
        gammas: list[Character] = []
        sources: list[int] = []
        fixed = set(self.L_simple)
        for j, s in enumerate(self.rs.simple):
            if j in fixed:
                continue
            g = self.minus_part(self.rs.roots[s])
            if g not in gammas:
                gammas.append(g)
                sources.append(s)
        return tuple(gammas), tuple(sources)

    @property
    def gammas(self) -> tuple[Character, ...]:
        """Simple restricted roots ``sigma - theta(sigma)``, ``sigma`` in ``Delta_G \\ Delta_L``."""
        return self._gamma_data[0]

    @property
    def gamma_sources(self) -> tuple[int, ...]:
        """For each simple restricted root, the first simple root ``sigma`` producing it."""
        return self._gamma_data[1]

    @property
    def r(self) -> int:
        return len(self.gammas)

    @cached_property
    def omega(self) -> tuple[tuple[Fraction, ...], ...]:
        """Rows ``omega_i`` with ``<chi, omega_i^vee>`` = i-th coordinate of ``(chi - theta chi)/2``."""
        gam = self.gammas
        r, n = len(gam), self.n
        if linalg.rank(gam) != r:
            raise SymmetricSpaceError("simple restricted roots are linearly dependent")
        gtg = [[sum(gam[i][k] * gam[j][k] for k in range(n)) for j in range(r)] for i in range(r)]
        inv = linalg.inverse(gtg)
        pinv = [[sum(inv[i][k] * gam[k][c] for k in range(r)) for c in range(n)] for i in range(r)]
        minus = [[Fraction((1 if a == b else 0) - self.theta_cols[b][a], 2) for b in range(n)] for a in range(n)]
        return tuple(tuple(sum(pinv[i][a] * minus[a][b] for a in range(n)) for b in range(n)) for i in range(r))

    def coweight_pairing(self, chi: Sequence[int], i: int) -> Fraction:
        """``<chi, omega_i^vee>`` for ``i`` 0-based."""
        row = self.omega[i]
        return sum((row[k] * c for k, c in enumerate(chi) if c), Fraction(0))

    def restricted_coords(self, chi: Sequence[int]) -> tuple[Fraction, ...]:
        """Coordinates of the ``(-1)``-part of ``chi`` in the basis of simple restricted roots."""
        return tuple(self.coweight_pairing(chi, i) for i in range(self.r))

    def is_restricted_positive(self, gamma: Sequence[int]) -> bool:
        c = self.restricted_coords(gamma)
        if all(x >= 0 for x in c):
            return True
        if all(x <= 0 for x in c):
            return False
        raise SymmetricSpaceError(f"{tuple(gamma)} is not a restricted root")

    @cached_property
    def restricted_roots(self) -> tuple[Character, ...]:
        seen: dict[Character, None] = {}
        for i in self.N_plus + self.N_minus:
            seen.setdefault(self.minus_part(self.rs.roots[i]), None)
        return tuple(seen)

    # -- roots of K ---------------------------------------------------------

    @cached_property
    def fibers(self) -> dict[Character, QFiber]:
        pre: dict[Character, list[int]] = {}
        for i, c in enumerate(self.rs.roots):
            pre.setdefault(self.q(c), []).append(i)
        out = {}
        fixed = set(self.L_roots)
        for beta, idxs in pre.items():
            if any(i in fixed for i in idxs):
                if len(idxs) != 1:
                    raise SymmetricSpaceError(f"K-root {beta} has a mixed preimage {idxs}")
                out[beta] = QFiber(beta, "a", (idxs[0],))
            else:
                if len(idxs) != 2:
                    raise SymmetricSpaceError(f"K-root {beta} has {len(idxs)} preimages")
                a, b = sorted(idxs, key=lambda i: not self.rs.positive[i])
                out[beta] = QFiber(beta, "b", (a, b))
        return out

    @cached_property
    def K_roots(self) -> tuple[Character, ...]:
        return tuple(self.fibers)

    @cached_property
    def betas(self) -> tuple[Character, ...]:
        """``Phi_K \\ Phi_L`` ordered by ``alpha_beta`` in root order (``L(k)`` is 1-based into this)."""
        return tuple(self.q(self.rs.roots[i]) for i in self.N_plus)

    def q_fiber(self, beta: Sequence[int]) -> QFiber:
        beta = tuple(beta)
        f = self.fibers.get(beta)
        if f is None:
            raise KeyError(f"{beta} is not a root of K")
        return f

    def alpha_beta(self, beta: Sequence[int]) -> int:
        f = self.q_fiber(beta)
        if f.case != "b":
            raise ValueError(f"{tuple(beta)} is a root of L")
        return f.roots[0]

    # -- Cartan types -------------------------------------------------------

    def _type_of(self, vectors) -> str:
        return recognize_cartan_type(vectors, self.rs.inner)

    @cached_property
    def types(self) -> dict[str, str]:
        L = [self.q(self.rs.roots[i]) for i in self.L_roots]
        KmL = [b for b, f in self.fibers.items() if f.case == "b"]
        return {
            "G": self.rs.type_name(),
            "K": self._type_of(self.K_roots),
            "L": self._type_of(L),
            "K-L": self._type_of(KmL),
            "G/K": self._type_of(self.restricted_roots),
        }

    @cached_property
    def restricted_weyl_order(self) -> int:
        total = 1
        for letter, rank in type_factors(self.types["G/K"]):
            total *= weyl_order(letter, rank)
        return total

    # -- Weyl groups --------------------------------------------------------

    @property
    def weyl(self) -> WeylGroup:
        if self._weyl is None:
            self._weyl = generate_weyl(self.rs)
        return self._weyl

    @cached_property
    def W_K(self) -> tuple[int, ...]:
        w = self.weyl
        tp = self.theta_perm
        simple = self.rs.simple
        pairs = [(s, tp[s]) for s in simple]
        return tuple(i for i, p in enumerate(w.elements)
                     if all(p[ts] == tp[p[s]] for s, ts in pairs))

    @cached_property
    def W_L(self) -> tuple[int, ...]:
        w = self.weyl
        return tuple(sorted(w.closure([w.reflection(self.rs.simple[j]) for j in self.L_simple])))

    @cached_property
    def X_vertices(self) -> tuple[int, ...]:
        """Minimal length representatives of ``W_G / W_L`` in enumeration order."""
        return tuple(parabolic_min_reps(self.weyl, self.L_simple))

    @cached_property
    def coset_of(self) -> dict[bytes, int]:
        """Coset key -> X-vertex position."""
        return {self.coset_key(u): k for k, u in enumerate(self.X_vertices)}

    def coset_key(self, elem: int) -> bytes:
        p = self.weyl.elements[elem]
        return bytes(sorted(p[a] for a in self.N_plus))

    def reduce(self, elem: int) -> int:
        """X-vertex position of the coset ``elem W_L``."""
        return self.coset_of[self.coset_key(elem)]

    @cached_property
    def restricted_reflection_lifts(self) -> tuple[int, ...]:
        """``s_alpha s_theta(alpha)`` for the source of each simple restricted root."""
        w = self.weyl
        out = []
        for s in self.gamma_sources:
            a = w.reflection(s)
            b = w.reflection(self.theta_perm[s])
            out.append(w.compose(a, b))
        return tuple(out)

    @cached_property
    def _y_data(self) -> tuple[tuple[int, ...], tuple[tuple[int, ...], ...]]:
        lifts = self.restricted_reflection_lifts
        start = self.X_vertices.index(self.weyl.identity)
        order = [start]
        words: dict[int, tuple[int, ...]] = {start: ()}
        queue = deque(order)
        while queue:
            k = queue.popleft()
            u = self.X_vertices[k]
            for i, t in enumerate(lifts):
                v = self.reduce(self.weyl.compose(u, t))
                if v not in words:
                    words[v] = words[k] + (i,)
                    order.append(v)
                    queue.append(v)
        return tuple(order), tuple(words[k] for k in order)

    @property
    def Y_vertices(self) -> tuple[int, ...]:
        """Positions in ``X_vertices`` of the lifts of ``W_{G/K}``, in breadth-first order."""
        return self._y_data[0]

    @property
    def Y_words(self) -> tuple[tuple[int, ...], ...]:
        return self._y_data[1]

    def Y_label(self, k: int) -> str:
        word = self.Y_words[k]
        return "e" if not word else "".join(f"s{i + 1}" for i in word)

    def Y_index_of_word(self, word: Sequence[int]) -> int:
        """Y-vertex position of ``t_{i1} ... t_{ik}`` (0-based restricted reflection indices)."""
        w = self.weyl
        elem = w.identity
        for i in word:
            if not 0 <= i < self.r:
                raise IndexError(f"restricted reflection s{i + 1} out of range 1..{self.r}")
            elem = w.compose(elem, self.restricted_reflection_lifts[i])
        pos = self.reduce(elem)
        return self.Y_vertices.index(pos)

    def element(self, x_vertex: int) -> int:
        return self.X_vertices[x_vertex]

    def act(self, x_vertex: int, chi: Sequence[int]) -> Character:
        return self.weyl.act(self.X_vertices[x_vertex], chi)

    def act_inverse(self, x_vertex: int, chi: Sequence[int]) -> Character:
        w = self.weyl
        return w.act(w.inverse(self.X_vertices[x_vertex]), chi)

    def describe(self) -> dict:
        t = self.types
        return {
            "space": self.label,
            "rank_G": self.n,
            "rank_G/K": self.r,
            "types": {"Phi_G": t["G"], "Phi_K": t["K"], "Phi_L": t["L"],
                      "Phi_K-Phi_L": t["K-L"], "Phi_G/K": t["G/K"]},
            "orders": {"W_G": self.weyl.order, "W_K": len(self.W_K), "W_L": len(self.W_L),
                       "W_G/K": len(self.W_K) // len(self.W_L)},
            "simple_roots_L": [j + 1 for j in self.L_simple],
            "simple_restricted_roots": [list(g) for g in self.gammas],
            "theta_on_simple_roots": [list(c) for c in self.theta_cols],
            "vertices": {"X": len(self.X_vertices), "Y": len(self.Y_vertices)},
            "dim": {"X": len(self.N_plus) + self.r, "Y": self.r},
        }


def _factor_weyl_order(f: Factor) -> int:
    if f.kind == "group":
        return weyl_order(f.letter, f.rank) ** 2
    if f.kind == "AC":
        return weyl_order("A", 2 * f.rank - 1)
    if f.kind == "DB":
        return weyl_order("D", f.rank)
    return weyl_order("E", 6)


def build_symmetric_space(descriptor: SpaceDescriptor | str, validate: bool = True,
                          max_order: int = DEFAULT_MAX_ORDER) -> SymmetricSpace:
    """Assemble the involution for each factor, choose an adapted basis and validate."""
    if isinstance(descriptor, str):
        descriptor = parse_space(descriptor)
    order = 1
    for f in descriptor.factors:
        order *= _factor_weyl_order(f)
    if order > max_order:
        # every construction below enumerates W_G; refuse before the expensive setup
        raise SymmetricSpaceError(f"{descriptor}: Weyl group of order {order} exceeds the enumeration cap {max_order}")
    model = _combine([_factor_model(f) for f in descriptor.factors])
    key = _positivity_key(model)
    label = str(descriptor)
    try:
        rs = RootSystem.from_positivity(f"G[{label}]", model.roots, key)
    except RootSystemError as exc:
        raise SymmetricSpaceError(str(exc)) from exc
    eu_index = {v: i for i, v in enumerate(rs.euclidean)}
    cols = []
    for s in rs.simple_euclidean:
        t = _apply(model.theta, s)
        if t not in eu_index:
            raise SymmetricSpaceError(f"theta does not preserve the roots (image {t})")
        cols.append(rs.roots[eu_index[t]])
    space = SymmetricSpace(label, rs, cols, model.restricted_rank, descriptor)
    if validate:
        report = validate_minimal_rank(space)
        if not report.ok:
            bad = "; ".join(f"{c.name}: {c.detail}" for c in report.failures())
            raise SymmetricSpaceError(f"validation failed for {label}: {bad}")
    return space


def validate_minimal_rank(s: SymmetricSpace) -> Report:
    """Check the involution and the minimal-rank root combinatorics; never raises."""
    rep = Report(f"minimal-rank checks for {s.label}")
    rs = s.rs
    n = s.n
    ident = [tuple(1 if k == j else 0 for k in range(n)) for j in range(n)]
    inv = all(s.theta(s.theta_cols[j]) == ident[j] for j in range(n))
    rep.add("theta is an involution", inv)
    try:
        s.theta_perm
        preserves = True
    except SymmetricSpaceError as exc:
        preserves = False
        rep.add("theta preserves the roots", False, str(exc))
    if preserves:
        rep.add("theta preserves the roots", True)
    if not (inv and preserves):
        return rep
    tp = s.theta_perm
    fixed_rank = linalg.rank([s.q(e) for e in ident])
    minus_rank = linalg.rank([s.minus_part(e) for e in ident])
    rep.add("eigenlattice ranks", fixed_rank + minus_rank == n and minus_rank == s.expected_restricted_rank,
            f"fixed {fixed_rank}, anti-fixed {minus_rank}, expected anti-fixed {s.expected_restricted_rank}")
    swap = all(not rs.positive[tp[i]] for i in s.N_plus) and \
        sorted(tp[i] for i in s.N_plus) == sorted(s.N_minus)
    rep.add("theta maps Phi+ \\ Phi_L+ onto Phi- \\ Phi_L-", swap)
    if not swap:
        return rep
    try:
        gam_ok = linalg.rank(s.gammas) == len(s.gammas) == s.expected_restricted_rank
        rep.add("simple restricted roots are independent", gam_ok, f"{len(s.gammas)} vectors")
        if not gam_ok:
            return rep
        coords_ok = all(all(c.denominator == 1 for c in s.restricted_coords(g)) and
                        (all(c >= 0 for c in s.restricted_coords(g)) or all(c <= 0 for c in s.restricted_coords(g)))
                        for g in s.restricted_roots)
        rep.add("restricted roots are integral single-signed combinations of the simple ones", coords_ok)
        fibers = s.fibers
    except SymmetricSpaceError as exc:
        rep.add("restricted root data", False, str(exc))
        return rep

    # strong orthogonality
    bad = []
    for i in s.N_plus:
        a = rs.roots[i]
        ta = rs.roots[tp[i]]
        plus = tuple(x + y for x, y in zip(a, ta))
        minus = tuple(x - y for x, y in zip(a, ta))
        if rs.inner(a, ta) != 0 or plus in rs.index or minus in rs.index:
            bad.append(a)
    rep.add("alpha and theta(alpha) strongly orthogonal", not bad, f"failures {bad[:3]}" if bad else "")

    # q bijections
    beta_plus = [s.q(rs.roots[i]) for i in s.N_plus]
    beta_minus = [s.q(rs.roots[i]) for i in s.N_minus]
    kml = {b for b, f in fibers.items() if f.case == "b"}
    bij = len(set(beta_plus)) == len(beta_plus) == len(kml) and set(beta_plus) == kml == set(beta_minus)
    rep.add("q: Phi+ \\ Phi_L+ -> Phi_K \\ Phi_L <- Phi- \\ Phi_L- bijective", bij)
    case_a = all((f.case == "a") == (f.roots[0] in set(s.L_roots)) for f in fibers.values())
    rep.add("q-fibers: single L-root or pair {alpha, theta(alpha)}", case_a)

    # reducedness
    rr = set(s.restricted_roots)
    nonred = [g for g in rr if tuple(2 * x for x in g) in rr]
    rep.add("restricted root system is reduced", not nonred)

    # restricted root system closed under its reflections
    try:
        s.types
        rep.add("Cartan types recognized", True, ", ".join(f"{k}={v}" for k, v in s.types.items()))
    except RootSystemError as exc:
        rep.add("Cartan types recognized", False, str(exc))
        return rep

    # Weyl groups
    w = s.weyl
    wk, wl = s.W_K, s.W_L
    wkset = set(wk)
    rep.add("W_L is contained in W_K", all(x in wkset for x in wl))
    quotient = len(wk) // len(wl) if len(wk) % len(wl) == 0 else None
    rep.add("|W_K| = |W_L| |W_G/K|", quotient == s.restricted_weyl_order,
            f"|W_K|={len(wk)}, |W_L|={len(wl)}, |W_G/K|={s.restricted_weyl_order}")
    centralizer = [x for x in wk if all(w.act(x, g) == g for g in s.gammas)]
    rep.add("W_L = elements of W_K fixing the restricted roots", sorted(centralizer) == list(wl))
    # W_K stability and q-equivariance
    kset = set(s.K_roots)
    stable = True
    equiv = True
    for x in wk:
        p = w.elements[x]
        for b in kml:
            if w.act(x, b) not in kml:
                stable = False
        for i in range(len(rs.roots)):
            if s.q(rs.roots[p[i]]) != w.act(x, s.q(rs.roots[i])):
                equiv = False
        if not (stable and equiv):
            break
    rep.add("Phi_K \\ Phi_L is W_K-stable", stable)
    rep.add("q is W_K-equivariant", equiv and kset == set(s.q(c) for c in rs.roots))

    # s_alpha s_theta(alpha) represents the restricted reflection
    lifts_ok = True
    for i in s.N_plus:
        t = w.compose(w.reflection(i), w.reflection(tp[i]))
        if t not in wkset:
            lifts_ok = False
            break
        g = s.minus_part(rs.roots[i])
        for h in s.gammas:
            c = 2 * rs.inner(h, g) / rs.inner(g, g)
            expected = tuple(Fraction(x) - c * y for x, y in zip(h, g))
            if w.act(t, h) != expected:
                lifts_ok = False
    rep.add("s_alpha s_theta(alpha) lies in W_K and lifts the restricted reflection", lifts_ok)
    rep.add("Y-vertex count equals |W_G/K|", len(s.Y_vertices) == s.restricted_weyl_order)
    return rep


def corrupted_space(base: SymmetricSpace, theta_cols: Sequence[Character]) -> SymmetricSpace:
    """The same root system with a different (possibly invalid) involution."""
    return SymmetricSpace(base.label + "[corrupted]", base.rs, theta_cols,
                          base.expected_restricted_rank, base.descriptor, base._weyl)


__all__ = [
    "Factor", "SpaceDescriptor", "SpaceSyntaxError", "SymmetricSpace", "SymmetricSpaceError",
    "QFiber", "Report", "CheckResult", "parse_space", "build_symmetric_space",
    "validate_minimal_rank", "corrupted_space",
]
