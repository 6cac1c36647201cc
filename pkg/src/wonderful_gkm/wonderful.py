"""GKM data of the wonderful compactification X of G/K and of the toric variety Y.

X has fixed points ``W_G / W_L``; at ``wW_L`` the tangent weights are
``w(Phi_G^+ \\ Phi_L^+)`` together with ``w(gamma_1), ..., w(gamma_r)``.
Y is the closure of the torus orbit through the base point; its fixed
points are the lifts of ``W_{G/K}`` and its fan is the fan of restricted
Weyl chambers.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .gkm import Edge, EquivariantClass, GKMError, GKMGraph, validate_class
from .poly import Character, Polynomial, divisible_by_linear
from .series import inverse_todd_series, series_of_linear, todd_series
from .symspace import SymmetricSpace


@dataclass
class NamedClass:
    tag: str
    cls: EquivariantClass
    notes: str = ""


def _word_label(word: Sequence[int]) -> str:
    return "e" if not word else "".join(f"s{j + 1}" for j in word)


class WonderfulGKM:
    """Both GKM graphs together with the classes built from them."""

    def __init__(self, space: SymmetricSpace):
        self.space = space
        s = space
        w = s.weyl
        rs = s.rs
        self.n = s.n
        self.r = s.r
        self.dim_X = len(s.N_plus) + s.r
        self.dim_Y = s.r
        xs = s.X_vertices
        self.z = xs.index(w.identity)

        tangents = []
        edges: dict[tuple[int, int], Edge] = {}
        refl = {a: w.reflection(a) for a in s.N_plus}
        for k, u in enumerate(xs):
            p = w.elements[u]
            t = [rs.roots[p[a]] for a in s.N_plus] + [w.act(u, g) for g in s.gammas]
            tangents.append(t)
            nbrs = [(s.reduce(w.compose(u, refl[a])), rs.roots[p[a]]) for a in s.N_plus]
            nbrs += [(s.reduce(w.compose(u, lift)), w.act(u, g))
                     for g, lift in zip(s.gammas, s.restricted_reflection_lifts)]
            for v, chi in nbrs:
                key = (min(k, v), max(k, v))
                if key not in edges:
                    edges[key] = Edge(k, v, chi)
        x_labels = [_word_label(w.word(u)) for u in xs]
        self.X = GKMGraph(f"X({s.label})", self.n, x_labels, edges.values(), tangents)

        self.y_to_x = s.Y_vertices
        ypos = {x: k for k, x in enumerate(self.y_to_x)}
        y_tangents = [tangents[x][len(s.N_plus):] for x in self.y_to_x]
        y_edges: dict[tuple[int, int], Edge] = {}
        for k, x in enumerate(self.y_to_x):
            u = xs[x]
            for g, lift in zip(s.gammas, s.restricted_reflection_lifts):
                v = ypos[s.reduce(w.compose(u, lift))]
                key = (min(k, v), max(k, v))
                if key not in y_edges:
                    y_edges[key] = Edge(k, v, w.act(u, g))
        self.Y = GKMGraph(f"Y({s.label})", self.n, [s.Y_label(k) for k in range(len(self.y_to_x))],
                          y_edges.values(), y_tangents)
        self.X.check()
        self.Y.check()
        self._memo: dict = {}

    # -- helpers ------------------------------------------------------------

    def y_element(self, k: int) -> int:
        return self.space.X_vertices[self.y_to_x[k]]

    def act_y(self, k: int, chi: Sequence[int]) -> Character:
        return self.space.weyl.act(self.y_element(k), chi)

    def act_y_inverse(self, k: int, chi: Sequence[int]) -> Character:
        w = self.space.weyl
        return w.act(w.inverse(self.y_element(k)), chi)

    def y_index(self, ident: str | int) -> int:
        """Y-vertex from an index or a word such as ``"e"`` or ``"s1s2"``."""
        if isinstance(ident, int):
            if not 0 <= ident < len(self.Y):
                raise IndexError(f"Y-vertex {ident} out of range")
            return ident
        text = ident.strip()
        if text == "e":
            return self.z_y
        if not re.fullmatch(r"(s\d+)+", text):
            raise ValueError(f"bad Weyl word {ident!r}: expected 'e' or e.g. 's1s2'")
        word = [int(x) - 1 for x in re.findall(r"s(\d+)", text)]
        return self.space.Y_index_of_word(word)

    @property
    def z_y(self) -> int:
        return self.y_to_x.index(self.z)

    def _x_linear(self, chars) -> EquivariantClass:
        return EquivariantClass.linear(self.X, chars)

    def _y_linear(self, chars) -> EquivariantClass:
        return EquivariantClass.linear(self.Y, chars)

    # -- boundary divisors ----------------------------------------------------

    def boundary_class_X(self, i: int) -> EquivariantClass:
        """``[X_i]``: restriction ``w(gamma_i)`` at ``wW_L`` (``i`` is 1-based)."""
        if not 1 <= i <= self.r:
            raise IndexError(f"boundary index {i} out of range 1..{self.r}")
        g = self.space.gammas[i - 1]
        return self._x_linear([self.space.act(x, g) for x in range(len(self.X))])

    def ray_key(self, i: int, k: int) -> tuple[Fraction, ...]:
        """The co-weight ``u omega_i^vee`` (0-based ``i``) at Y-vertex ``k``, as values on the gammas."""
        s = self.space
        return tuple(s.coweight_pairing(self.act_y_inverse(k, g), i) for g in s.gammas)

    @cached_property
    def boundary_index(self) -> tuple[tuple[int, int], ...]:
        """``E``: pairs ``(i, k)`` (1-based ``i``, Y-vertex ``k``) with ``k`` in ``W^i``."""
        s = self.space
        out = []
        for i in range(self.r):
            for k in range(len(self.Y)):
                if all(s.is_restricted_positive(self.act_y(k, s.gammas[j])) for j in range(self.r) if j != i):
                    out.append((i + 1, k))
        return tuple(out)

    def boundary_key(self, i: int, w: int | str) -> tuple[int, int]:
        """The pair in ``E`` naming the divisor ``Y_{i,w}`` (any ``w`` of the coset ``w W_i``)."""
        if not 1 <= i <= self.r:
            raise IndexError(f"boundary index {i} out of range 1..{self.r}")
        k = self.y_index(w)
        key = self.ray_key(i - 1, k)
        for j, m in self.boundary_index:
            if j == i and self.ray_key(i - 1, m) == key:
                return (j, m)
        raise GKMError(f"no representative in W^{i} for {self.Y.labels[k]}")

    def boundary_class_Y(self, i: int, w: int | str) -> EquivariantClass:
        """``[Y_{i,w}]``: ``u(gamma_i)`` at vertices ``u`` on the divisor, 0 elsewhere."""
        i, k = self.boundary_key(i, w)
        key = self.ray_key(i - 1, k)
        g = self.space.gammas[i - 1]
        zero = (0,) * self.n
        vals = [self.act_y(u, g) if self.ray_key(i - 1, u) == key else zero for u in range(len(self.Y))]
        return self._y_linear(vals)

    @cached_property
    def boundary_classes_Y(self) -> dict[tuple[int, int], EquivariantClass]:
        return {(i, k): self.boundary_class_Y(i, k) for i, k in self.boundary_index}

    def div_char_coeffs(self, chi: Sequence[int]) -> dict[tuple[int, int], Fraction]:
        """``(i, w) -> <chi, w omega_i^vee>`` over the boundary index set."""
        s = self.space
        return {(i, k): s.coweight_pairing(self.act_y_inverse(k, chi), i - 1) for i, k in self.boundary_index}

    def divisor_of_character(self, chi: Sequence[int]) -> EquivariantClass:
        total = EquivariantClass.constant(self.Y, 0)
        for key, c in self.div_char_coeffs(chi).items():
            if c:
                total = total + self.boundary_classes_Y[key].scale(c)
        return total

    # -- normal line bundles --------------------------------------------------

    def _beta(self, beta) -> Character:
        if isinstance(beta, int):
            if not 1 <= beta <= len(self.space.betas):
                raise IndexError(f"beta index {beta} out of range 1..{len(self.space.betas)}")
            return self.space.betas[beta - 1]
        return tuple(beta)

    @cached_property
    def _alpha_of_q(self) -> dict[Character, int]:
        s = self.space
        return {s.q(s.rs.roots[a]): a for a in s.N_plus}

    def l_beta_direct(self, beta) -> EquivariantClass:
        """``c_1(L_beta)``: at ``u`` the weight in ``u(Phi_G^+ \\ Phi_L^+)`` lying over ``beta``."""
        s = self.space
        beta = self._beta(beta)
        f = s.q_fiber(beta)
        if f.case != "b":
            raise ValueError(f"{beta} is a root of L")
        vals = []
        for k in range(len(self.Y)):
            a = self._alpha_of_q[self.act_y_inverse(k, beta)]
            vals.append(self.act_y(k, s.rs.roots[a]))
        return self._y_linear(vals)

    def l_beta_divisor_formula(self, beta) -> tuple[EquivariantClass, Character | None]:
        """``alpha + sum <alpha - theta(alpha), w omega_i^vee> [Y_{i,w}]`` over ``w^{-1}(alpha - theta(alpha)) > 0``.

        Returns the class and the difference to :meth:`l_beta_direct` when
        that difference is a constant character (``None`` otherwise).
        """
        s = self.space
        beta = self._beta(beta)
        a = s.alpha_beta(beta)
        alpha = s.rs.roots[a]
        gamma = s.minus_part(alpha)
        total = EquivariantClass.linear(self.Y, [alpha] * len(self.Y))
        for (i, k), c in self.div_char_coeffs(gamma).items():
            if c and s.is_restricted_positive(self.act_y_inverse(k, gamma)):
                total = total + self.boundary_classes_Y[(i, k)].scale(c)
        diff = total - self.l_beta_direct(beta)
        twist = None
        if diff.is_constant_tuple():
            p = diff[0]
            if p.is_zero() or p.is_homogeneous() and p.degree() == 1:
                twist = tuple(p.coefficient(tuple(1 if j == m else 0 for j in range(self.n)))
                              for m in range(self.n))
        return total, twist

    def side_of(self, beta, k: int) -> str:
        """``"0"`` if ``u^{-1}(alpha_beta - theta(alpha_beta))`` is positive at Y-vertex ``k``, else ``"inf"``."""
        s = self.space
        gamma = s.minus_part(s.rs.roots[s.alpha_beta(self._beta(beta))])
        return "0" if s.is_restricted_positive(self.act_y_inverse(k, gamma)) else "inf"

    # -- restriction and extension -----------------------------------------

    def restrict_r(self, c: EquivariantClass) -> EquivariantClass:
        if c.graph is not self.X:
            raise GKMError("restrict_r expects a class on X")
        return EquivariantClass(self.Y, [c[x] for x in self.y_to_x], c.max_degree)

    def restrict_at_z(self, c: EquivariantClass) -> Polynomial:
        if c.graph is self.X:
            return c[self.z]
        if c.graph is self.Y:
            return c[self.z_y]
        raise GKMError("class is not on X or Y")

    def is_WL_invariant(self, f: Polynomial) -> bool:
        w = self.space.weyl
        return all(w.act_poly(w.reflection(self.space.rs.simple[j]), f) == f for j in self.space.L_simple)

    def membership_scong(self, f: Polynomial) -> bool:
        """``f`` is ``W_L``-invariant and ``f = s_a s_theta(a) f  mod  a - theta(a)`` for ``a`` in ``Delta_G \\ Delta_L``."""
        if not self.is_WL_invariant(f):
            return False
        s = self.space
        w = s.weyl
        for j, a in enumerate(s.rs.simple):
            if j in s.L_simple:
                continue
            t = w.compose(w.reflection(a), w.reflection(s.theta_perm[a]))
            diff = f - w.act_poly(t, f)
            if not diff.is_zero() and not divisible_by_linear(diff, s.minus_part(s.rs.roots[a]))[0]:
                return False
        return True

    def extend_from_z(self, f: Polynomial) -> EquivariantClass:
        """The ``W_G``-equivariant tuple ``wW_L -> w f``."""
        if not self.is_WL_invariant(f):
            raise GKMError("polynomial is not W_L-invariant; the tuple depends on coset representatives")
        s = self.space
        return EquivariantClass(self.X, [s.weyl.act_poly(u, f) for u in s.X_vertices], f.max_degree)

    # -- Chern and Todd classes --------------------------------------------

    def _default_degree(self, on_y: bool) -> int:
        return self.dim_Y if on_y else self.dim_X

    def _formula_factors(self, bundle: str) -> list[list[Character]]:
        """Per Y-vertex, the linear factors of the product formulas."""
        s = self.space
        zero = (0,) * self.n
        per_vertex = [[] for _ in range(len(self.Y))]
        if bundle == "T":
            for cls in self.boundary_classes_Y.values():
                for k in range(len(self.Y)):
                    per_vertex[k].append(_linear_char(cls[k], self.n))
        for b in range(1, len(s.betas) + 1):
            cls = self.l_beta_direct(b)
            for k in range(len(self.Y)):
                per_vertex[k].append(_linear_char(cls[k], self.n))
        return [[c for c in fs if c != zero] for fs in per_vertex]

    def _direct_at(self, kind: str, bundle: str, top: int, x: int) -> Polynomial:
        """Direct Chern (``kind == "c"``) or Todd (``"td"``) value at X-vertex ``x``, memoized."""
        key = (kind, bundle, top, x)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        t = self.X.tangents[x]
        gam = t[len(self.space.N_plus):]
        if kind == "c":
            val = _product_one_plus(t, self.n, top)
            if bundle == "S":
                for g in gam:
                    # (1 + l)^{-1} = sum_k (-l)^k
                    val = _times_geometric(val, g, top)
        else:
            val = Polynomial.one(self.n, top)
            td = todd_series(top)
            for chi in t:
                val = series_of_linear(td, val, chi, top)
            if bundle == "S":
                inv = inverse_todd_series(top)
                for g in gam:
                    val = series_of_linear(inv, val, g, top)
        self._memo[key] = val
        return val

    def _direct(self, kind: str, bundle: str, top: int, on_y: bool) -> EquivariantClass:
        if on_y:
            return EquivariantClass(self.Y, [self._direct_at(kind, bundle, top, x) for x in self.y_to_x], top)
        return EquivariantClass(self.X, [self._direct_at(kind, bundle, top, x) for x in range(len(self.X))], top)

    def _formula(self, kind: str, bundle: str, top: int) -> EquivariantClass:
        key = (kind, bundle, top, "formula")
        hit = self._memo.get(key)
        if hit is None:
            vals = []
            td = todd_series(top)
            for fs in self._formula_factors(bundle):
                if kind == "c":
                    vals.append(_product_one_plus(fs, self.n, top))
                else:
                    acc = Polynomial.one(self.n, top)
                    for chi in fs:
                        acc = series_of_linear(td, acc, chi, top)
                    vals.append(acc)
            hit = self._memo[key] = EquivariantClass(self.Y, vals, top)
        return hit

    def chern_total(self, bundle: str = "T", mode: str = "direct", max_degree: int | None = None,
                    on_y: bool = False) -> EquivariantClass:
        """Total Chern class, truncated at ``max_degree``.

        Formula mode lives on Y; direct mode on X, or directly on the
        Y-vertices with ``on_y`` (same values as :meth:`restrict_r`).
        """
        _check_bundle(bundle, mode)
        formula = mode == "formula"
        top = self._default_degree(formula) if max_degree is None else max_degree
        if formula:
            return self._formula("c", bundle, top)
        return self._direct("c", bundle, top, on_y)

    def chern_class(self, bundle: str = "T", mode: str = "direct", max_degree: int | None = None) -> list[EquivariantClass]:
        """``[c_0, c_1, ..., c_top]`` as homogeneous classes."""
        total = self.chern_total(bundle, mode, max_degree)
        return [total.homogeneous_part(k) for k in range(total.max_degree + 1)]

    def todd_class(self, bundle: str = "T", mode: str = "direct", max_degree: int | None = None,
                   on_y: bool = False) -> EquivariantClass:
        _check_bundle(bundle, mode)
        formula = mode == "formula"
        top = self._default_degree(formula) if max_degree is None else max_degree
        if formula:
            return self._formula("td", bundle, top)
        return self._direct("td", bundle, top, on_y)

    def named_classes(self, max_degree: int | None = None) -> list[NamedClass]:
        """Every named class, for bulk validation."""
        out = [NamedClass(f"boundary_X({i})", self.boundary_class_X(i)) for i in range(1, self.r + 1)]
        out += [NamedClass(f"boundary_Y({i},{self.Y.labels[k]})", c) for (i, k), c in self.boundary_classes_Y.items()]
        for b in range(1, len(self.space.betas) + 1):
            out.append(NamedClass(f"L_beta({b})", self.l_beta_direct(b)))
            c, twist = self.l_beta_divisor_formula(b)
            out.append(NamedClass(f"L_beta_divisor({b})", c, f"twist {twist}"))
        for bundle in "TS":
            for mode in ("direct", "formula"):
                md = None if mode == "formula" else max_degree
                for k, c in enumerate(self.chern_class(bundle, mode, md)):
                    out.append(NamedClass(f"chern_{bundle}({k}) [{mode}]", c))
                out.append(NamedClass(f"todd_{bundle} [{mode}]", self.todd_class(bundle, mode, md)))
        return out

    # -- integrals ----------------------------------------------------------

    def euler(self) -> Fraction:
        """``int_X c_top(T_X)``, evaluated without expanding the product."""
        from .gkm import generic_points, localize

        p1, _ = generic_points(self.X)

        def num(v, pt):
            out = 1
            for chi in self.X.tangents[v]:
                out *= sum(c * x for c, x in zip(chi, pt))
            return out

        return localize(self.X, num, p1)


def _check_bundle(bundle: str, mode: str) -> None:
    if bundle not in ("T", "S"):
        raise ValueError(f"bundle must be T or S, not {bundle!r}")
    if mode not in ("direct", "formula"):
        raise ValueError(f"mode must be direct or formula, not {mode!r}")


def _linear_char(p: Polynomial, n: int) -> Character:
    if p.is_zero():
        return (0,) * n
    if not (p.is_homogeneous() and p.degree() == 1):
        raise GKMError(f"{p} is not a linear form")
    out = []
    for m in range(n):
        c = p.coefficient(tuple(1 if j == m else 0 for j in range(n)))
        if isinstance(c, Fraction):
            if c.denominator != 1:
                raise GKMError(f"{p} is not integral")
            c = c.numerator
        out.append(c)
    return tuple(out)


def _product_one_plus(forms: Sequence[Sequence[int]], n: int, top: int) -> Polynomial:
    acc = Polynomial.one(n, top)
    for chi in forms:
        acc = acc + acc.mul_linear(chi, top)
    return acc


def _times_geometric(f: Polynomial, chi: Sequence[int], top: int) -> Polynomial:
    """``f * (1 + l)^{-1}`` truncated, via ``g = f - l g`` (Horner)."""
    g = f
    for _ in range(top):
        g = f - g.mul_linear(chi, top)
    return g


def build_wonderful(space: SymmetricSpace) -> WonderfulGKM:
    return WonderfulGKM(space)
