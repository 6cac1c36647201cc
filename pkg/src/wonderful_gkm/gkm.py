"""GKM graphs, equivariant classes as vertex tuples, localization and Betti numbers."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .poly import Character, Polynomial, divisible_by_linear


class GKMError(ValueError):
    """Inconsistent graph or class data, or a failed exactness check."""


def up_to_sign(chi: Sequence[int]) -> Character:
    """Representative of ``{chi, -chi}`` whose first nonzero entry is positive."""
    for c in chi:
        if c:
            return tuple(chi) if c > 0 else tuple(-x for x in chi)
    return tuple(chi)


def _proportional(a: Sequence[int], b: Sequence[int]) -> bool:
    n = len(a)
    return all(a[i] * b[j] == a[j] * b[i] for i in range(n) for j in range(i + 1, n))


@dataclass(frozen=True)
class Edge:
    u: int
    v: int
    weight: Character


class GKMGraph:
    """Fixed points, invariant curves and tangent weights of a GKM torus action.

    ``tangents[v]`` lists the tangent weights at vertex ``v``; ``edges`` holds
    one weight per curve, stored with a chosen sign.
    """

    def __init__(self, name: str, nvars: int, labels: Sequence[str],
                 edges: Iterable[Edge], tangents: Sequence[Sequence[Character]]):
        self.name = name
        self.nvars = nvars
        self.labels = tuple(labels)
        self.edges = tuple(edges)
        self.tangents = tuple(tuple(tuple(c) for c in t) for t in tangents)
        if len(self.tangents) != len(self.labels):
            raise GKMError("one tangent list per vertex is required")
        self.dim = len(self.tangents[0]) if self.tangents else 0
        inc: list[list[int]] = [[] for _ in self.labels]
        for k, e in enumerate(self.edges):
            inc[e.u].append(k)
            inc[e.v].append(k)
        self.incident = tuple(tuple(x) for x in inc)

    def __len__(self) -> int:
        return len(self.labels)

    @property
    def vertices(self) -> range:
        return range(len(self.labels))

    def __repr__(self) -> str:
        return f"GKMGraph({self.name!r}, vertices={len(self)}, edges={len(self.edges)}, dim={self.dim})"

    def max_abs_coefficient(self) -> int:
        return max((abs(x) for t in self.tangents for c in t for x in c), default=1)

    def problems(self) -> list[str]:
        """Regularity and edge/tangent coherence failures (empty when the graph is sound)."""
        out = []
        for v, t in enumerate(self.tangents):
            if len(t) != self.dim:
                out.append(f"vertex {self.labels[v]}: {len(t)} tangent weights, expected {self.dim}")
            if len(self.incident[v]) != self.dim:
                out.append(f"vertex {self.labels[v]}: {len(self.incident[v])} edges, expected {self.dim}")
            if any(not any(c) for c in t):
                out.append(f"vertex {self.labels[v]}: zero tangent weight")
            for i in range(len(t)):
                for j in range(i + 1, len(t)):
                    if _proportional(t[i], t[j]):
                        out.append(f"vertex {self.labels[v]}: dependent tangent weights {t[i]}, {t[j]}")
            have = Counter(up_to_sign(c) for c in t)
            got = Counter(up_to_sign(self.edges[k].weight) for k in self.incident[v])
            if have != got:
                out.append(f"vertex {self.labels[v]}: edge weights do not match tangent weights")
        seen = set()
        for e in self.edges:
            key = (min(e.u, e.v), max(e.u, e.v))
            if e.u == e.v:
                out.append(f"loop at {self.labels[e.u]}")
            if key in seen:
                out.append(f"repeated edge {self.labels[e.u]} -- {self.labels[e.v]}")
            seen.add(key)
        return out

    def check(self) -> None:
        bad = self.problems()
        if bad:
            raise GKMError(f"{self.name}: " + "; ".join(bad[:5]))

    def with_edge_weight(self, k: int, weight: Character) -> "GKMGraph":
        """Copy with one edge weight replaced (used for negative controls)."""
        edges = list(self.edges)
        e = edges[k]
        edges[k] = Edge(e.u, e.v, tuple(weight))
        return GKMGraph(self.name + "[modified]", self.nvars, self.labels, edges, self.tangents)


class EquivariantClass:
    """A tuple of polynomials indexed by the vertices of a GKM graph."""

    __slots__ = ("graph", "values", "max_degree")

    def __init__(self, graph: GKMGraph, values: Sequence[Polynomial], max_degree: int | None = None):
        if len(values) != len(graph):
            raise GKMError(f"class has {len(values)} entries, graph has {len(graph)} vertices")
        if any(p.nvars != graph.nvars for p in values):
            raise GKMError("class polynomials live in the wrong number of variables")
        self.graph = graph
        self.max_degree = max_degree
        self.values = tuple(p if max_degree is None else p.truncate(max_degree) for p in values)

    @classmethod
    def constant(cls, graph: GKMGraph, c=1, max_degree: int | None = None) -> "EquivariantClass":
        p = Polynomial.constant(c, graph.nvars, max_degree)
        return cls(graph, [p] * len(graph), max_degree)

    @classmethod
    def linear(cls, graph: GKMGraph, chars: Sequence[Sequence[int]],
               max_degree: int | None = None) -> "EquivariantClass":
        return cls(graph, [Polynomial.linear(c, max_degree) for c in chars], max_degree)

    def __getitem__(self, v: int) -> Polynomial:
        return self.values[v]

    def __len__(self) -> int:
        return len(self.values)

    def __eq__(self, other) -> bool:
        return isinstance(other, EquivariantClass) and self.graph is other.graph and self.values == other.values

    def __hash__(self):
        return hash(self.values)

    def _same(self, other: "EquivariantClass") -> None:
        if self.graph is not other.graph:
            raise GKMError("classes live on different graphs")

    def _bound(self, other: "EquivariantClass") -> int | None:
        if self.max_degree is None:
            return other.max_degree
        if other.max_degree is None:
            return self.max_degree
        return min(self.max_degree, other.max_degree)

    def __add__(self, other: "EquivariantClass") -> "EquivariantClass":
        return class_add(self, other)

    def __sub__(self, other: "EquivariantClass") -> "EquivariantClass":
        return class_add(self, other.scale(-1))

    def __neg__(self) -> "EquivariantClass":
        return self.scale(-1)

    def __mul__(self, other) -> "EquivariantClass":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return class_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "EquivariantClass":
        if k < 0:
            raise ValueError("negative power")
        out = EquivariantClass.constant(self.graph, 1, self.max_degree)
        for _ in range(k):
            out = class_mul(out, self)
        return out

    def scale(self, c) -> "EquivariantClass":
        return EquivariantClass(self.graph, [p.scale(c) for p in self.values], self.max_degree)

    def truncate(self, n: int | None) -> "EquivariantClass":
        return EquivariantClass(self.graph, self.values, n)

    def homogeneous_part(self, d: int) -> "EquivariantClass":
        return EquivariantClass(self.graph, [p.homogeneous_part(d) for p in self.values])

    def degrees(self) -> list[int]:
        return sorted({d for p in self.values for d in p.degrees()})

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def degree(self) -> int:
        ds = self.degrees()
        return ds[-1] if ds else -1

    def is_constant_tuple(self) -> bool:
        return all(p == self.values[0] for p in self.values)


def class_add(a: EquivariantClass, b: EquivariantClass) -> EquivariantClass:
    a._same(b)
    bound = a._bound(b)
    return EquivariantClass(a.graph, [x + y for x, y in zip(a.values, b.values)], bound)


def class_mul(a: EquivariantClass, b: EquivariantClass) -> EquivariantClass:
    a._same(b)
    bound = a._bound(b)
    return EquivariantClass(a.graph, [(x * y).truncate(bound) for x, y in zip(a.values, b.values)], bound)


def validate_class(c: EquivariantClass, graph: GKMGraph | None = None) -> tuple[bool, list[Edge]]:
    """Exact edge congruences ``f_u = f_v mod weight``; returns the violated edges."""
    g = c.graph if graph is None else graph
    if len(g) != len(c.values) or g.nvars != c.graph.nvars:
        raise GKMError("class does not belong to this graph")
    bad = []
    for e in g.edges:
        diff = c.values[e.u] - c.values[e.v]
        if diff.is_zero():
            continue
        ok, _ = divisible_by_linear(diff, e.weight)
        if not ok:
            bad.append(e)
    return (not bad), bad


# ---------------------------------------------------------------------------
# localization

def generic_points(graph: GKMGraph) -> tuple[list[int], list[int]]:
    """Two evaluation points on which no tangent weight vanishes."""
    m = graph.max_abs_coefficient() + 2
    n = graph.nvars
    return [m ** j for j in range(n)], [(m + 1) ** j for j in range(n)]


def _euler_at(graph: GKMGraph, point: Sequence[int]) -> list[int]:
    out = []
    for v, t in enumerate(graph.tangents):
        e = 1
        for chi in t:
            x = sum(c * p for c, p in zip(chi, point))
            if x == 0:
                raise GKMError(f"tangent weight {chi} vanishes at the evaluation point")
            e *= x
        out.append(e)
    return out


def localize(graph: GKMGraph, numerator_at: Callable[[int, Sequence[int]], Fraction],
             point: Sequence[int]) -> Fraction:
    """``sum_v numerator_at(v, point) / prod(tangent weights at v)(point)``."""
    euler = _euler_at(graph, point)
    total = Fraction(0)
    for v in graph.vertices:
        num = numerator_at(v, point)
        if num:
            total += Fraction(num) / euler[v]
    return total


def localize_integral(c: EquivariantClass) -> Fraction:
    """Integral over the variety of the top-degree part of ``c``.

    Parts of degree below the dimension must integrate to zero (checked);
    parts of higher degree are ignored.
    """
    g = c.graph
    p1, p2 = generic_points(g)
    result = Fraction(0)
    for d in c.degrees():
        if d > g.dim:
            continue
        part = [p.homogeneous_part(d) for p in c.values]
        v1 = localize(g, lambda v, pt: part[v].eval_at(pt), p1)
        if d < g.dim:
            if v1 != 0:
                raise GKMError(f"degree-{d} part integrates to {v1} != 0; the class is not valid")
            continue
        v2 = localize(g, lambda v, pt: part[v].eval_at(pt), p2)
        if v1 != v2:
            raise GKMError(f"localization is not constant ({v1} vs {v2}); the class is not valid")
        result = v1
    return result


def bb_betti(graph: GKMGraph, base: int | None = None) -> list[int]:
    """Betti numbers (even degrees) from Bialynicki-Birula cell dimensions.

    The cocharacter pairs with simple root ``j`` to ``M^j``; the cell at ``v``
    has dimension equal to the number of tangent weights pairing negatively.
    """
    m = graph.max_abs_coefficient() + 2 if base is None else base
    for attempt in range(8):
        xi = [m ** j for j in range(graph.nvars)]
        counts = [0] * (graph.dim + 1)
        generic = True
        for t in graph.tangents:
            vals = [sum(c * x for c, x in zip(chi, xi)) for chi in t]
            if any(v == 0 for v in vals):
                generic = False
                break
            counts[sum(1 for v in vals if v < 0)] += 1
        if generic:
            break
        m += 1
    else:
        raise GKMError("no generic cocharacter found")
    if counts != counts[::-1]:
        raise GKMError(f"Betti numbers {counts} are not palindromic")
    if sum(counts) != len(graph):
        raise GKMError("Betti numbers do not sum to the number of fixed points")
    return counts
