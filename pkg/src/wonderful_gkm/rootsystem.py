"""Finite root systems, Weyl group enumeration and Cartan type recognition.

Root systems are built in textbook Euclidean models and then expressed in
the coordinates of a chosen basis of simple roots; all downstream work uses
those integer coordinates together with the Gram matrix of the simple roots.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
import re
from collections import deque
from fractions import Fraction
from math import factorial, lcm
from pathlib import Path
from typing import Callable, Iterable, Sequence

from . import linalg
from .poly import Character, Polynomial

log = logging.getLogger(__name__)

Vector = tuple[Fraction, ...]

EMPTY_TYPE = "∅"
TYPE_SEPARATOR = "×"

CACHE_HEADER = b"WGKM1\n"
CACHE_MIN_ORDER = 10_000
DEFAULT_MAX_ORDER = 2_000_000


class RootSystemError(ValueError):
    """Invalid type descriptor or input that is not a root system."""


# ---------------------------------------------------------------------------
# type descriptors

_FACTOR_RE = re.compile(r"([A-G])_?\{?(\d+)\}?$")


def parse_type(descriptor: str) -> list[tuple[str, int]]:
    """Split ``"A2xB3"`` (separators ``x``, ``×``, ``*``, ``,``) into ``[("A", 2), ("B", 3)]``."""
    text = descriptor.strip()
    if not text:
        raise RootSystemError("empty type descriptor")
    factors = []
    for part in re.split(r"\s*[x×*,]\s*", text):
        m = _FACTOR_RE.match(part)
        if not m:
            raise RootSystemError(f"cannot parse root system type {part!r}")
        letter, rank = m.group(1), int(m.group(2))
        _check_rank(letter, rank)
        factors.append((letter, rank))
    return factors


def _check_rank(letter: str, rank: int) -> None:
    ok = {
        "A": rank >= 1, "B": rank >= 2, "C": rank >= 2, "D": rank >= 3,
        "E": rank in (6, 7, 8), "F": rank == 4, "G": rank == 2,
    }[letter]
    if not ok:
        raise RootSystemError(f"invalid rank {rank} for type {letter}")


def weyl_order(letter: str, rank: int) -> int:
    n = rank
    if letter == "A":
        return factorial(n + 1)
    if letter in "BC":
        return 2 ** n * factorial(n)
    if letter == "D":
        return 2 ** (n - 1) * factorial(n)
    return {("E", 6): 51840, ("E", 7): 2903040, ("E", 8): 696729600,
            ("F", 4): 1152, ("G", 2): 12}[(letter, n)]


def root_count(letter: str, rank: int) -> int:
    n = rank
    if letter == "A":
        return n * (n + 1)
    if letter in "BC":
        return 2 * n * n
    if letter == "D":
        return 2 * n * (n - 1)
    return {("E", 6): 72, ("E", 7): 126, ("E", 8): 240, ("F", 4): 48, ("G", 2): 12}[(letter, n)]


def fundamental_degrees(letter: str, rank: int) -> list[int]:
    n = rank
    if letter == "A":
        return list(range(2, n + 2))
    if letter in "BC":
        return [2 * k for k in range(1, n + 1)]
    if letter == "D":
        return sorted([2 * k for k in range(1, n)] + [n])
    return {("E", 6): [2, 5, 6, 8, 9, 12], ("E", 7): [2, 6, 8, 10, 12, 14, 18],
            ("E", 8): [2, 8, 12, 14, 18, 20, 24, 30], ("F", 4): [2, 6, 8, 12],
            ("G", 2): [2, 6]}[(letter, n)]


def type_factors(type_name: str) -> list[tuple[str, int]]:
    """Factors of a recognized type string (``"∅"`` has none)."""
    if type_name == EMPTY_TYPE:
        return []
    return parse_type(type_name)


# ---------------------------------------------------------------------------
# Euclidean models

def _e(i: int, dim: int, c=1) -> list[Fraction]:
    v = [Fraction(0)] * dim
    v[i] = Fraction(c)
    return v


def _sub(a, b):
    return [x - y for x, y in zip(a, b)]


def _add(a, b):
    return [x + y for x, y in zip(a, b)]


def euclidean_simple_roots(letter: str, rank: int) -> tuple[int, list[Vector]]:
    """Ambient dimension and Bourbaki-style simple roots of a simple type."""
    _check_rank(letter, rank)
    n = rank
    if letter == "A":
        dim = n + 1
        simple = [_sub(_e(i, dim), _e(i + 1, dim)) for i in range(n)]
    elif letter in "BCD":
        dim = n
        simple = [_sub(_e(i, dim), _e(i + 1, dim)) for i in range(n - 1)]
        if letter == "B":
            simple.append(_e(n - 1, dim))
        elif letter == "C":
            simple.append(_e(n - 1, dim, 2))
        else:
            simple.append(_add(_e(n - 2, dim), _e(n - 1, dim)))
    elif letter == "G":
        dim = 3
        simple = [_sub(_e(0, 3), _e(1, 3)), [Fraction(-2), Fraction(1), Fraction(1)]]
    elif letter == "F":
        dim = 4
        h = Fraction(1, 2)
        simple = [_sub(_e(1, 4), _e(2, 4)), _sub(_e(2, 4), _e(3, 4)), _e(3, 4), [h, -h, -h, -h]]
    else:
        dim = 8
        h = Fraction(1, 2)
        a1 = [h, -h, -h, -h, -h, -h, -h, h]
        a2 = _add(_e(0, 8), _e(1, 8))
        rest = [_sub(_e(i, 8), _e(i - 1, 8)) for i in range(1, 7)]
        simple = ([a1, a2] + rest)[:n]
    return dim, [tuple(v) for v in simple]


def dot(a: Sequence, b: Sequence) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def reflect_euclidean(v: Sequence, a: Sequence) -> Vector:
    c = 2 * dot(v, a) / dot(a, a)
    return tuple(Fraction(x) - c * y for x, y in zip(v, a))


def orbit_closure(simple: Sequence[Vector]) -> list[Vector]:
    """All roots generated from the simple roots by simple reflections."""
    seen = {tuple(map(Fraction, s)) for s in simple}
    queue = deque(seen)
    simple = [tuple(map(Fraction, s)) for s in simple]
    while queue:
        v = queue.popleft()
        for a in simple:
            w = reflect_euclidean(v, a)
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return sorted(seen)


def block_simple_roots(factors: Sequence[tuple[str, int]]) -> tuple[int, list[Vector], list[tuple[int, int]]]:
    """Simple roots of a product type in the direct sum of the factor models."""
    models = [euclidean_simple_roots(letter, rank) for letter, rank in factors]
    total = sum(d for d, _ in models)
    simple: list[Vector] = []
    blocks = []
    offset = 0
    for dim, roots in models:
        for r in roots:
            v = [Fraction(0)] * total
            v[offset:offset + dim] = r
            simple.append(tuple(v))
        blocks.append((offset, dim))
        offset += dim
    return total, simple, blocks


# ---------------------------------------------------------------------------
# root systems

def _root_order_key(c: Character):
    ht = sum(c)
    s = 1 if ht > 0 else -1
    return (abs(ht), ht < 0, tuple(-s * x for x in c))


class RootSystem:
    """A finite root system in simple-root coordinates.

    ``roots[i]`` is an integer vector; ``simple[j]`` is the index of the
    ``j``-th simple root (the ``j``-th unit vector); ``gram[i][j]`` is the
    invariant inner product of simple roots ``i`` and ``j``;
    ``reflections[i]`` is the permutation of root indices induced by
    reflecting in root ``i``.
    """

    def __init__(self, label: str, euclidean_roots: Iterable[Sequence], simple_euclidean: Sequence[Sequence]):
        eu_roots = [tuple(map(Fraction, v)) for v in euclidean_roots]
        simple_eu = [tuple(map(Fraction, v)) for v in simple_euclidean]
        n = len(simple_eu)
        self.label = label
        self.rank = n
        gram = [[dot(a, b) for b in simple_eu] for a in simple_eu]
        ginv = linalg.inverse(gram)
        coords: dict[Character, Vector] = {}
        for v in eu_roots:
            proj = [dot(a, v) for a in simple_eu]
            c = [sum(ginv[i][j] * proj[j] for j in range(n)) for i in range(n)]
            if any(x.denominator != 1 for x in c):
                raise RootSystemError(f"root {v} is not an integral combination of the simple roots")
            ci = tuple(int(x) for x in c)
            if not (all(x >= 0 for x in ci) or all(x <= 0 for x in ci)):
                raise RootSystemError(f"root {v} has mixed-sign simple coordinates {ci}")
            coords[ci] = v
        order = sorted(coords, key=_root_order_key)
        self.roots: tuple[Character, ...] = tuple(order)
        self.euclidean: tuple[Vector, ...] = tuple(coords[c] for c in order)
        self.simple_euclidean: tuple[Vector, ...] = tuple(simple_eu)
        self.index: dict[Character, int] = {c: i for i, c in enumerate(self.roots)}
        self.gram: tuple[tuple[Fraction, ...], ...] = tuple(tuple(r) for r in gram)
        self.positive: tuple[bool, ...] = tuple(sum(c) > 0 for c in self.roots)
        self.negation: tuple[int, ...] = tuple(self.index[tuple(-x for x in c)] for c in self.roots)
        units = [tuple(1 if k == j else 0 for k in range(n)) for j in range(n)]
        if any(u not in self.index for u in units):
            raise RootSystemError("simple roots are not roots of the system")
        self.simple: tuple[int, ...] = tuple(self.index[u] for u in units)
        # integer arithmetic: Gram matrix scaled by the lcm of its denominators
        self._scale = lcm(*(x.denominator for row in gram for x in row))
        self._gram_rows = [[int(gram[i][j] * self._scale) for j in range(n)] for i in range(n)]
        self._gr = [self._gram_vec(c) for c in self.roots]
        self._norm_int = [sum(x * y for x, y in zip(g, c)) for g, c in zip(self._gr, self.roots)]
        self.norms: tuple[Fraction, ...] = tuple(Fraction(x, self._scale) for x in self._norm_int)
        self.cartan: tuple[tuple[int, ...], ...] = tuple(
            tuple(int(2 * gram[i][j] / gram[j][j]) for j in range(n)) for i in range(n))
        self.reflections: tuple[tuple[int, ...], ...] = tuple(
            tuple(self.index[self.reflect(c, i)] for c in self.roots) for i in range(len(self.roots)))
        self._type: str | None = None

    @classmethod
    def from_positivity(cls, label: str, euclidean_roots: Iterable[Sequence],
                        key: Callable[[Vector], tuple]) -> "RootSystem":
        """Build with the positive system ``{v : key(v) > 0 lexicographically}``."""
        roots = [tuple(map(Fraction, v)) for v in euclidean_roots]
        zero = None
        pos = []
        for v in roots:
            k = key(v)
            if zero is None:
                zero = tuple(0 for _ in k)
            if k == zero:
                raise RootSystemError(f"positivity functional vanishes on root {v}")
            if k > zero:
                pos.append(v)
        posset = set(pos)
        simple = [a for a in pos
                  if not any(tuple(x - y for x, y in zip(a, b)) in posset for b in pos)]
        simple.sort(reverse=True)
        return cls(label, roots, simple)

    def __repr__(self) -> str:
        return f"RootSystem({self.label!r}, rank={self.rank}, roots={len(self.roots)})"

    def __len__(self) -> int:
        return len(self.roots)

    def _gram_vec(self, c: Sequence[int]) -> list[int]:
        rows = self._gram_rows
        return [sum(rows[i][j] * c[j] for j in range(self.rank) if c[j]) for i in range(self.rank)]

    def inner(self, a: Sequence[int], b: Sequence[int]) -> Fraction:
        ga = self._gram_vec(a)
        return Fraction(sum(x * y for x, y in zip(ga, b)), self._scale)

    def coroot_pairing(self, chi: Sequence[int], i: int) -> Fraction:
        """``<chi, r_i^vee> = 2 (chi, r_i) / (r_i, r_i)``."""
        return Fraction(2 * sum(x * y for x, y in zip(self._gr[i], chi)), self._norm_int[i])

    def reflect(self, chi: Sequence[int], i: int) -> Character:
        c = self.coroot_pairing(chi, i)
        if c.denominator != 1:
            raise RootSystemError(f"reflection of {tuple(chi)} is not integral")
        c = c.numerator
        return tuple(x - c * y for x, y in zip(chi, self.roots[i]))

    @property
    def positive_indices(self) -> list[int]:
        return [i for i, p in enumerate(self.positive) if p]

    def is_positive_char(self, chi: Sequence[int]) -> bool:
        return sum(chi) > 0

    def type_name(self) -> str:
        if self._type is None:
            self._type = recognize_cartan_type(self.roots, self.inner)
        return self._type

    def signature(self) -> str:
        """Digest of the ordered roots and the Gram matrix (used as a cache key)."""
        payload = json.dumps({"roots": self.roots, "gram": [[str(x) for x in r] for r in self.gram]})
        return hashlib.sha256(payload.encode()).hexdigest()


def build_root_system(type_descriptor: str) -> RootSystem:
    """Root system of a product of simple types, e.g. ``"A3"`` or ``"A1xA1"``."""
    factors = parse_type(type_descriptor)
    _, simple, _ = block_simple_roots(factors)
    label = TYPE_SEPARATOR.join(f"{l}{r}" for l, r in factors)
    return RootSystem(label, orbit_closure(simple), simple)


# ---------------------------------------------------------------------------
# Weyl groups

def _compose(a: bytes, b: bytes) -> bytes:
    """(a o b)[k] = a[b[k]]"""
    return bytes(map(a.__getitem__, b))


def _invert(a: bytes) -> bytes:
    out = bytearray(len(a))
    for i, x in enumerate(a):
        out[x] = i
    return bytes(out)


class WeylGroup:
    """Weyl group elements as permutations of the root list.

    Elements are numbered in breadth-first order from the identity (index
    0), so ``lengths`` is non-decreasing.
    """

    def __init__(self, roots: RootSystem, elements: list[bytes], lengths: list[int]):
        self.roots = roots
        self.elements = elements
        self.lengths = lengths
        self.index: dict[bytes, int] = {w: i for i, w in enumerate(elements)}
        self.simple_perms = [bytes(roots.reflections[s]) for s in roots.simple]
        self.identity = 0
        self._matrices: dict[int, tuple[Character, ...]] = {}

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def perm(self, i: int) -> bytes:
        return self.elements[i]

    def compose(self, i: int, j: int) -> int:
        return self.index[_compose(self.elements[i], self.elements[j])]

    def inverse(self, i: int) -> int:
        return self.index[_invert(self.elements[i])]

    def lookup(self, perm: Sequence[int]) -> int:
        return self.index[bytes(perm)]

    def reflection(self, root: int) -> int:
        return self.index[bytes(self.roots.reflections[root])]

    def act_root(self, i: int, root: int) -> int:
        return self.elements[i][root]

    def matrix(self, i: int) -> tuple[Character, ...]:
        """Images of the simple roots (the columns of the lattice matrix)."""
        m = self._matrices.get(i)
        if m is None:
            w = self.elements[i]
            m = tuple(self.roots.roots[w[s]] for s in self.roots.simple)
            self._matrices[i] = m
        return m

    def act(self, i: int, chi: Sequence[int]) -> Character:
        cols = self.matrix(i)
        n = self.roots.rank
        out = [0] * n
        for j, c in enumerate(chi):
            if c:
                col = cols[j]
                for k in range(n):
                    out[k] += c * col[k]
        return tuple(out)

    def act_poly(self, i: int, f: Polynomial) -> Polynomial:
        if i == self.identity:
            return f
        return f.substitute_linear(self.matrix(i))

    def inversion_count(self, i: int) -> int:
        w = self.elements[i]
        pos = self.roots.positive
        return sum(1 for a in range(len(pos)) if pos[a] and not pos[w[a]])

    def word(self, i: int) -> list[int]:
        """A reduced word (simple reflection indices, 0-based) for element ``i``."""
        word: list[int] = []
        w = self.elements[i]
        pos = self.roots.positive
        simple = self.roots.simple
        while True:
            for j, s in enumerate(simple):
                if not pos[w[s]]:
                    word.append(j)
                    w = _compose(w, self.simple_perms[j])
                    break
            else:
                break
        return word[::-1]

    def closure(self, generators: Sequence[int]) -> list[int]:
        """Indices of the subgroup generated by the given elements, in BFS order."""
        seen = {self.identity}
        order = [self.identity]
        queue = deque(order)
        gens = [self.elements[g] for g in generators]
        while queue:
            w = self.elements[queue.popleft()]
            for g in gens:
                k = self.index[_compose(w, g)]
                if k not in seen:
                    seen.add(k)
                    order.append(k)
                    queue.append(k)
        return order

    def element_from_word(self, word: Sequence[int]) -> int:
        w = self.elements[self.identity]
        for j in word:
            w = _compose(w, self.simple_perms[j])
        return self.index[w]


def cache_dir() -> Path:
    env = os.environ.get("WONDERFUL_CACHE_DIR")
    if env:
        return Path(env)
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(os.path.expanduser("~"), ".cache")
    return Path(base) / "wonderful-gkm"


def _cache_path(rs: RootSystem) -> Path:
    label = re.sub(r"[^A-Za-z0-9]+", "_", rs.label).strip("_") or "rs"
    return cache_dir() / f"weyl-{label}-{rs.signature()[:16]}.bin"


def _read_cache(rs: RootSystem, path: Path) -> WeylGroup | None:
    try:
        data = path.read_bytes()
    except FileNotFoundError:
        return None
    try:
        if not data.startswith(CACHE_HEADER):
            raise ValueError("bad header")
        nl = data.index(b"\n", len(CACHE_HEADER))
        meta = json.loads(data[len(CACHE_HEADER):nl])
        if meta.get("key") != rs.signature() or meta.get("nroots") != len(rs.roots):
            raise ValueError("key mismatch")
        order, nroots = int(meta["order"]), int(meta["nroots"])
        body = data[nl + 1:]
        if len(body) != order * (nroots + 1):
            raise ValueError("truncated body")
        lengths = list(body[:order])
        perms = [body[order + k * nroots: order + (k + 1) * nroots] for k in range(order)]
        if perms[0] != bytes(range(nroots)):
            raise ValueError("first element is not the identity")
        return WeylGroup(rs, perms, lengths)
    except (ValueError, KeyError, json.JSONDecodeError) as exc:
        log.warning("Weyl group cache %s is corrupt (%s); rebuilding", path, exc)
        return None


def _write_cache(w: WeylGroup, path: Path) -> None:
    rs = w.roots
    meta = {"key": rs.signature(), "label": rs.label, "nroots": len(rs.roots), "order": w.order}
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(f".tmp{os.getpid()}")
    with open(tmp, "wb") as fh:
        fh.write(CACHE_HEADER)
        fh.write(json.dumps(meta, sort_keys=True).encode() + b"\n")
        fh.write(bytes(w.lengths))
        for p in w.elements:
            fh.write(p)
    os.replace(tmp, path)


def _enumerate(rs: RootSystem) -> WeylGroup:
    nroots = len(rs.roots)
    identity = bytes(range(nroots))
    gens = [bytes(rs.reflections[s]) for s in rs.simple]
    elements = [identity]
    lengths = [0]
    seen = {identity}
    frontier = [identity]
    depth = 0
    while frontier:
        depth += 1
        nxt = []
        for w in frontier:
            for g in gens:
                u = bytes(map(w.__getitem__, g))
                if u not in seen:
                    seen.add(u)
                    nxt.append(u)
        elements.extend(nxt)
        lengths.extend([depth] * len(nxt))
        frontier = nxt
    return WeylGroup(rs, elements, lengths)


def expected_weyl_order(rs: RootSystem) -> int:
    total = 1
    for letter, rank in type_factors(rs.type_name()):
        total *= weyl_order(letter, rank)
    return total


def generate_weyl(rs: RootSystem, use_cache: bool = True, max_order: int = DEFAULT_MAX_ORDER) -> WeylGroup:
    """Enumerate the Weyl group; groups above ``CACHE_MIN_ORDER`` are cached on disk."""
    if len(rs.roots) > 255:
        raise RootSystemError("Weyl enumeration supports at most 255 roots")
    expected = expected_weyl_order(rs)
    if expected > max_order:
        raise RootSystemError(f"Weyl group of order {expected} exceeds the enumeration cap {max_order}")
    path = _cache_path(rs)
    if use_cache and expected > CACHE_MIN_ORDER:
        cached = _read_cache(rs, path)
        if cached is not None and cached.order == expected:
            return cached
    w = _enumerate(rs)
    if w.order != expected:
        raise RootSystemError(f"enumerated {w.order} elements, expected {expected}")
    if use_cache and w.order > CACHE_MIN_ORDER:
        try:
            _write_cache(w, path)
        except OSError as exc:
            log.warning("could not write Weyl group cache %s: %s", path, exc)
    return w


def parabolic_min_reps(w: WeylGroup, subset: Iterable[int], among: Iterable[int] | None = None) -> list[int]:
    """Elements ``u`` with ``u(alpha_j) > 0`` for all simple indices ``j`` in ``subset``."""
    simple = [w.roots.simple[j] for j in subset]
    pos = w.roots.positive
    pool = range(w.order) if among is None else among
    return [i for i in pool if all(pos[w.elements[i][s]] for s in simple)]


def minimal_coset_reps(w: WeylGroup, i: int) -> list[int]:
    """The set ``W^i`` of minimal representatives of ``W / W_i`` (``i`` is 1-based)."""
    if not 1 <= i <= w.roots.rank:
        raise IndexError(f"simple root index {i} out of range 1..{w.roots.rank}")
    return parabolic_min_reps(w, [j for j in range(w.roots.rank) if j != i - 1])


def longest_element(w: WeylGroup) -> int:
    return max(range(w.order), key=lambda i: w.lengths[i])


# ---------------------------------------------------------------------------
# Cartan type recognition

def _generic_positive(vectors: list[tuple]) -> list[tuple]:
    dim = len(vectors[0])
    for t in (1_000_003, 1_000_033, 1_000_037, 7_000_003):
        weights = [t ** (dim - k) for k in range(dim)]
        vals = [sum(Fraction(x) * wgt for x, wgt in zip(v, weights)) for v in vectors]
        if all(vals):
            return [v for v, x in zip(vectors, vals) if x > 0]
    raise RootSystemError("no generic functional found")


def _classify_component(cartan: list[list[int]], norms: list[Fraction], nodes: list[int]) -> tuple[str, int]:
    k = len(nodes)
    if k == 1:
        return ("A", 1)
    bonds = {}
    nbrs: dict[int, list[int]] = {i: [] for i in nodes}
    for a in nodes:
        for b in nodes:
            if a < b and cartan[a][b]:
                bonds[(a, b)] = cartan[a][b] * cartan[b][a]
                nbrs[a].append(b)
                nbrs[b].append(a)
    if len(bonds) != k - 1:
        raise RootSystemError("Dynkin diagram is not a tree")
    mults = set(bonds.values())
    if 3 in mults:
        if k != 2:
            raise RootSystemError("triple bond outside G2")
        return ("G", 2)
    if 2 in mults:
        if k == 2:
            return ("C", 2)
        longest = max(norms[i] for i in nodes)
        short = sum(1 for i in nodes if norms[i] < longest)
        if k == 4 and short == 2:
            return ("F", 4)
        if short == 1:
            return ("B", k)
        if short == k - 1:
            return ("C", k)
        raise RootSystemError("unrecognized doubly laced diagram")
    branch = [i for i in nodes if len(nbrs[i]) > 2]
    if not branch:
        return ("A", k)
    if len(branch) > 1 or len(nbrs[branch[0]]) != 3:
        raise RootSystemError("unrecognized simply laced diagram")
    b = branch[0]
    arms = []
    for start in nbrs[b]:
        length, prev, cur = 1, b, start
        while True:
            nxt = [x for x in nbrs[cur] if x != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    arms.sort()
    if arms[:2] == [1, 1]:
        return ("D", k)
    if arms == [1, 2, 2]:
        return ("E", 6)
    if arms == [1, 2, 3]:
        return ("E", 7)
    if arms == [1, 2, 4]:
        return ("E", 8)
    raise RootSystemError(f"unrecognized branch arms {arms}")


def format_type(factors: Iterable[tuple[str, int]]) -> str:
    factors = sorted(factors)
    if not factors:
        return EMPTY_TYPE
    return TYPE_SEPARATOR.join(f"{l}{r}" for l, r in factors)


def recognize_cartan_type(vectors: Iterable[Sequence], inner: Callable[[Sequence, Sequence], Fraction]) -> str:
    """Canonical Cartan type of a finite set of vectors closed under its reflections.

    Canonical names identify isomorphic types: ``B1 = C1 = A1``, ``B2 = C2``
    (reported as ``C2``), ``D3 = A3``, ``D2 = A1×A1``.
    """
    vecs = list(dict.fromkeys(tuple(v) for v in vectors))
    if not vecs:
        return EMPTY_TYPE
    vset = set(vecs)
    norms = {v: Fraction(inner(v, v)) for v in vecs}
    for b in vecs:
        if norms[b] <= 0:
            raise RootSystemError(f"vector {b} has non-positive norm")
        for a in vecs:
            c = 2 * Fraction(inner(a, b)) / norms[b]
            if c.denominator != 1:
                raise RootSystemError(f"non-integral Cartan number between {a} and {b}")
            s = tuple(Fraction(x) - c * y for x, y in zip(a, b))
            if s not in vset:
                raise RootSystemError(f"reflection closure fails: s_{b}({a}) = {s}")
    pos = _generic_positive(vecs)
    posset = set(pos)
    simple = [a for a in pos if not any(tuple(Fraction(x) - y for x, y in zip(a, b)) in posset for b in pos)]
    n = len(simple)
    cartan = [[int(2 * Fraction(inner(simple[i], simple[j])) / norms[simple[j]]) for j in range(n)]
              for i in range(n)]
    snorms = [norms[s] for s in simple]
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in range(n):
        for j in range(n):
            if i != j and cartan[i][j]:
                parent[find(i)] = find(j)
    comps: dict[int, list[int]] = {}
    for i in range(n):
        comps.setdefault(find(i), []).append(i)
    factors = [_classify_component(cartan, snorms, nodes) for nodes in comps.values()]
    if sum(root_count(l, r) for l, r in factors) != len(vecs):
        raise RootSystemError("root count does not match the recognized type")
    return format_type(factors)


def canonical_type_name(text: str) -> str:
    """Normalize a type string (``"B2"``, ``"D3"``, ``"A1xA1"``) to the canonical name."""
    t = text.strip()
    if t in ("", "0", EMPTY_TYPE, "empty"):
        return EMPTY_TYPE
    out: list[tuple[str, int]] = []
    for part in re.split(r"\s*[x×*,]\s*", t):
        m = re.match(r"([A-G])_?\{?(\d+)\}?(?:\^(\d+))?$", part)
        if not m:
            raise RootSystemError(f"cannot parse type {part!r}")
        letter, rank, mult = m.group(1), int(m.group(2)), int(m.group(3) or 1)
        if letter in "BC" and rank == 1:
            pieces = [("A", 1)]
        elif letter == "B" and rank == 2:
            pieces = [("C", 2)]
        elif letter == "D" and rank == 3:
            pieces = [("A", 3)]
        elif letter == "D" and rank == 2:
            pieces = [("A", 1), ("A", 1)]
        elif letter == "D" and rank == 1:
            pieces = []
        else:
            _check_rank(letter, rank)
            pieces = [(letter, rank)]
        out.extend(pieces * mult)
    return format_type(out)
