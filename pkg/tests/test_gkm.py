import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from wonderful_gkm.gkm import (
    EquivariantClass,
    GKMError,
    bb_betti,
    class_add,
    class_mul,
    generic_points,
    localize,
    localize_integral,
    up_to_sign,
    validate_class,
)
from wonderful_gkm.poly import Polynomial
from wonderful_gkm.verify import random_class

from spaces import SMALL, wonderful


def y_a1():
    return wonderful("group:A1").Y


def test_y_graph_of_group_a1():
    g = y_a1()
    assert len(g) == 2 and len(g.edges) == 1 and g.edges[0].weight in ((1, 1), (-1, -1))


def test_validation_examples():
    g = y_a1()
    gamma = (1, 1)
    assert validate_class(EquivariantClass.linear(g, [gamma, (-1, -1)]))[0]
    ok, bad = validate_class(EquivariantClass.linear(g, [(1, 0), (0, 0)]))
    assert not ok and bad == list(g.edges)
    f = Polynomial(2, {(2, 1): 3, (0, 0): 1})
    assert validate_class(EquivariantClass(g, [f, f]))[0]


def test_products_examples():
    g = y_a1()
    a = EquivariantClass.linear(g, [(1, 1), (-1, -1)])
    one = EquivariantClass.constant(g, 1)
    assert class_mul(a, one) == a
    sq = class_mul(a, a)
    assert sq[0] == sq[1] == Polynomial.linear((1, 1)) ** 2
    assert validate_class(sq)[0]
    assert class_add(a, a) == a.scale(2)


def test_classes_on_different_graphs_do_not_mix():
    a = EquivariantClass.constant(wonderful("group:A1").X, 1)
    b = EquivariantClass.constant(wonderful("group:A1").Y, 1)
    with pytest.raises(GKMError):
        class_mul(a, b)
    with pytest.raises(GKMError):
        validate_class(b, wonderful("group:A1").X)


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(SMALL), st.integers(0, 10 ** 6), st.booleans())
def test_sums_and_products_of_valid_classes_are_valid(name, seed, on_y):
    W = wonderful(name)
    rng = random.Random(seed)
    a = random_class(W, rng.randint(0, 2), rng, on_y)
    b = random_class(W, rng.randint(0, 2), rng, on_y)
    assert validate_class(a)[0] and validate_class(b)[0]
    assert validate_class(a + b)[0]
    assert validate_class(a * b)[0]


@pytest.mark.parametrize("name", SMALL)
def test_edge_and_tangent_data_are_coherent(name):
    W = wonderful(name)
    for g in (W.X, W.Y):
        assert g.problems() == []
        assert all(len(t) == g.dim for t in g.tangents)


@pytest.mark.parametrize("name", SMALL)
def test_corrupted_edge_weight_is_detected(name):
    W = wonderful(name)
    e = W.X.edges[0]
    other = next(c for c in W.X.tangents[e.u] if up_to_sign(c) != up_to_sign(e.weight))
    bent = W.X.with_edge_weight(0, tuple(x + y for x, y in zip(e.weight, other)))
    assert bent.problems()
    gens = [W.chern_class("T", "direct", 1)[1]] + [W.boundary_class_X(i) for i in range(1, W.r + 1)]
    assert not all(validate_class(c, bent)[0] for c in gens)


def _product(chars, n):
    out = Polynomial.one(n)
    for chi in chars:
        out = out.mul_linear(chi)
    return out


@pytest.mark.parametrize("name", SMALL)
def test_top_chern_class_counts_vertices(name):
    g = wonderful(name).X
    ctop = EquivariantClass(g, [_product(g.tangents[v], g.nvars) for v in g.vertices])
    assert localize_integral(ctop) == len(g)


def test_cube_of_first_chern_class_of_group_a1():
    g = wonderful("group:A1").X
    c1 = EquivariantClass.linear(g, [tuple(map(sum, zip(*g.tangents[v]))) for v in g.vertices])
    assert localize_integral(c1 ** 3) == 64


@pytest.mark.parametrize("name", SMALL)
def test_localization_is_linear_and_vanishes_below_top_degree(name):
    W = wonderful(name)
    rng = random.Random(7)
    d = W.dim_X - 1
    a, b = random_class(W, d, rng), random_class(W, d, rng)
    for pt in generic_points(W.X):
        assert localize(W.X, lambda v, p: a[v].eval_at(p), pt) == 0
    assert localize_integral(a + b.scale(Fraction(3, 2))) == 0
    top = random_class(W, W.dim_X, rng) if W.dim_X <= 5 else None
    if top is not None:
        other = random_class(W, W.dim_X, rng)
        assert localize_integral(top + other) == localize_integral(top) + localize_integral(other)


def test_invalid_top_class_is_rejected_by_localization():
    g = y_a1()
    with pytest.raises(GKMError):
        localize_integral(EquivariantClass.linear(g, [(1, 0), (0, 0)]))


def test_betti_examples():
    assert bb_betti(wonderful("group:A1").X) == [1, 1, 1, 1]
    assert bb_betti(wonderful("group:A2").Y) == [1, 4, 1]


@pytest.mark.parametrize("name", SMALL)
def test_betti_numbers_do_not_depend_on_the_cocharacter(name):
    W = wonderful(name)
    for g in (W.X, W.Y):
        b = bb_betti(g)
        assert sum(b) == len(g) and b == b[::-1]
        assert bb_betti(g, base=g.max_abs_coefficient() + 11) == b
