import random

import pytest
from hypothesis import given, settings, strategies as st

from wonderful_gkm.expr import DegreeMismatch, ExprSyntaxError, expr_class, integrate_expr, parse_expr
from wonderful_gkm.gkm import localize_integral

from spaces import SMALL, wonderful

atoms = st.one_of(
    st.builds(lambda k, b: f"c{k}({b})", st.integers(1, 9), st.sampled_from("TS")),
    st.builds(lambda b: f"td({b})", st.sampled_from("TS")),
    st.builds(lambda i: f"X{i}", st.integers(1, 9)),
    st.builds(lambda i, w: f"Y{i},{w}", st.integers(1, 9), st.sampled_from(["e", "s1", "s2s1", "s1s2s1"])),
    st.builds(lambda k: f"L({k})", st.integers(1, 9)),
)
terms = st.builds(lambda a, p: a if p == 1 else f"{a}^{p}", atoms, st.integers(1, 4))


@given(st.lists(terms, min_size=1, max_size=4))
def test_round_trip(parts):
    text = "*".join(parts)
    e = parse_expr(text)
    assert str(e) == text
    assert parse_expr(str(e)) == e


def test_whitespace_is_ignored():
    assert str(parse_expr(" c1( T ) ^ 2 * X1 ")) == "c1(T)^2*X1"


@pytest.mark.parametrize("text, pos", [
    ("c0(T)", 0), ("c1(T)^0", 6), ("X0", 0), ("L(0)", 0), ("c1(T)**2", 6), ("c1(T)*", 6),
    ("c1(Q)", 0), ("", 0), ("c1(T) X1", 6), ("Y1,", 0), ("c1(T)^", 6),
])
def test_syntax_errors(text, pos):
    with pytest.raises(ExprSyntaxError) as err:
        parse_expr(text)
    assert err.value.position == pos


def test_degrees_and_varieties():
    e = parse_expr("c2(T)*X1^2*td(S)")
    assert e.degree == 4 and not e.homogeneous and not e.on_y
    assert parse_expr("L(1)*Y1,e").on_y


def test_degree_mismatch_reports_both_numbers():
    W = wonderful("group:A1")
    with pytest.raises(DegreeMismatch) as err:
        integrate_expr(W, "c1(T)^2")
    assert (err.value.degree, err.value.dim) == (2, 3)
    with pytest.raises(DegreeMismatch):
        integrate_expr(W, "c1(T)^4*td(T)")


def test_index_errors():
    W = wonderful("group:A1")
    for bad in ("X2*c1(T)^2", "L(3)*c1(T)^2", "c4(T)"):
        with pytest.raises(IndexError):
            integrate_expr(W, bad)


def test_calibration_values():
    W = wonderful("group:A1")
    assert integrate_expr(W, "c1(T)^3") == (64, "X")
    assert integrate_expr(W, "c1(S)^3") == (8, "X")
    assert integrate_expr(W, "c3(T)") == (4, "X")
    assert integrate_expr(W, "Y1,e") == (1, "Y")
    assert integrate_expr(W, "L(2)") == (1, "Y")


def random_expr(W, rng, on_y):
    """A random product of atoms of total degree dim (plus possibly a Todd factor)."""
    s = W.space
    dim = W.dim_Y if on_y else W.dim_X
    parts = []
    left = dim
    while left:
        k = rng.randint(1, left)
        if on_y and left == dim:
            # a Y or L atom is what sends the integral to Y
            kind = rng.choice(["Y", "L"])
        elif on_y:
            kind = rng.choice(["X", "Y", "L", "c"])
        else:
            kind = rng.choice(["X", "c"])
        if kind == "X":
            parts.append(f"X{rng.randint(1, W.r)}")
            left -= 1
        elif kind == "Y":
            i, m = rng.choice(W.boundary_index)
            parts.append(f"Y{i},{W.Y.labels[m]}")
            left -= 1
        elif kind == "L":
            parts.append(f"L({rng.randint(1, len(s.betas))})")
            left -= 1
        else:
            parts.append(f"c{k}({rng.choice('TS')})")
            left -= k
    if rng.random() < 0.3:
        parts.append(f"td({rng.choice('TS')})")
    return "*".join(parts)


@pytest.mark.parametrize("name", SMALL)
def test_scaling_route_agrees_with_symbolic_classes(name):
    W = wonderful(name)
    rng = random.Random(name)
    for _ in range(6):
        on_y = rng.random() < 0.5
        text = random_expr(W, rng, on_y)
        value, variety = integrate_expr(W, text)
        assert variety == ("Y" if on_y else "X")
        assert localize_integral(expr_class(W, text)) == value, text


@settings(max_examples=15, deadline=None)
@given(st.integers(1, 3), st.sampled_from("TS"))
def test_chern_powers_on_group_a1(k, bundle):
    W = wonderful("group:A1")
    text = "*".join([f"c1({bundle})"] * (3 - k) + [f"c{k}({bundle})"]) if k < 3 else f"c3({bundle})"
    assert integrate_expr(W, text)[0] == localize_integral(expr_class(W, text))
