from math import factorial

import pytest
from hypothesis import given, strategies as st

from wonderful_gkm.rootsystem import canonical_type_name
from wonderful_gkm.symspace import (
    SpaceSyntaxError,
    build_symmetric_space,
    corrupted_space,
    parse_space,
    validate_minimal_rank,
)

from spaces import space

ALL_SMALL = ["group:A1", "group:A2", "group:B2", "group:G2", "AC:2", "AC:3", "DB:3", "DB:4", "group:A1,AC:2"]


# ---------------------------------------------------------------------------
# descriptors

def test_parse_examples():
    assert len(parse_space("group:A1,AC:2").factors) == 2
    assert str(parse_space("EF6")) == "EF6"
    assert len(parse_space("EF6").factors) == 1


@pytest.mark.parametrize("text, pos", [
    ("AC:1", 3), ("DB:2", 3), ("group:A0", 6), ("group:E9", 6), ("XY:2", 0), ("AC:2,", 5),
    ("AC:2;DB:3", 4), ("", 0), ("group:", 6), ("AC:", 3),
])
def test_parse_errors_carry_the_column(text, pos):
    with pytest.raises(SpaceSyntaxError) as err:
        parse_space(text)
    assert err.value.position == pos
    assert "^" in str(err.value)


factor = st.one_of(
    st.sampled_from(["A", "B", "C", "D"]).flatmap(
        lambda l: st.integers({"A": 1, "B": 2, "C": 2, "D": 3}[l], 9).map(lambda r: f"group:{l}{r}")),
    st.sampled_from(["group:E6", "group:E7", "group:E8", "group:F4", "group:G2", "EF6"]),
    st.integers(2, 9).map(lambda n: f"AC:{n}"),
    st.integers(3, 9).map(lambda n: f"DB:{n}"),
)


@given(st.lists(factor, min_size=1, max_size=4))
def test_descriptor_round_trip(parts):
    text = ",".join(parts)
    assert str(parse_space(text)) == text
    assert parse_space(str(parse_space(text))) == parse_space(text)


# ---------------------------------------------------------------------------
# classification against the families

def family_table(name):
    """(K, L, K-L, G/K, |W_K|, |W_G/K|) of a single-factor space, by family."""
    if name.startswith("AC:"):
        n = int(name[3:])
        return f"C{n}", "A1^%d" % n, f"D{n}", f"A{n - 1}", 2 ** n * factorial(n), factorial(n)
    if name.startswith("DB:"):
        n = int(name[3:])
        return f"B{n - 1}", f"D{n - 1}", "A1^%d" % (n - 1), "A1", 2 ** (n - 1) * factorial(n - 1), 2
    if name == "EF6":
        return "F4", "D4", "D4", "A2", 1152, 6
    t = name[6:]
    order = {"A1": 2, "A2": 6, "B2": 8, "G2": 12}[t]
    return t, "∅", t, t, order, order


@pytest.mark.parametrize("name", ["group:A1", "group:A2", "group:B2", "group:G2", "AC:2", "AC:3", "DB:3", "DB:4"])
def test_types_and_orders_follow_the_family_table(name):
    s = space(name)
    k, l, kl, gk, wk, wgk = family_table(name)
    assert s.types["K"] == canonical_type_name(k)
    assert s.types["L"] == canonical_type_name(l)
    assert s.types["K-L"] == canonical_type_name(kl)
    assert s.types["G/K"] == canonical_type_name(gk)
    assert len(s.W_K) == wk
    assert s.restricted_weyl_order == wgk
    assert len(s.W_K) == len(s.W_L) * s.restricted_weyl_order


def test_build_examples():
    s = space("group:A1")
    assert s.types["L"] == "∅" and len(s.X_vertices) == 4 and s.types["G/K"] == "A1"
    s = space("AC:2")
    assert s.types["K"] == "C2" and len(s.W_K) == 8 and s.restricted_weyl_order == 2
    s = space("DB:3")
    assert s.types["G/K"] == "A1" and s.restricted_weyl_order == 2


@pytest.mark.parametrize("name", ALL_SMALL)
def test_validation_passes(name):
    rep = validate_minimal_rank(space(name))
    assert rep.ok, [c.name for c in rep.failures()]


@pytest.mark.parametrize("name", ALL_SMALL)
def test_restricted_rank_and_eigenlattices(name):
    s = space(name)
    expected = sum({"group": f.rank, "AC": f.rank - 1, "DB": 1, "EF6": 2}[f.kind] for f in s.descriptor.factors)
    assert s.r == len(s.gammas) == expected


# ---------------------------------------------------------------------------
# q-fibers

def test_group_fiber_example():
    s = space("group:A1")
    s1, s2 = (1, 0), (0, 1)
    assert s.theta(s1) == (0, -1)
    f = s.q_fiber(s.q(s2))
    assert f.case == "b"
    assert [s.rs.roots[i] for i in f.roots] == [s2, (-1, 0)]


def test_ac2_fibers_long_and_short():
    s = space("AC:2")
    for b in s.K_roots:
        f = s.q_fiber(b)
        if f.case == "a":
            assert len(f.roots) == 1 and f.roots[0] in s.L_roots
        else:
            a, ta = f.roots
            assert s.rs.positive[a] and not s.rs.positive[ta] and s.theta_perm[a] == ta
    # |q(chi)|^2 = 2|chi|^2 + 2(chi, theta chi): L-roots give the long roots of C2,
    # strongly orthogonal pairs the short ones
    norm = {case: {s.rs.inner(b, b) for b in s.K_roots if s.q_fiber(b).case == case} for case in "ab"}
    assert len(norm["a"]) == len(norm["b"]) == 1
    assert norm["a"].pop() == 2 * norm["b"].pop()


@pytest.mark.parametrize("name", ALL_SMALL)
def test_pairs_are_strongly_orthogonal(name):
    s = space(name)
    rs = s.rs
    for a in s.N_plus:
        ta = s.theta_perm[a]
        x, y = rs.roots[a], rs.roots[ta]
        assert rs.inner(x, y) == 0
        assert tuple(p + q for p, q in zip(x, y)) not in rs.index
        assert tuple(p - q for p, q in zip(x, y)) not in rs.index


def test_fiber_of_a_non_root_is_an_error():
    s = space("group:A1")
    with pytest.raises((KeyError, ValueError)):
        s.q_fiber((5, 5))


@pytest.mark.parametrize("name", ALL_SMALL)
def test_q_is_equivariant_and_wl_is_the_centralizer(name):
    s = space(name)
    w = s.weyl
    for x in s.W_K:
        for chi in s.rs.roots:
            assert s.q(w.act(x, chi)) == w.act(x, s.q(chi))
    fixing = [x for x in s.W_K if all(w.act(x, g) == g for g in s.restricted_roots)]
    assert sorted(fixing) == sorted(s.W_L)


# ---------------------------------------------------------------------------
# negative controls

def test_corrupted_involution_fails_the_swap_check():
    base = build_symmetric_space("group:A1")
    # theta(s1) = s2, theta(s2) = s1: an involution preserving the roots but fixing both
    bad = corrupted_space(base, [(0, 1), (1, 0)])
    rep = validate_minimal_rank(bad)
    assert not rep.ok
    assert any("Phi+" in c.name for c in rep.failures())


def test_corrupted_non_involution_is_reported():
    base = build_symmetric_space("AC:2")
    n = base.n
    cols = [tuple(-1 if k == j else 0 for k in range(n)) for j in range(n)]
    cols[0] = tuple(-x for x in base.rs.roots[base.rs.simple[1]])  # s1 -> -s2 but s2 -> -s2
    rep = validate_minimal_rank(corrupted_space(base, cols))
    assert not rep.ok


def test_describe_reports_the_orders():
    d = space("group:A1").describe()
    assert d["orders"] == {"W_G": 4, "W_K": 2, "W_L": 1, "W_G/K": 2}
    assert d["vertices"] == {"X": 4, "Y": 2}
