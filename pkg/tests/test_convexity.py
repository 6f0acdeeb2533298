from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from conevex.convexity import (
    AlphaGrid,
    TauInterval,
    Verdict,
    choose_tau,
    is_cone_convex,
    is_convexlike,
    is_preaffine,
    is_preconvexlike,
    tau_in,
    tau_interval,
)
from conevex.geometry import contains, orthant
from conevex.setvalued import FiniteSetMap

from conftest import F, pointed_cones, vectors

HALF = Fraction(1, 2)
Q2 = orthant(2)


def test_tau_interval_examples():
    ivs = tau_interval([(HALF, HALF)], [F(1, 0), F(0, 1)], Q2)
    assert ivs == (TauInterval(Fraction(0), HALF, False, True),)
    assert tau_interval([F(-1, 0)], [F(1, 0)], Q2) == ()
    S = [F(1, 2), F(3, -1)]
    assert tau_in(tau_interval(S, S, Q2), 1)


def test_choose_tau():
    assert choose_tau((TauInterval(Fraction(0), None),)) == 1
    assert choose_tau((TauInterval(Fraction(0), HALF, False, True),)) == Fraction(1, 4)
    assert choose_tau((TauInterval(Fraction(2), None, True),)) == 3


def test_inst_c_classification(inst_c):
    pre = is_preconvexlike(inst_c.f, inst_c.y_cone, AlphaGrid(8))
    assert pre.kind is Verdict.VERIFIED
    x3, tau = pre.witnesses[("a", "b", HALF)]
    assert x3 == "a" and tau_in(tau_interval([F(0, 1), F(1, 0), (HALF, HALF)], inst_c.f["a"], Q2), HALF)
    conv = is_convexlike(inst_c.f, inst_c.y_cone, AlphaGrid(8))
    assert conv.kind is Verdict.REFUTED
    assert ("a", "b", HALF) in conv.refuted_cells
    # first failure in scan order: x1 = x2 pairs come first
    assert conv.certificate == ("a", "a", Fraction(1, 8))


def test_inst_a_not_convexlike(inst_a):
    v = is_convexlike(inst_a.f, inst_a.y_cone)
    assert not v.verified and ("a", "b", HALF) in v.refuted_cells


def test_constant_singleton_map():
    m = FiniteSetMap.constant(2, "pqr", [(1, 3)])
    pre = is_preconvexlike(m, Q2)
    # (1 - tau)(1, 3) lies in the orthant exactly for tau <= 1
    assert pre.verified and all(tau == HALF for _, tau in pre.witnesses.values())
    assert is_convexlike(m, Q2).verified


def test_refuted_on_coarse_grid():
    m = FiniteSetMap(2, {"a": [(1, -1)], "b": [(-1, 1)]})
    v = is_preconvexlike(m, Q2, AlphaGrid(2))
    assert v.kind is Verdict.REFUTED and v.certificate == ("a", "b", HALF)


def test_preaffine_examples(inst_a):
    assert is_preaffine(FiniteSetMap.constant(2, "pq", [(0, 0)])).verified
    assert is_preaffine(inst_a.h).verified
    m = FiniteSetMap(2, {"a": [(1, 1)], "b": [(2, 2)]})
    v = is_preaffine(m, AlphaGrid(2))
    assert v.verified and v.witnesses[("a", "b", HALF)] == ("a", Fraction(3, 2))
    assert not is_preaffine(FiniteSetMap(2, {"a": [(1, 0)], "b": [(0, 1)]}), AlphaGrid(2)).verified


def test_cone_convex_examples(inst_a):
    coords = {"a": F(0), "b": F(1), "m": (HALF,)}
    ident = FiniteSetMap(1, {x: [c] for x, c in coords.items()})
    assert is_cone_convex(ident, orthant(1), AlphaGrid(2), coords).verified
    v = is_cone_convex(inst_a.f, inst_a.y_cone, AlphaGrid(8), inst_a.coords)
    # labels sit at 0, 1, 2: only a-c at alpha 1/2 hits a label off the diagonal
    assert v.verified and len(v.skipped) == 3 * 7 - 1
    assert ("a", "c", HALF) in v.witnesses
    bump = FiniteSetMap(2, {"a": [(0, 0)], "b": [(0, 0)], "m": [(1, 1)]})
    v = is_cone_convex(bump, Q2, AlphaGrid(2), coords)
    assert v.kind is Verdict.REFUTED and v.certificate == ("a", "b", HALF)


images = st.lists(vectors(2, st.fractions(-3, 3, max_denominator=3)), min_size=1, max_size=3)


@given(st.dictionaries(st.sampled_from("pqr"), images, min_size=1))
def test_convexlike_implies_preconvexlike(table):
    m = FiniteSetMap(2, table)
    grid = AlphaGrid(4)
    if is_convexlike(m, Q2, grid).verified:
        assert is_preconvexlike(m, Q2, grid).verified


@given(st.dictionaries(st.sampled_from("pq"), images, min_size=2))
def test_refutation_survives_refinement(table):
    m = FiniteSetMap(2, table)
    coarse = is_preconvexlike(m, Q2, AlphaGrid(2))
    fine = is_preconvexlike(m, Q2, AlphaGrid(4))
    assert set(coarse.refuted_cells) <= set(fine.refuted_cells)


def _covered(A, S, C, tau):
    return all(any(contains(C, tuple(a - tau * s for a, s in zip(p, q))) for q in S) for p in A)


@given(pointed_cones(2, 3), st.data())
def test_tau_interval_against_direct_containment(C, data):
    n = C.ambient_dim
    pts = st.lists(vectors(n, st.fractions(-3, 3, max_denominator=3)), min_size=1, max_size=3)
    A, S = data.draw(pts), data.draw(pts)
    ivs = tau_interval(A, S, C)
    for iv in ivs:
        inside = [iv.lo + 1 if iv.hi is None else (iv.lo + iv.hi) / 2]
        if iv.lo_closed:
            inside.append(iv.lo)
        if iv.hi_closed:
            inside.append(iv.hi)
        for t in inside:
            assert _covered(A, S, C, t)
    for _ in range(20):
        t = data.draw(st.fractions(Fraction(1, 50), 20, max_denominator=50))
        assert _covered(A, S, C, t) == tau_in(ivs, t)


@given(st.data(), st.fractions(Fraction(1, 4), 4, max_denominator=4))
def test_tau_interval_scaling(data, c):
    pts = st.lists(vectors(2, st.fractions(-3, 3, max_denominator=3)), min_size=1, max_size=3)
    A, S = data.draw(pts), data.draw(pts)
    t = data.draw(st.fractions(Fraction(1, 10), 5, max_denominator=10))
    scaled = [tuple(a / c for a in s) for s in S]
    assert tau_in(tau_interval(A, S, Q2), t) == tau_in(tau_interval(A, scaled, Q2), c * t)
