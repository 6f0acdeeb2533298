from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conevex.errors import AlphaOutOfRange, DimensionMismatch, UnknownLabel, ValidationError
from conevex.geometry import orthant
from conevex.setvalued import (
    DomainPoint,
    FiniteSetMap,
    ProblemInstance,
    apply_functional,
    combine,
    feasible_set,
    image_union,
)

from conftest import F, vectors


def test_image_union(inst_a):
    assert image_union(inst_a.f, "abc") == (F(0, 1), F(1, 0), F(2, 2))
    assert image_union(inst_a.f, ["a"]) == inst_a.f["a"]
    dup = FiniteSetMap(1, {"p": [(1,)], "q": [(1,)]})
    assert image_union(dup, ["p", "q"]) == (F(1),)
    with pytest.raises(UnknownLabel):
        image_union(inst_a.f, ["zz"])


def test_combine(inst_c):
    half = Fraction(1, 2)
    assert set(combine(inst_c.f, "a", "b", half)) == {F(0, 1), F(1, 0), (half, half)}
    m = FiniteSetMap(2, {"u": [(3, 0)], "v": [(0, 3)]})
    assert combine(m, "u", "v", Fraction(1, 3)) == (F(1, 2),)
    assert combine(m, "u", "u", half) == (F(3, 0),)
    for bad in (0, 1, 2):
        with pytest.raises(AlphaOutOfRange):
            combine(m, "u", "v", bad)


def test_apply_functional(inst_a):
    assert apply_functional(inst_a.f, "c", F(1, 1)) == F(4)
    assert apply_functional(inst_a.f, "c", F(0, 0)) == F(0)
    assert apply_functional(inst_a.h, "a", ()) == F(0)
    with pytest.raises(DimensionMismatch):
        apply_functional(inst_a.f, "a", F(1))


def test_feasible_set(inst_a):
    assert feasible_set(inst_a) == ("a", "b")
    positive = inst_a.replace(g=FiniteSetMap(1, {x: [(1,)] for x in "abc"}))
    assert feasible_set(positive) == ()


def test_feasibility_with_equality_constraint():
    dom = (DomainPoint("p", (0,)), DomainPoint("q", (1,)))
    inst = ProblemInstance(
        1, 1, 1, 1, orthant(1), orthant(1), dom,
        FiniteSetMap(1, {"p": [(0,)], "q": [(0,)]}),
        FiniteSetMap(1, {"p": [(-1,)], "q": [(-1,)]}),
        FiniteSetMap(1, {"p": [(0,), (2,)], "q": [(1,)]}),
    )
    assert feasible_set(inst) == ("p",)


def test_instance_validation(inst_a):
    with pytest.raises(ValidationError):
        inst_a.replace(dim_y=0)
    with pytest.raises(ValidationError):
        inst_a.replace(domain=inst_a.domain + (DomainPoint("a", (5,)),))
    with pytest.raises(ValidationError):
        inst_a.replace(f=FiniteSetMap(2, {"a": [(0, 1)]}))
    with pytest.raises(ValidationError):
        FiniteSetMap(1, {"a": []})
    with pytest.raises(DimensionMismatch):
        FiniteSetMap(2, {"a": [(1,)]})
    # h is needed once W has positive dimension
    with pytest.raises(ValidationError):
        inst_a.replace(dim_w=1)


@given(st.lists(vectors(2), min_size=1, max_size=4), st.lists(vectors(2), min_size=1, max_size=4), vectors(2))
def test_functional_distributes_over_union(p, q, ell):
    m = FiniteSetMap(2, {"p": p, "q": q})
    whole = {sum(a * b for a, b in zip(y, ell)) for y in image_union(m, ["p", "q"])}
    assert whole == set(apply_functional(m, "p", ell)) | set(apply_functional(m, "q", ell))


@given(vectors(2), vectors(2), st.fractions(Fraction(1, 8), Fraction(7, 8), max_denominator=8))
def test_singleton_combination_is_one_point(u, v, alpha):
    m = FiniteSetMap(2, {"u": [u], "v": [v]})
    assert combine(m, "u", "v", alpha) == (tuple(alpha * a + (1 - alpha) * b for a, b in zip(u, v)),)


@given(st.lists(vectors(1, st.fractions(-3, 3, max_denominator=3)), min_size=1, max_size=3), st.fractions(-3, 0, max_denominator=3))
def test_feasibility_monotone_in_g(g_img, extra):
    dom = (DomainPoint("p", ()),)
    inst = ProblemInstance(0, 1, 1, 0, orthant(1), orthant(1), dom,
                           FiniteSetMap(1, {"p": [(0,)]}), FiniteSetMap(1, {"p": g_img}))
    bigger = inst.replace(g=FiniteSetMap(1, {"p": list(g_img) + [(extra,)]}))
    assert set(feasible_set(inst)) <= set(feasible_set(bigger))
    assert feasible_set(bigger) == ("p",)
