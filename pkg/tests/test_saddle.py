import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conevex.alternative import Multipliers
from conevex.errors import (
    InvalidMultipliers,
    NonPositiveOperator,
    NotInterior,
    NotNormalized,
    NotWeaklyEfficient,
)
from conevex.efficiency import weakly_efficient_labels
from conevex.generators import GeneratorConfig, gen_random_instance
from conevex.geometry import dot, orthant
from conevex.saddle import (
    LinearOperator,
    OperatorPair,
    construct_saddle_operators,
    construct_scalar_multipliers,
    lagrangian_value,
    operator_is_positive,
    scalar_lagrangian,
    scalar_saddle_check,
    vector_saddle_check,
    verify_scalar_saddle_theorems,
    verify_vector_saddle_theorems,
    zero_in_image,
    zero_pair,
)
from conevex.setvalued import FiniteSetMap

from conftest import F, vectors

Q1, Q2 = orthant(1), orthant(2)


def _column(*entries):
    return OperatorPair(LinearOperator(2, 1, tuple((Fraction(e),) for e in entries)), LinearOperator.zero(2, 0))


def test_operator_positivity():
    assert operator_is_positive(LinearOperator.zero(2, 1), Q1, Q2)
    assert operator_is_positive(_column(1, 1).S, Q1, Q2)
    assert not operator_is_positive(_column(-1, 0).S, Q1, Q2)


def test_lagrangian_value(inst_a):
    assert lagrangian_value(inst_a, "a", zero_pair(inst_a)) == (F(0, 1),)
    assert lagrangian_value(inst_a, "a", _column(1, 1)) == (F(-1, 0),)
    two = inst_a.replace(f=FiniteSetMap(2, {"a": [(0, 1), (5, 5)], "b": [(1, 0)], "c": [(2, 2)]}),
                         g=FiniteSetMap(1, {"a": [(-1,), (-2,)], "b": [(0,)], "c": [(1,)]}))
    assert len(lagrangian_value(two, "a", _column(1, 1))) == 4


def test_vector_saddle_check_examples(inst_a, inst_b):
    r = vector_saddle_check(inst_a, "a", zero_pair(inst_a))
    assert (r.condition_i, r.condition_ii, r.condition_iii, r.is_saddle) == (True, True, True, True)
    assert r.ybar == F(0, 1) and r.zbar == F(-1)
    rc = vector_saddle_check(inst_a, "c", zero_pair(inst_a))
    assert not rc.condition_ii and not rc.is_saddle
    rb = vector_saddle_check(inst_b, "a", zero_pair(inst_b))
    assert rb.is_saddle and rb.ybar == F(-1, -1) and rb.zbar == F(-1)
    with pytest.raises(NonPositiveOperator):
        vector_saddle_check(inst_a, "a", _column(-1, 0))


def test_construct_saddle_operators(inst_a):
    m = Multipliers(F(1, 0), F(0), ())
    pair = construct_saddle_operators(inst_a, m, F(1, 1))
    assert pair.S.matrix == (F(0), F(0)) and pair.T.cols == 0
    pair = construct_saddle_operators(inst_a, Multipliers(F(1, 0), F(2), ()), F(1, 1))
    assert pair.S.matrix == (F(2), F(2))
    with pytest.raises(NotInterior):
        construct_saddle_operators(inst_a, m, F(1, 0))
    with pytest.raises(NotNormalized):
        construct_saddle_operators(inst_a, m, F(2, 1))


def test_vector_theorems_on_fixtures(inst_a, inst_b):
    ra = verify_vector_saddle_theorems(inst_a)
    assert ra.passed and set(ra.constructions) == {"a", "b"}
    for c in ra.constructions.values():
        assert c.pair.S.matrix == (F(0), F(0)) and c.zero_in_Sg
    assert ra.constructions["a"].multipliers.xi == F(1, 0)
    assert ra.constructions["b"].multipliers.xi == F(0, 1)
    assert verify_vector_saddle_theorems(inst_b).passed


def test_scalar_lagrangian(inst_a):
    assert scalar_lagrangian(inst_a, F(1, 0), "a", F(0)) == (0,)
    assert scalar_lagrangian(inst_a, F(1, 0), "a", F(3)) == (-3,)


def test_scalar_saddle_check_examples(inst_a):
    assert scalar_saddle_check(inst_a, F(1, 0), "a", F(0)).is_saddle
    rb = scalar_saddle_check(inst_a, F(1, 0), "b", F(0))
    assert not rb.right_holds and rb.min_over_feasible == 0 and rb.value == (1,)
    r1 = scalar_saddle_check(inst_a, F(1, 0), "a", F(1))
    assert not r1.eta_g_zero and not r1.is_saddle
    with pytest.raises(InvalidMultipliers):
        scalar_saddle_check(inst_a, F(0, 0), "a", F(0))
    with pytest.raises(InvalidMultipliers):
        scalar_saddle_check(inst_a, F(1, 0), "a", F(-1))


def test_construct_scalar_multipliers(inst_a):
    assert construct_scalar_multipliers(inst_a, "a") == Multipliers(F(1, 0), F(0), ())
    assert construct_scalar_multipliers(inst_a, "b") == Multipliers(F(0, 1), F(0), ())
    with pytest.raises(NotWeaklyEfficient):
        construct_scalar_multipliers(inst_a, "c")


def test_scalar_theorems_on_fixtures(inst_a, inst_b):
    assert verify_scalar_saddle_theorems(inst_a).passed
    assert verify_scalar_saddle_theorems(inst_b).passed


@given(vectors(2, st.fractions(0, 4, max_denominator=4)), vectors(2, st.fractions(0, 4, max_denominator=4)),
       vectors(2), vectors(2))
def test_pullback_is_composition(y0, ell, xi, z):
    S = LinearOperator.rank_one(y0, ell)
    assert dot(xi, S(z)) == dot(S.pullback(xi), z)
    assert operator_is_positive(S, Q2, Q2)


@settings(max_examples=20)
@given(st.integers(0, 10_000))
def test_random_rank_one_pairs_map_back(index):
    """Sampled positive rank-one operators: every saddle with O in S(g(x)) is weakly efficient."""
    inst = gen_random_instance(GeneratorConfig(31, "H3"), index)
    efficient = set(weakly_efficient_labels(inst))
    rng = random.Random(index)
    y0 = tuple(Fraction(rng.randint(1, 4)) for _ in range(inst.dim_y))
    for _ in range(50):
        eta = tuple(Fraction(rng.randint(0, 3), rng.randint(1, 3)) for _ in range(inst.dim_z))
        pair = OperatorPair(LinearOperator.rank_one(y0, eta), LinearOperator.zero(inst.dim_y, 0))
        for x in inst.labels:
            if vector_saddle_check(inst, x, pair).is_saddle and zero_in_image(pair.S, inst.g[x]):
                assert x in efficient
