from hypothesis import given, settings
from hypothesis import strategies as st

from conevex.alternative import (
    constraint_rows,
    multipliers_valid,
    system_i_solutions,
    system_ii_solve,
    verify_alternative,
)
from conevex.convexity import AlphaGrid
from conevex.generators import GeneratorConfig, gen_random_instance
from conevex.oracles import oracle_system_ii
from conevex.setvalued import FiniteSetMap

from conftest import F


def test_system_i(inst_a, inst_b):
    assert system_i_solutions(inst_a) == ()
    assert system_i_solutions(inst_b) == ("a",)
    boundary = inst_b.replace(f=FiniteSetMap(2, {"a": [(-1, 0)]}))
    assert system_i_solutions(boundary) == ()


def test_system_ii_examples(inst_a, inst_b):
    m = system_ii_solve(inst_a, require_xi_nonzero=True)
    assert m.xi == F(1, 0) and m.eta == F(0) and m.zeta == ()
    assert len(constraint_rows(inst_a)) == 3
    assert system_ii_solve(inst_b, True) is None
    assert system_ii_solve(inst_b, False) is None


def test_verify_alternative_fixtures(inst_a, inst_b):
    ra = verify_alternative(inst_a)
    assert ra.system_i_solutions == () and ra.system_ii_solution is not None
    assert ra.xi_nonzero_solution is not None and ra.implication_checks == (True, True)
    rb = verify_alternative(inst_b)
    assert rb.system_i_solutions == ("a",) and rb.system_ii_solution is None
    assert rb.xi_nonzero_solution is None and rb.implication_checks == (True, True)


def test_hypothesis_violation_is_recorded(inst_a):
    r = verify_alternative(inst_a, check_hypotheses=True, grid=AlphaGrid(4))
    # INST-A's g is not preconvexlike: no label covers the combination of -1 and 1 by a positive multiple
    assert r.hypothesis_violation == (not all(v.verified for v in r.hypotheses.values()))
    assert len(r.implication_checks) == 2


@settings(max_examples=30)
@given(st.integers(0, 10_000))
def test_backward_direction_on_free_instances(index):
    inst = gen_random_instance(GeneratorConfig(11, "FREE"), index)
    r = verify_alternative(inst)
    assert r.implication_checks[1]
    for m in (r.system_ii_solution, r.xi_nonzero_solution):
        if m is not None:
            assert not m.is_zero() and multipliers_valid(inst, m)
    assert (r.system_ii_solution is not None, r.xi_nonzero_solution is not None) == oracle_system_ii(inst)


@settings(max_examples=30)
@given(st.integers(0, 10_000))
def test_forward_direction_on_h1(index):
    inst = gen_random_instance(GeneratorConfig(12, "H1"), index)
    r = verify_alternative(inst)
    assert r.passed
