import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conevex.convexity import AlphaGrid, is_convexlike, is_preconvexlike
from conevex.efficiency import slater_holds
from conevex.generators import FAMILIES, GeneratorConfig, family_guarantees, gen_random_instance
from conevex.instance_io import serialize_instance
from conevex.setvalued import feasible_set

seeds = st.integers(0, 2**63 - 1)
indices = st.integers(0, 1000)


def test_determinism():
    cfg = GeneratorConfig(42, "H2")
    assert serialize_instance(gen_random_instance(cfg)) == serialize_instance(gen_random_instance(cfg))
    # instance i does not depend on the instances drawn before it
    later = gen_random_instance(cfg, 7)
    for i in range(7):
        gen_random_instance(cfg, i)
    assert serialize_instance(gen_random_instance(cfg, 7)) == serialize_instance(later)
    assert serialize_instance(gen_random_instance(cfg, 1)) != serialize_instance(gen_random_instance(cfg, 2))


def test_bad_config():
    with pytest.raises(ValueError):
        GeneratorConfig(1, "H9")
    with pytest.raises(ValueError):
        GeneratorConfig(1, "H1", max_domain=2)


@settings(max_examples=30)
@given(seeds, indices)
def test_h1_maps_are_convexlike(seed, index):
    inst = gen_random_instance(GeneratorConfig(seed, "H1"), index)
    grid = AlphaGrid(8)
    for F, C in ((inst.f, inst.y_cone), (inst.g, inst.z_cone)):
        assert is_convexlike(F, C, grid).verified
        assert is_preconvexlike(F, C, grid).verified


@settings(max_examples=40)
@given(seeds, indices)
def test_h2_slater_and_feasible(seed, index):
    inst = gen_random_instance(GeneratorConfig(seed, "H2"), index)
    assert slater_holds(inst) and feasible_set(inst)


@settings(max_examples=40)
@given(st.sampled_from(FAMILIES), seeds, indices)
def test_size_bounds_and_guarantees(family, seed, index):
    cfg = GeneratorConfig(seed, family)
    inst = gen_random_instance(cfg, index)
    assert family_guarantees(inst, family) == []
    assert 2 <= len(inst.labels) <= cfg.max_domain
    assert max(inst.dim_x, inst.dim_y, inst.dim_z, inst.dim_w) <= cfg.max_dim
    for F in (inst.f, inst.g):
        for x in inst.labels:
            assert 1 <= len(F[x]) <= cfg.max_image
            for p in F[x]:
                assert all(abs(a.numerator) <= cfg.max_num and a.denominator <= cfg.max_den for a in p)
    if family == "H3":
        assert all(len(inst.g[x]) == 1 for x in inst.labels)
