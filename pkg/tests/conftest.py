from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from conevex.fixtures import load_fixture
from conevex.geometry import cone_from_generators, rank

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@pytest.fixture(scope="session")
def inst_a():
    return load_fixture("INST-A")


@pytest.fixture(scope="session")
def inst_b():
    return load_fixture("INST-B")


@pytest.fixture(scope="session")
def inst_c():
    return load_fixture("INST-C")


def F(*xs):
    return tuple(Fraction(x) for x in xs)


small_ints = st.integers(min_value=-3, max_value=3)
rationals = st.fractions(min_value=-4, max_value=4, max_denominator=4)


def vectors(n, elements=rationals):
    return st.tuples(*[elements] * n)


@st.composite
def pointed_cones(draw, min_dim=2, max_dim=4):
    """Full-dimensional cones whose generators have positive coordinate sum (hence pointed)."""
    n = draw(st.integers(min_dim, max_dim))
    gen = st.tuples(*[small_ints] * n).filter(lambda g: sum(g) > 0)
    gens = draw(st.lists(gen, min_size=n, max_size=n + 3, unique=True))
    if rank([F(*g) for g in gens]) < n:
        # add the standard basis so the cone is full-dimensional
        gens += [tuple(int(i == j) for j in range(n)) for i in range(n)]
    return cone_from_generators(n, gens)


# acceptance criteria report one line each; printed after the run so they survive capture
_ACCEPTANCE = []


@pytest.fixture
def acceptance():
    def record(number, ok, detail):
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}"
        _ACCEPTANCE.append((number, line))
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(_ACCEPTANCE):
            terminalreporter.write_line(line)
