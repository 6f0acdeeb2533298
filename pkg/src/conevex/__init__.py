"""Exact verification workbench for set-valued vector optimization with polyhedral cones."""

from .alternative import Multipliers, system_i_solutions, system_ii_solve, verify_alternative
from .convexity import (
    AlphaGrid,
    ConvexityVerdict,
    TauInterval,
    Verdict,
    is_cone_convex,
    is_convexlike,
    is_preaffine,
    is_preconvexlike,
    tau_interval,
)
from .efficiency import (
    is_scalar_optimal,
    lemma31_check,
    pmax,
    pmin,
    scalarize,
    slater_holds,
    verify_scalarization,
    weakly_efficient,
)
from .errors import *  # noqa: F401,F403
from .fixtures import load_fixture
from .generators import GeneratorConfig, gen_random_instance
from .geometry import (
    ConeFeasibilityProblem,
    PolyhedralCone,
    cone_from_generators,
    cone_nonzero_point,
    contains,
    contains_interior,
    dual_cone,
    orthant,
)
from .instance_io import InstanceFile, parse_instance, parse_instance_file, serialize_instance
from .oracles import brute_oracles
from .saddle import (
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
)
from .setvalued import DomainPoint, FiniteSetMap, ProblemInstance, feasible_set
from .suite import run_suite

__version__ = "0.1.0"
