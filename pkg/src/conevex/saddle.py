"""Vector and scalar Lagrangian saddle points.

Vector saddle points are decided through the finite conditions (i)-(iii) of
the characterization theorem instead of quantifying over operator space. The
existence direction builds rank-one operators ``S = y0 eta^T``,
``T = y0 zeta^T`` from multipliers of the shifted alternative system.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional

from .alternative import Multipliers, constraint_rows, solve_multiplier_system
from .errors import (
    DimensionMismatch,
    HypothesisViolation,
    InvalidMultipliers,
    NonPositiveOperator,
    NotInterior,
    NotNormalized,
    NotWeaklyEfficient,
)
from .geometry import (
    PolyhedralCone,
    Vector,
    add,
    contains,
    contains_interior,
    dot,
    in_dual,
    interior_point,
    is_zero,
    neg,
    scale,
    sub,
    vec,
    zero,
)
from .efficiency import pmax, pmin, slater_holds, weakly_efficient
from .setvalued import ProblemInstance, feasible_set, point_set
from .simplex import solve_feasibility


@dataclass(frozen=True)
class LinearOperator:
    """A ``rows x cols`` rational matrix acting on column vectors."""

    rows: int
    cols: int
    matrix: tuple

    def __post_init__(self):
        m = tuple(vec(r) for r in self.matrix)
        if len(m) != self.rows or any(len(r) != self.cols for r in m):
            raise DimensionMismatch(f"matrix does not have shape {self.rows}x{self.cols}")
        object.__setattr__(self, "matrix", m)

    @classmethod
    def zero(cls, rows: int, cols: int) -> "LinearOperator":
        return cls(rows, cols, tuple(zero(cols) for _ in range(rows)))

    @classmethod
    def rank_one(cls, y0: Vector, ell: Vector) -> "LinearOperator":
        """The map z -> <z, ell> y0."""
        return cls(len(y0), len(ell), tuple(scale(a, ell) for a in y0))

    def __call__(self, v: Vector) -> Vector:
        if len(v) != self.cols:
            raise DimensionMismatch(f"operator on dimension {self.cols} applied to length {len(v)}")
        return tuple(dot(r, v) for r in self.matrix)

    def columns(self) -> list:
        return [tuple(r[j] for r in self.matrix) for j in range(self.cols)]

    def pullback(self, xi: Vector) -> Vector:
        """The functional xi o S."""
        return tuple(dot(col, xi) for col in self.columns())

    def to_lists(self) -> list:
        return [[str(a) for a in r] for r in self.matrix]


@dataclass(frozen=True)
class OperatorPair:
    S: LinearOperator
    T: LinearOperator

    def to_dict(self) -> dict:
        return {
            "S": {"shape": [self.S.rows, self.S.cols], "matrix": self.S.to_lists()},
            "T": {"shape": [self.T.rows, self.T.cols], "matrix": self.T.to_lists()},
        }


def zero_pair(inst: ProblemInstance) -> OperatorPair:
    return OperatorPair(
        LinearOperator.zero(inst.dim_y, inst.dim_z), LinearOperator.zero(inst.dim_y, inst.dim_w)
    )


def operator_is_positive(S: LinearOperator, z_cone: PolyhedralCone, y_cone: PolyhedralCone) -> bool:
    """S maps every generator of Z+ into Y+."""
    if S.cols != z_cone.ambient_dim or S.rows != y_cone.ambient_dim:
        raise DimensionMismatch("operator shape does not match the cones")
    return all(contains(y_cone, S(g)) for g in z_cone.generators)


def _check_pair(inst: ProblemInstance, pair: OperatorPair):
    if (pair.S.rows, pair.S.cols) != (inst.dim_y, inst.dim_z) or (pair.T.rows, pair.T.cols) != (
        inst.dim_y,
        inst.dim_w,
    ):
        raise DimensionMismatch("operator pair does not fit the instance spaces")


def lagrangian_value(inst: ProblemInstance, x: str, pair: OperatorPair) -> tuple:
    """f(x) + S(g(x)) + T(h(x)) as a point set."""
    _check_pair(inst, pair)
    S, T = pair.S, pair.T
    return point_set(
        add(add(y, S(z)), T(w)) for y in inst.f[x] for z in inst.g[x] for w in inst.h[x]
    )


def lagrangian_union(inst: ProblemInstance, pair: OperatorPair) -> tuple:
    pts = []
    for x in inst.labels:
        pts.extend(lagrangian_value(inst, x, pair))
    return point_set(pts)


@dataclass
class SaddleCheckReport:
    condition_i: bool
    condition_ii: bool
    condition_iii: bool
    ybar: Optional[Vector]
    zbar: Optional[Vector]
    is_saddle: bool

    def to_dict(self) -> dict:
        return {
            "condition_i": self.condition_i,
            "condition_ii": self.condition_ii,
            "condition_iii": self.condition_iii,
            "ybar": None if self.ybar is None else [str(a) for a in self.ybar],
            "zbar": None if self.zbar is None else [str(a) for a in self.zbar],
            "is_saddle": self.is_saddle,
        }


def constraints_active(inst: ProblemInstance, x: str) -> bool:
    """g(x) inside -Z+ and h(x) = {O}."""
    return all(contains(inst.z_cone, neg(z)) for z in inst.g[x]) and inst.h[x] == (zero(inst.dim_w),)


def vector_saddle_check(inst: ProblemInstance, xbar: str, pair: OperatorPair) -> SaddleCheckReport:
    """Decide whether (xbar, S, T) is a vector saddle point via conditions (i)-(iii).

    Candidates (ybar, zbar) are scanned in lexicographic order; the report
    describes the first one meeting all three conditions, or the first
    candidate when none does.
    """
    _check_pair(inst, pair)
    if not operator_is_positive(pair.S, inst.z_cone, inst.y_cone):
        raise NonPositiveOperator("S does not map Z+ into Y+")
    values = lagrangian_union(inst, pair)
    front = set(pmin(values, inst.y_cone))
    cond_ii = constraints_active(inst, xbar)
    first = None
    for ybar in inst.f[xbar]:
        cond_i = ybar in front
        for zbar in inst.g[xbar]:
            shift = add(ybar, pair.S(zbar))
            cond_iii = not any(contains_interior(inst.y_cone, sub(y, shift)) for y in inst.f[xbar])
            report = SaddleCheckReport(cond_i, cond_ii, cond_iii, ybar, zbar, cond_i and cond_ii and cond_iii)
            if report.is_saddle:
                return report
            if first is None:
                first = report
    return first


def construct_saddle_operators(inst: ProblemInstance, m: Multipliers, y0: Vector) -> OperatorPair:
    """Rank-one operators S(z) = eta(z) y0 and T(w) = zeta(w) y0."""
    y0 = vec(y0)
    if not contains_interior(inst.y_cone, y0):
        raise NotInterior("y0 must be interior to Y+")
    if dot(y0, m.xi) != 1:
        raise NotNormalized("xi(y0) must equal 1")
    return OperatorPair(LinearOperator.rank_one(y0, m.eta), LinearOperator.rank_one(y0, m.zeta))


def normalized_interior_point(inst: ProblemInstance, xi: Vector) -> Vector:
    """The sum of the generators of Y+, rescaled so that xi(y0) = 1."""
    y0 = interior_point(inst.y_cone)
    v = dot(y0, xi)
    if v <= 0:
        raise NotNormalized("xi vanishes on the interior point; xi is not a nonzero dual element")
    return scale(1 / v, y0)


def _fixed_xi_multipliers(inst: ProblemInstance, xi: Vector, shifts) -> Optional[Multipliers]:
    """Solve for (eta, zeta) with xi held fixed (an inhomogeneous LP)."""
    dy, dz, dw = inst.dim_y, inst.dim_z, inst.dim_w
    rows, rhs = [], []
    for g in inst.z_cone.generators:
        rows.append(g + zero(dw))
        rhs.append(Fraction(0))
    for r in constraint_rows(inst, shifts):
        rows.append(r[dy:])
        rhs.append(-dot(r[:dy], xi))
    sol = solve_feasibility(rows, rhs, dz + dw)
    if sol is None:
        return None
    return Multipliers(xi, sol[:dz], sol[dz:])


def shifted_multipliers(inst: ProblemInstance, shifts: Iterable[Vector]) -> Optional[Multipliers]:
    """Multipliers with xi != 0 for the alternative system on f(x) - s, s in shifts.

    The generators of Y+* are tried first as xi; otherwise the homogeneous
    system is solved with the direction scan restricted to xi.
    """
    shifts = [vec(s) for s in shifts]
    for xi in inst.y_cone.facet_normals:
        m = _fixed_xi_multipliers(inst, xi, shifts)
        if m is not None:
            return m
    return solve_multiplier_system(inst, constraint_rows(inst, shifts), require_xi_nonzero=True)


def zero_in_image(S: LinearOperator, points) -> bool:
    return any(is_zero(S(z)) for z in points)


@dataclass
class VectorConstruction:
    label: str
    ybar: Vector
    multipliers: Multipliers
    pair: OperatorPair
    saddle: SaddleCheckReport
    zero_in_Sg: bool

    @property
    def ok(self) -> bool:
        return self.saddle.is_saddle and self.zero_in_Sg

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "ybar": [str(a) for a in self.ybar],
            "multipliers": self.multipliers.to_dict(),
            "operators": self.pair.to_dict(),
            "saddle": self.saddle.to_dict(),
            "zero_in_Sg": self.zero_in_Sg,
            "ok": self.ok,
        }


def saddle_candidates(inst: ProblemInstance, xbar: str) -> list:
    """ybar in f(xbar) witnessing weak efficiency and maximal in f(xbar)."""
    if not feasible_set(inst):
        raise NotWeaklyEfficient(f"{xbar!r} is not weakly efficient")
    witnesses = [w.ybar for w in weakly_efficient(inst) if w.label == xbar]
    if not witnesses:
        raise NotWeaklyEfficient(f"{xbar!r} is not weakly efficient")
    if not constraints_active(inst, xbar):
        raise HypothesisViolation(f"g({xbar}) is not inside -Z+ or h({xbar}) != {{O}}")
    tops = set(pmax(inst.f[xbar], inst.y_cone))
    out = [y for y in witnesses if y in tops]
    if not out:
        raise HypothesisViolation(f"no witness of {xbar!r} is maximal in f({xbar})")
    return out


def construct_vector_saddle(inst: ProblemInstance, xbar: str) -> Optional[VectorConstruction]:
    """Existence direction: build (S, T) making xbar a vector saddle point with O in S(g(xbar)).

    Raises HypothesisViolation when no ybar is both a weak-efficiency witness
    and Pmax-maximal in f(xbar); returns None when no multipliers exist.
    """
    for ybar in saddle_candidates(inst, xbar):
        m = shifted_multipliers(inst, [ybar])
        if m is None:
            continue
        y0 = normalized_interior_point(inst, m.xi)
        pair = construct_saddle_operators(inst, m, y0)
        report = vector_saddle_check(inst, xbar, pair)
        return VectorConstruction(xbar, ybar, m, pair, report, zero_in_image(pair.S, inst.g[xbar]))
    return None


def candidate_pairs(inst: ProblemInstance) -> list:
    """Zero pair plus rank-one positive pairs y0 eta^T for eta among the generators of Z+*."""
    y0 = interior_point(inst.y_cone)
    pairs = [("zero", zero_pair(inst))]
    for k, eta in enumerate(inst.z_cone.facet_normals):
        S = LinearOperator.rank_one(y0, eta)
        pairs.append((f"rank_one_{k}", OperatorPair(S, LinearOperator.zero(inst.dim_y, inst.dim_w))))
    return pairs


@dataclass
class VectorSaddleReport:
    constructions: dict = field(default_factory=dict)  # label -> VectorConstruction | None
    skipped: list = field(default_factory=list)
    backward: list = field(default_factory=list)  # (label, pair name, is weakly efficient)
    hypothesis_violations: list = field(default_factory=list)

    @property
    def forward_ok(self) -> bool:
        return all(c is not None and c.ok for c in self.constructions.values())

    @property
    def backward_ok(self) -> bool:
        return all(ok for _, _, ok in self.backward)

    @property
    def passed(self) -> bool:
        return self.forward_ok and self.backward_ok

    def to_dict(self) -> dict:
        return {
            "constructions": {k: (None if v is None else v.to_dict()) for k, v in self.constructions.items()},
            "skipped": list(self.skipped),
            "backward": [list(b) for b in self.backward],
            "hypothesis_violations": list(self.hypothesis_violations),
            "forward_ok": self.forward_ok,
            "backward_ok": self.backward_ok,
        }


def _efficient_labels_or_empty(inst):
    if not feasible_set(inst):
        return ()
    seen = []
    for w in weakly_efficient(inst):
        if w.label not in seen:
            seen.append(w.label)
    return tuple(seen)


def verify_vector_saddle_theorems(inst: ProblemInstance) -> VectorSaddleReport:
    """Check construction (existence) and saddle => efficiency on one instance."""

    report = VectorSaddleReport()
    if inst.dim_w != 0:
        report.hypothesis_violations.append("dim_w_zero")
    if not slater_holds(inst):
        report.hypothesis_violations.append("slater")
    efficient = _efficient_labels_or_empty(inst)

    for x in efficient:
        try:
            report.constructions[x] = construct_vector_saddle(inst, x)
        except HypothesisViolation:
            report.skipped.append(x)

    found = [(x, "constructed", c.pair) for x, c in report.constructions.items() if c is not None]
    for name, pair in candidate_pairs(inst):
        found.extend((x, name, pair) for x in inst.labels)
    for x, name, pair in found:
        if vector_saddle_check(inst, x, pair).is_saddle and zero_in_image(pair.S, inst.g[x]):
            report.backward.append((x, name, x in efficient))
    return report


# --- scalar Lagrangian -------------------------------------------------------

def scalar_lagrangian(inst: ProblemInstance, xi: Vector, x: str, eta: Vector, zeta: Vector = ()) -> tuple:
    """{<y, xi> + <z, eta> + <w, zeta>} over the images at x."""
    xi, eta, zeta = vec(xi), vec(eta), vec(zeta)
    if len(xi) != inst.dim_y or len(eta) != inst.dim_z or len(zeta) != inst.dim_w:
        raise DimensionMismatch("multipliers do not fit the instance spaces")
    return tuple(sorted({
        dot(y, xi) + dot(z, eta) + dot(w, zeta)
        for y in inst.f[x] for z in inst.g[x] for w in inst.h[x]
    }))


@dataclass
class ScalarSaddleReport:
    g_in_negative_cone: bool
    h_is_origin: bool
    eta_g_zero: bool
    zeta_h_zero: bool
    xi_constant_on_image: bool
    left_holds: bool
    right_holds: bool
    value: tuple
    min_over_feasible: Optional[Fraction]

    @property
    def is_saddle(self) -> bool:
        return self.left_holds and self.right_holds

    def to_dict(self) -> dict:
        return {
            "g_in_negative_cone": self.g_in_negative_cone,
            "h_is_origin": self.h_is_origin,
            "eta_g_zero": self.eta_g_zero,
            "zeta_h_zero": self.zeta_h_zero,
            "xi_constant_on_image": self.xi_constant_on_image,
            "left_holds": self.left_holds,
            "right_holds": self.right_holds,
            "value": [str(a) for a in self.value],
            "min_over_feasible": None if self.min_over_feasible is None else str(self.min_over_feasible),
            "is_saddle": self.is_saddle,
        }


def scalar_saddle_check(inst: ProblemInstance, xi: Vector, xbar: str, eta: Vector, zeta: Vector = None) -> ScalarSaddleReport:
    """Decide l(xbar, eta, zeta) <= l(xbar, eta_bar, zeta_bar) <= l(x, eta_bar, zeta_bar).

    Set inequalities compare max of the left set with min of the right set.
    The left inequality ranges over all of Z+* x W*; it holds exactly when
    g(xbar) lies in -Z+, h(xbar) = {O}, eta_bar vanishes on g(xbar) and xi is
    constant on f(xbar). The right inequality ranges over feasible x.
    """
    xi, eta = vec(xi), vec(eta)
    zeta = zero(inst.dim_w) if zeta is None else vec(zeta)
    if is_zero(xi) or len(xi) != inst.dim_y or not in_dual(inst.y_cone, xi):
        raise InvalidMultipliers("xi must be a nonzero element of Y+*")
    if len(eta) != inst.dim_z or not in_dual(inst.z_cone, eta):
        raise InvalidMultipliers("eta must lie in Z+*")
    if len(zeta) != inst.dim_w:
        raise InvalidMultipliers("zeta has the wrong dimension")

    g_neg = all(contains(inst.z_cone, neg(z)) for z in inst.g[xbar])
    h_origin = inst.h[xbar] == (zero(inst.dim_w),)
    eta_zero = all(dot(z, eta) == 0 for z in inst.g[xbar])
    zeta_zero = all(dot(w, zeta) == 0 for w in inst.h[xbar])
    xi_vals = {dot(y, xi) for y in inst.f[xbar]}
    xi_const = len(xi_vals) == 1
    left = g_neg and h_origin and eta_zero and xi_const

    value = scalar_lagrangian(inst, xi, xbar, eta, zeta)
    D = feasible_set(inst)
    low = min((v for x in D for v in scalar_lagrangian(inst, xi, x, eta, zeta)), default=None)
    right = low is not None and max(value) <= low
    return ScalarSaddleReport(g_neg, h_origin, eta_zero, zeta_zero, xi_const, left, right, value, low)


def construct_scalar_multipliers(inst: ProblemInstance, xbar: str) -> Optional[Multipliers]:
    """Existence direction for scalar saddle points: eta_bar = xi o S, zeta_bar = xi o T.

    The multipliers come from the alternative system shifted by every point of
    f(xbar), so that xi(f(xbar)) is dominated on the whole image.
    """
    efficient = _efficient_labels_or_empty(inst)
    if xbar not in efficient:
        raise NotWeaklyEfficient(f"{xbar!r} is not weakly efficient")
    if not constraints_active(inst, xbar):
        raise HypothesisViolation(f"g({xbar}) is not inside -Z+ or h({xbar}) != {{O}}")
    m = shifted_multipliers(inst, inst.f[xbar])
    if m is None:
        return None
    y0 = normalized_interior_point(inst, m.xi)
    pair = construct_saddle_operators(inst, m, y0)
    out = Multipliers(m.xi, pair.S.pullback(m.xi), pair.T.pullback(m.xi))
    if not scalar_saddle_check(inst, out.xi, xbar, out.eta, out.zeta).is_saddle:
        return None
    return out


@dataclass
class ScalarSaddleTheoremReport:
    constructions: dict = field(default_factory=dict)  # label -> Multipliers | None
    skipped: list = field(default_factory=list)
    backward: list = field(default_factory=list)  # (label, source, efficient, eta_g_zero, zeta_h_zero)
    hypothesis_violations: list = field(default_factory=list)

    @property
    def forward_ok(self) -> bool:
        return all(m is not None for m in self.constructions.values())

    @property
    def backward_ok(self) -> bool:
        return all(e and a and b for _, _, e, a, b in self.backward)

    @property
    def passed(self) -> bool:
        return self.forward_ok and self.backward_ok

    def to_dict(self) -> dict:
        return {
            "constructions": {k: (None if v is None else v.to_dict()) for k, v in self.constructions.items()},
            "skipped": list(self.skipped),
            "backward": [list(b) for b in self.backward],
            "hypothesis_violations": list(self.hypothesis_violations),
            "forward_ok": self.forward_ok,
            "backward_ok": self.backward_ok,
        }


def verify_scalar_saddle_theorems(inst: ProblemInstance) -> ScalarSaddleTheoremReport:

    report = ScalarSaddleTheoremReport()
    if inst.dim_w != 0:
        report.hypothesis_violations.append("dim_w_zero")
    if not slater_holds(inst):
        report.hypothesis_violations.append("slater")
    efficient = _efficient_labels_or_empty(inst)
    for x in efficient:
        if not constraints_active(inst, x):
            report.skipped.append(x)
            continue
        report.constructions[x] = construct_scalar_multipliers(inst, x)

    triples = [(x, "constructed", m) for x, m in report.constructions.items() if m is not None]
    etas = [zero(inst.dim_z)] + list(inst.z_cone.facet_normals)
    for xi in inst.y_cone.facet_normals:
        for eta in etas:
            m = Multipliers(xi, eta, zero(inst.dim_w))
            triples.extend((x, "generators", m) for x in inst.labels)
    for x, source, m in triples:
        r = scalar_saddle_check(inst, m.xi, x, m.eta, m.zeta)
        if r.is_saddle:
            report.backward.append((x, source, x in efficient, r.eta_g_zero, r.zeta_h_zero))
    return report


__all__ = [
    "LinearOperator",
    "OperatorPair",
    "SaddleCheckReport",
    "ScalarSaddleReport",
    "construct_saddle_operators",
    "construct_scalar_multipliers",
    "construct_vector_saddle",
    "lagrangian_value",
    "operator_is_positive",
    "scalar_lagrangian",
    "scalar_saddle_check",
    "vector_saddle_check",
    "verify_scalar_saddle_theorems",
    "verify_vector_saddle_theorems",
    "zero_pair",
]
