"""Weak efficiency, Pmin/Pmax, the Slater condition and linear scalarization."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .convexity import AlphaGrid, is_convexlike, is_preconvexlike
from .errors import EmptyFeasibleSet, InfeasibleLabel, ZeroFunctional
from .geometry import (
    ConeFeasibilityProblem,
    PolyhedralCone,
    Vector,
    cone_nonzero_point,
    contains_interior,
    dot,
    in_dual,
    is_zero,
    sub,
    vec,
    zero,
)
from .setvalued import ProblemInstance, feasible_set, image_union, point_set


def pmin(A, C: PolyhedralCone) -> tuple:
    """Points y of A with no a in A such that y - a is interior to C."""
    A = point_set(A)
    return tuple(y for y in A if not any(contains_interior(C, sub(y, a)) for a in A))


def pmax(A, C: PolyhedralCone) -> tuple:
    A = point_set(A)
    return tuple(y for y in A if not any(contains_interior(C, sub(a, y)) for a in A))


@dataclass(frozen=True)
class EfficiencyWitness:
    label: str
    ybar: Vector


@dataclass(frozen=True)
class ScalarizationCertificate:
    xi: Vector
    label: str
    ybar: Vector

    def to_dict(self) -> dict:
        return {
            "xi": [str(a) for a in self.xi],
            "label": self.label,
            "ybar": [str(a) for a in self.ybar],
        }


def _feasible_or_raise(inst: ProblemInstance) -> tuple:
    D = feasible_set(inst)
    if not D:
        raise EmptyFeasibleSet("the feasible set is empty")
    return D


def weakly_efficient(inst: ProblemInstance) -> tuple:
    """All (label, ybar) with ybar in f(label) not strictly dominated on f(D)."""
    D = _feasible_or_raise(inst)
    values = image_union(inst.f, D)
    out = []
    for x in D:
        for ybar in inst.f[x]:
            if not any(contains_interior(inst.y_cone, sub(ybar, y)) for y in values):
                out.append(EfficiencyWitness(x, ybar))
    return tuple(out)


def weakly_efficient_labels(inst: ProblemInstance) -> tuple:
    seen = []
    for w in weakly_efficient(inst):
        if w.label not in seen:
            seen.append(w.label)
    return tuple(seen)


def lemma31_check(inst: ProblemInstance) -> bool:
    """Cross-validate weak efficiency against the Pmin characterization."""
    D = _feasible_or_raise(inst)
    front = set(pmin(image_union(inst.f, D), inst.y_cone))
    via_pmin = {x for x in D if front.intersection(inst.f[x])}
    return via_pmin == set(weakly_efficient_labels(inst))


def is_scalar_optimal(inst: ProblemInstance, xi: Vector, xbar: str) -> Optional[Vector]:
    """The xi-minimal point of f(xbar) if it minimizes xi over all of f(D), else None."""
    xi = vec(xi)
    if is_zero(xi):
        raise ZeroFunctional("xi must be nonzero")
    D = feasible_set(inst)
    if xbar not in D:
        raise InfeasibleLabel(f"{xbar!r} is not feasible")
    ybar = min(inst.f[xbar], key=lambda y: (dot(y, xi), y))
    best = dot(ybar, xi)
    if all(dot(y, xi) >= best for x in D for y in inst.f[x]):
        return ybar
    return None


def slater_holds(inst: ProblemInstance) -> bool:
    """No nonzero (eta, zeta) in Z+* x W* keeps every <z, eta> + <w, zeta> >= 0 on the ground domain."""
    dz, dw = inst.dim_z, inst.dim_w
    rows = [g + zero(dw) for g in inst.z_cone.generators]
    for x in inst.labels:
        for z in inst.g[x]:
            for w in inst.h[x]:
                rows.append(z + w)
    return cone_nonzero_point(ConeFeasibilityProblem(dz + dw, tuple(rows))) is None


def _certifies(inst, xi, xbar, ybar, D) -> bool:
    v = dot(ybar, xi)
    return all(dot(y, xi) >= v for x in D for y in inst.f[x])


def scalarize(inst: ProblemInstance, xbar: str) -> Optional[ScalarizationCertificate]:
    """Find xi in Y+* \\ {0} for which xbar solves min over D of xi(f(x)).

    For each ybar in pmin(f(xbar)), the generators of Y+* are tried first,
    then the homogeneous system {xi in Y+*, <y - ybar, xi> >= 0} is solved.
    """
    D = feasible_set(inst)
    if xbar not in D:
        raise InfeasibleLabel(f"{xbar!r} is not feasible")
    values = image_union(inst.f, D)
    dual_gens = inst.y_cone.facet_normals
    for ybar in pmin(inst.f[xbar], inst.y_cone):
        for xi in dual_gens:
            if _certifies(inst, xi, xbar, ybar, D):
                return ScalarizationCertificate(xi, xbar, ybar)
        rows = list(inst.y_cone.generators) + [sub(y, ybar) for y in values]
        xi = cone_nonzero_point(ConeFeasibilityProblem(inst.dim_y, tuple(rows)))
        if xi is not None and _certifies(inst, xi, xbar, ybar, D):
            return ScalarizationCertificate(xi, xbar, ybar)
    return None


def certificate_valid(inst: ProblemInstance, cert: ScalarizationCertificate) -> bool:
    """Direct substitution: xi in Y+* \\ {0}, ybar in f(label), ybar xi-minimal on f(D)."""
    D = feasible_set(inst)
    return (
        not is_zero(cert.xi)
        and in_dual(inst.y_cone, cert.xi)
        and cert.label in D
        and cert.ybar in inst.f[cert.label]
        and _certifies(inst, cert.xi, cert.label, cert.ybar, D)
    )


@dataclass
class ScalarizationReport:
    efficient_labels: tuple
    certified_labels: tuple
    certificates: dict = field(default_factory=dict)
    certificates_valid: bool = True
    hypotheses: dict = field(default_factory=dict)
    hypothesis_violations: list = field(default_factory=list)

    @property
    def equal(self) -> bool:
        return set(self.efficient_labels) == set(self.certified_labels)

    @property
    def passed(self) -> bool:
        return self.equal and self.certificates_valid

    def to_dict(self) -> dict:
        return {
            "efficient_labels": list(self.efficient_labels),
            "certified_labels": list(self.certified_labels),
            "certificates": {k: v.to_dict() for k, v in self.certificates.items()},
            "certificates_valid": self.certificates_valid,
            "equal": self.equal,
            "hypotheses": dict(self.hypotheses),
            "hypothesis_violations": list(self.hypothesis_violations),
        }


def scalarization_hypotheses(inst: ProblemInstance, grid: AlphaGrid = AlphaGrid()) -> dict:
    """Grid checks of the hypotheses under which scalarization is exact.

    f convexlike makes every translate f - ybar convexlike, hence preconvexlike,
    which is what the multiplier argument needs for each candidate ybar.
    """
    return {
        "slater": slater_holds(inst),
        "dim_w_zero": inst.dim_w == 0,
        "f_convexlike": is_convexlike(inst.f, inst.y_cone, grid).verified,
        "g_preconvexlike": is_preconvexlike(inst.g, inst.z_cone, grid).verified,
    }


def verify_scalarization(
    inst: ProblemInstance, check_hypotheses: bool = True, grid: AlphaGrid = AlphaGrid()
) -> ScalarizationReport:
    """Compare weakly efficient labels with scalarization-certifiable labels."""
    D = _feasible_or_raise(inst)
    eff = weakly_efficient_labels(inst)
    certs = {}
    for x in D:
        cert = scalarize(inst, x)
        if cert is not None:
            certs[x] = cert
    report = ScalarizationReport(eff, tuple(certs), certs)
    report.certificates_valid = all(certificate_valid(inst, c) for c in certs.values())
    if check_hypotheses:
        report.hypotheses = scalarization_hypotheses(inst, grid)
        report.hypothesis_violations = [k for k, ok in report.hypotheses.items() if not ok]
    return report


__all__ = [
    "EfficiencyWitness",
    "ScalarizationCertificate",
    "ScalarizationReport",
    "certificate_valid",
    "is_scalar_optimal",
    "lemma31_check",
    "pmax",
    "pmin",
    "scalarize",
    "slater_holds",
    "verify_scalarization",
    "weakly_efficient",
    "weakly_efficient_labels",
]
