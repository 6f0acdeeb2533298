"""The two systems of the Farkas-Minkowski alternative and their cross-check."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

from .convexity import AlphaGrid, ConvexityVerdict, is_preaffine, is_preconvexlike
from .geometry import (
    ConeFeasibilityProblem,
    Vector,
    cone_nonzero_point,
    contains_interior,
    dot,
    in_dual,
    is_zero,
    neg,
    sub,
    vec,
    zero,
)
from .setvalued import ProblemInstance, meets_negative_cone


@dataclass(frozen=True)
class Multipliers:
    """Functionals (xi, eta, zeta) on Y, Z and W."""

    xi: Vector
    eta: Vector
    zeta: Vector = ()

    def __post_init__(self):
        for name in ("xi", "eta", "zeta"):
            object.__setattr__(self, name, vec(getattr(self, name)))

    @classmethod
    def split(cls, inst: ProblemInstance, v: Vector) -> "Multipliers":
        a, b = inst.dim_y, inst.dim_y + inst.dim_z
        return cls(v[:a], v[a:b], v[b:])

    def stacked(self) -> Vector:
        return self.xi + self.eta + self.zeta

    def is_zero(self) -> bool:
        return is_zero(self.stacked())

    def to_dict(self) -> dict:
        return {k: [str(a) for a in getattr(self, k)] for k in ("xi", "eta", "zeta")}


def constraint_rows(inst: ProblemInstance, shifts: Optional[Iterable[Vector]] = None) -> list:
    """One row <y - s, xi> + <z, eta> + <w, zeta> per ground label and image choice.

    ``shifts`` subtracts each given vector from the f-values (default: no shift).
    """
    shifts = [zero(inst.dim_y)] if shifts is None else [vec(s) for s in shifts]
    rows = {}
    for x in inst.labels:
        for y in inst.f[x]:
            for s in shifts:
                ys = sub(y, s)
                for z in inst.g[x]:
                    for w in inst.h[x]:
                        rows.setdefault(ys + z + w, None)
    return list(rows)


def dual_rows(inst: ProblemInstance) -> list:
    """Membership rows for xi in Y+* and eta in Z+* over the stacked coordinates."""
    dz, dw = inst.dim_z, inst.dim_w
    rows = [g + zero(dz) + zero(dw) for g in inst.y_cone.generators]
    rows += [zero(inst.dim_y) + g + zero(dw) for g in inst.z_cone.generators]
    return rows


def solve_multiplier_system(inst, rows, require_xi_nonzero: bool) -> Optional[Multipliers]:
    n = inst.dim_y + inst.dim_z + inst.dim_w
    problem = ConeFeasibilityProblem(n, tuple(dual_rows(inst) + list(rows)))
    coords = range(inst.dim_y) if require_xi_nonzero else None
    v = cone_nonzero_point(problem, coords)
    return None if v is None else Multipliers.split(inst, v)


def system_i_solutions(inst: ProblemInstance) -> tuple:
    """Labels x with f(x) meeting -int Y+, g(x) meeting -Z+, and O in h(x)."""
    out = []
    for x in inst.labels:
        if (
            any(contains_interior(inst.y_cone, neg(y)) for y in inst.f[x])
            and meets_negative_cone(inst.z_cone, inst.g[x])
            and zero(inst.dim_w) in inst.h[x]
        ):
            out.append(x)
    return tuple(out)


def system_ii_solve(inst: ProblemInstance, require_xi_nonzero: bool = False) -> Optional[Multipliers]:
    """A nonzero (xi, eta, zeta) in Y+* x Z+* x W* with every constraint row >= 0."""
    return solve_multiplier_system(inst, constraint_rows(inst), require_xi_nonzero)


def multipliers_valid(inst: ProblemInstance, m: Multipliers, shifts=None) -> bool:
    """Re-check a multiplier triple by direct substitution."""
    return (
        in_dual(inst.y_cone, m.xi)
        and in_dual(inst.z_cone, m.eta)
        and all(dot(r, m.stacked()) >= 0 for r in constraint_rows(inst, shifts))
    )


@dataclass
class AlternativeReport:
    system_i_solutions: tuple
    system_ii_solution: Optional[Multipliers]
    xi_nonzero_solution: Optional[Multipliers]
    implication_checks: tuple
    hypotheses: dict = field(default_factory=dict)  # name -> ConvexityVerdict
    hypothesis_violation: bool = False

    @property
    def passed(self) -> bool:
        return all(self.implication_checks)

    def to_dict(self) -> dict:
        return {
            "system_i_solutions": list(self.system_i_solutions),
            "system_ii_solution": _maybe(self.system_ii_solution),
            "xi_nonzero_solution": _maybe(self.xi_nonzero_solution),
            "implication_checks": list(self.implication_checks),
            "hypotheses": {k: v.kind.value for k, v in self.hypotheses.items()},
            "hypothesis_violation": self.hypothesis_violation,
        }


def _maybe(m):
    return None if m is None else m.to_dict()


def check_alternative_hypotheses(inst: ProblemInstance, grid: AlphaGrid = AlphaGrid()) -> dict:
    verdicts: dict[str, ConvexityVerdict] = {
        "f_preconvexlike": is_preconvexlike(inst.f, inst.y_cone, grid),
        "g_preconvexlike": is_preconvexlike(inst.g, inst.z_cone, grid),
        "h_preaffine": is_preaffine(inst.h, grid),
    }
    return verdicts


def verify_alternative(
    inst: ProblemInstance, check_hypotheses: bool = False, grid: AlphaGrid = AlphaGrid()
) -> AlternativeReport:
    """Decide both systems and evaluate the two implications.

    Hypothesis verdicts are only recorded; a refuted hypothesis sets
    ``hypothesis_violation`` but the implications are still computed.
    """
    sols = system_i_solutions(inst)
    ii = system_ii_solve(inst, require_xi_nonzero=False)
    ii_xi = system_ii_solve(inst, require_xi_nonzero=True)
    checks = (bool(sols) or ii is not None, ii_xi is None or not sols)
    report = AlternativeReport(sols, ii, ii_xi, checks)
    if check_hypotheses:
        report.hypotheses = check_alternative_hypotheses(inst, grid)
        report.hypothesis_violation = not all(v.verified for v in report.hypotheses.values())
    return report
