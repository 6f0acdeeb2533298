"""Property suites over generated instances.

Each instance gets a fixed list of named checks, every one ending as
``pass``, ``fail`` or ``skip``. Reports carry no timings and merge in index
order, so the same (seed, family, count, grid) gives byte-identical JSON for
any number of workers.
"""

from __future__ import annotations

import json
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .alternative import verify_alternative
from .convexity import AlphaGrid, is_convexlike, is_preconvexlike
from .efficiency import lemma31_check, pmax, pmin, verify_scalarization
from .errors import ConevexError, OracleDisagreement
from .generators import GeneratorConfig, family_guarantees, gen_random_instance
from .geometry import add, dot, dual_cone, is_pointed, same_cone, scale, zero
from .instance_io import serialize_instance
from .oracles import brute_oracles
from .saddle import verify_scalar_saddle_theorems, verify_vector_saddle_theorems
from .setvalued import ProblemInstance, feasible_set

PASS, FAIL, SKIP = "pass", "fail", "skip"

# embedded oracle: every ORACLE_STRIDE-th instance, with a lighter tau sweep
ORACLE_STRIDE = 10
ORACLE_TAU_SAMPLES = 200


@dataclass
class InstanceResult:
    index: int
    status: str
    checks: dict  # name -> pass/fail/skip
    details: dict = field(default_factory=dict)  # name -> report dict or message
    instance_text: str = ""

    def to_dict(self, full: bool = False) -> dict:
        d = {"index": self.index, "status": self.status, "checks": dict(self.checks)}
        if full:
            d["details"] = self.details
            d["instance"] = self.instance_text
        return d


@dataclass
class SuiteReport:
    family: str
    seed: int
    count: int
    grid: int
    results: list

    def counts(self) -> dict:
        out = {PASS: 0, FAIL: 0, SKIP: 0}
        for r in self.results:
            out[r.status] += 1
        return out

    def check_counts(self) -> dict:
        table = {}
        for r in self.results:
            for name, st in r.checks.items():
                table.setdefault(name, {PASS: 0, FAIL: 0, SKIP: 0})[st] += 1
        return dict(sorted(table.items()))

    @property
    def first_counterexample(self):
        return next((r for r in self.results if r.status == FAIL), None)

    @property
    def passed(self) -> bool:
        return self.counts()[FAIL] == 0

    def to_dict(self) -> dict:
        cx = self.first_counterexample
        return {
            "family": self.family,
            "seed": self.seed,
            "count": self.count,
            "grid": self.grid,
            "counts": self.counts(),
            "checks": self.check_counts(),
            "instances": [r.to_dict() for r in self.results],
            "first_counterexample": None if cx is None else cx.to_dict(full=True),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1, sort_keys=True) + "\n"

    def summary(self) -> str:
        c = self.counts()
        lines = [f"family {self.family} seed {self.seed} count {self.count} grid {self.grid}",
                 f"instances: {c[PASS]} pass, {c[FAIL]} fail, {c[SKIP]} skip"]
        for name, t in self.check_counts().items():
            lines.append(f"  {name:<24} {t[PASS]:>4} pass {t[FAIL]:>4} fail {t[SKIP]:>4} skip")
        cx = self.first_counterexample
        if cx is not None:
            failed = [k for k, v in cx.checks.items() if v == FAIL]
            lines.append(f"first counterexample: instance {cx.index}, failed {', '.join(failed)}")
            lines.append(cx.instance_text.rstrip())
        return "\n".join(lines)


# --- module-local invariants ----------------------------------------------------

def _biduality(inst: ProblemInstance) -> bool:
    return all(same_cone(dual_cone(dual_cone(C)), C) for C in (inst.y_cone, inst.z_cone))


def _interior_positivity(inst: ProblemInstance, rng: random.Random, samples: int = 5) -> bool:
    """<x, xi> > 0 for nonzero xi in C* and x in int C."""
    for C in (inst.y_cone, inst.z_cone):
        for _ in range(samples):
            x = zero(C.ambient_dim)
            for g in C.generators:
                x = add(x, scale(Fraction(rng.randint(1, 5), rng.randint(1, 3)), g))
            weights = [rng.randint(0, 3) for _ in C.facet_normals]
            if not any(weights):
                weights[0] = 1
            xi = zero(C.ambient_dim)
            for w, n in zip(weights, C.facet_normals):
                xi = add(xi, scale(w, n))
            if dot(x, xi) <= 0:
                return False
    return True


def _conjugation(inst: ProblemInstance) -> bool:
    """pmax(A) = -pmin(-A) on every image and on f(X)."""
    sets = [inst.f[x] for x in inst.labels] + [[y for x in inst.labels for y in inst.f[x]]]
    for A in sets:
        negA = [tuple(-a for a in y) for y in A]
        flipped = sorted(tuple(-a for a in y) for y in pmin(negA, inst.y_cone))
        if list(pmax(A, inst.y_cone)) != flipped:
            return False
    return True


def _oracle_applicable(inst: ProblemInstance) -> bool:
    return (max(inst.dim_y, inst.dim_z, inst.dim_w) <= 3 and len(inst.labels) <= 5
            and inst.dim_y + inst.dim_z + inst.dim_w <= 6)


# --- one instance ------------------------------------------------------------------

def _status(flag: bool) -> str:
    return PASS if flag else FAIL


def check_instance(inst: ProblemInstance, family: str, index: int, grid: AlphaGrid) -> InstanceResult:
    checks, details = {}, {}

    def run(name, fn):
        try:
            st, det = fn()
        except OracleDisagreement as e:
            st, det = FAIL, {"error": type(e).__name__, "check": e.check, "detail": str(e.detail)}
        except ConevexError as e:
            st, det = FAIL, {"error": type(e).__name__, "message": str(e)}
        checks[name] = st
        if det is not None:
            details[name] = det

    hypothesis_family = family != "FREE"

    def guarantees():
        if not hypothesis_family:
            return SKIP, None
        failed = family_guarantees(inst, family)
        return _status(not failed), {"failed": failed} if failed else None

    run("family_guarantees", guarantees)

    alt = verify_alternative(inst, check_hypotheses=family == "H1", grid=grid)
    run("alternative_backward", lambda: (_status(alt.implication_checks[1]), None))
    if family == "H1":
        run("alternative_forward", lambda: (_status(alt.implication_checks[0]), alt.to_dict()))

        def h1_hypotheses():
            verdicts = {
                "f_convexlike": is_convexlike(inst.f, inst.y_cone, grid).verified,
                "g_convexlike": is_convexlike(inst.g, inst.z_cone, grid).verified,
                "f_preconvexlike": alt.hypotheses["f_preconvexlike"].verified,
                "g_preconvexlike": alt.hypotheses["g_preconvexlike"].verified,
                "h_preaffine": alt.hypotheses["h_preaffine"].verified,
            }
            return _status(all(verdicts.values())), verdicts

        run("hypotheses", h1_hypotheses)
    else:
        checks["alternative_forward"] = SKIP

    if family == "H2":
        cache = {}

        def scalarization():
            r = cache["r"] = verify_scalarization(inst, check_hypotheses=True, grid=grid)
            return _status(r.passed), r.to_dict()

        def scalarization_hyps():
            r = cache.get("r") or verify_scalarization(inst, check_hypotheses=True, grid=grid)
            return _status(not r.hypothesis_violations), r.hypotheses

        run("scalarization", scalarization)
        run("hypotheses", scalarization_hyps)
    else:
        checks["scalarization"] = SKIP

    if family == "H3":
        def vector():
            r = verify_vector_saddle_theorems(inst)
            return _status(r.passed and not r.hypothesis_violations), r.to_dict()

        def scalar():
            r = verify_scalar_saddle_theorems(inst)
            return _status(r.passed and not r.hypothesis_violations), r.to_dict()

        def h3_hypotheses():
            verdicts = {"f_convexlike": is_convexlike(inst.f, inst.y_cone, grid).verified,
                        "g_preconvexlike": is_preconvexlike(inst.g, inst.z_cone, grid).verified}
            return _status(all(verdicts.values())), verdicts

        run("vector_saddle", vector)
        run("scalar_saddle", scalar)
        run("hypotheses", h3_hypotheses)
    else:
        checks["vector_saddle"] = SKIP
        checks["scalar_saddle"] = SKIP
    checks.setdefault("hypotheses", SKIP)

    rng = random.Random(f"conevex-invariants:{family}:{index}")
    run("biduality", lambda: (_status(_biduality(inst) and all(map(is_pointed, (inst.y_cone, inst.z_cone)))), None))
    run("interior_positivity", lambda: (_status(_interior_positivity(inst, rng)), None))
    run("pmin_pmax_conjugation", lambda: (_status(_conjugation(inst)), None))
    if feasible_set(inst):
        run("efficiency_via_pmin", lambda: (_status(lemma31_check(inst)), None))
    else:
        checks["efficiency_via_pmin"] = SKIP

    if index % ORACLE_STRIDE == 0 and _oracle_applicable(inst):
        run("oracles", lambda: (PASS, brute_oracles(inst, AlphaGrid(2), ORACLE_TAU_SAMPLES).to_dict()))
    else:
        checks["oracles"] = SKIP

    checks = dict(sorted(checks.items()))
    states = set(checks.values())
    status = FAIL if FAIL in states else PASS if PASS in states else SKIP
    return InstanceResult(index, status, checks, details if status == FAIL else {},
                          serialize_instance(inst) if status == FAIL else "")


def _run_one(args) -> InstanceResult:
    cfg, index = args
    try:
        inst = gen_random_instance(cfg, index)
    except ConevexError as e:
        return InstanceResult(index, FAIL, {"generation": FAIL},
                              {"generation": {"error": type(e).__name__, "message": str(e)}})
    return check_instance(inst, cfg.family, index, AlphaGrid(cfg.grid))


def run_suite(cfg: GeneratorConfig, count: int, jobs: int = 1) -> SuiteReport:
    """Generate and check ``count`` instances; results are ordered by index."""
    if count < 1:
        raise ValueError("count must be at least 1")
    tasks = [(cfg, i) for i in range(count)]
    if jobs <= 1:
        results = [_run_one(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_one, tasks, chunksize=max(1, count // (4 * jobs))))
    return SuiteReport(cfg.family, cfg.seed, count, cfg.grid, results)
