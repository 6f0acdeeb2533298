"""Brute-force reimplementations used to cross-check the main code paths.

Nothing here calls into geometry's Fourier-Motzkin facets or the simplex
solver. Cones are described by facets found through generator-subset
enumeration, and the multiplier system is decided by a double-description
ray enumeration. Everything stays exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, combinations_with_replacement
from math import gcd, lcm

from .alternative import constraint_rows, multipliers_valid, system_ii_solve
from .convexity import AlphaGrid, tau_interval
from .efficiency import pmax, pmin, weakly_efficient
from .errors import EmptyFeasibleSet, OracleDisagreement
from .setvalued import ProblemInstance, combine


# --- small exact linear algebra ------------------------------------------------

def _rref(rows, ncols):
    m = [list(map(Fraction, r)) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        lead = m[r][c]
        m[r] = [a / lead for a in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                k = m[i][c]
                m[i] = [a - k * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def _rank(rows, ncols) -> int:
    return len(_rref(rows, ncols)[1]) if rows else 0


def _nullspace(rows, ncols) -> list:
    if not rows:
        return [tuple(Fraction(int(i == j)) for j in range(ncols)) for i in range(ncols)]
    m, pivots = _rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fcol in free:
        v = [Fraction(0)] * ncols
        v[fcol] = Fraction(1)
        for row, pc in zip(m, pivots):
            v[pc] = -row[fcol]
        basis.append(tuple(v))
    return basis


def _primitive(v) -> tuple:
    den = lcm(*(a.denominator for a in v)) if v else 1
    ints = [int(a * den) for a in v]
    g = gcd(*ints) if ints else 0
    return tuple(Fraction(a // g) for a in ints) if g else tuple(Fraction(0) for _ in v)


def _dot(u, v):
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


# --- cones by generator subsets --------------------------------------------------

def brute_facets(n: int, generators) -> list:
    """Facet normals of a full-dimensional cone: normals of (n-1)-subsets of
    generators that leave every generator on one side."""
    gens = [tuple(map(Fraction, g)) for g in generators]
    if n == 0:
        return []
    if n == 1:
        signs = {g[0] > 0 for g in gens}
        return [(Fraction(1),)] if signs == {True} else [(Fraction(-1),)] if signs == {False} else []
    found = set()
    for sub in combinations(gens, n - 1):
        ns = _nullspace(list(sub), n)
        if len(ns) != 1:
            continue
        u = _primitive(ns[0])
        vals = [_dot(u, g) for g in gens]
        if all(v >= 0 for v in vals):
            found.add(u)
        elif all(v <= 0 for v in vals):
            found.add(tuple(-a for a in u))
    return sorted(found)


class BruteCone:
    def __init__(self, n, generators):
        self.n = n
        self.facets = brute_facets(n, generators)

    def contains(self, v) -> bool:
        return all(_dot(u, v) >= 0 for u in self.facets)

    def interior(self, v) -> bool:
        return all(_dot(u, v) > 0 for u in self.facets)


def _minus(u, v):
    return tuple(a - b for a, b in zip(u, v))


# --- the four oracles ------------------------------------------------------------

def oracle_pmin(points, cone: BruteCone) -> list:
    pts = sorted(set(points))
    out = []
    for y in pts:
        dominated = False
        for a in pts:
            if cone.interior(_minus(y, a)):
                dominated = True
        if not dominated:
            out.append(y)
    return out


def oracle_pmax(points, cone: BruteCone) -> list:
    pts = sorted(set(points))
    return [y for y in pts if not any(cone.interior(_minus(a, y)) for a in pts)]


def oracle_weakly_efficient(inst: ProblemInstance) -> list:
    """Pairs (label, ybar) with label feasible and (f(D) - ybar) missing -int Y+."""
    Y = BruteCone(inst.dim_y, inst.y_cone.generators)
    Z = BruteCone(inst.dim_z, inst.z_cone.generators)
    origin = tuple(Fraction(0) for _ in range(inst.dim_w))
    D = [x for x in inst.labels
         if any(Z.contains(tuple(-a for a in z)) for z in inst.g[x]) and origin in inst.h[x]]
    values = [y for x in D for y in inst.f[x]]
    out = []
    for x in D:
        for ybar in inst.f[x]:
            if not any(Y.interior(tuple(-a for a in _minus(y, ybar))) for y in values):
                out.append((x, ybar))
    return out


def _tau_samples(A, S, facets, intervals, count: int) -> set:
    """Breakpoints, points just beside them, midpoints and a uniform sweep,
    as integer pairs (p, q) meaning p/q."""
    marks = {Fraction(0)}
    for iv in intervals:
        marks.add(iv.lo)
        if iv.hi is not None:
            marks.add(iv.hi)
    for a in A:
        for s in S:
            for u in facets:
                d = _dot(u, s)
                if d != 0:
                    marks.add(_dot(u, a) / d)
    marks = sorted(m for m in marks if m >= 0)
    taus = set()
    for m in marks:
        for eps in (Fraction(1, 10**6), Fraction(1, 1000)):
            taus.update((m - eps, m + eps))
        taus.add(m)
    taus.update((p + q) / 2 for p, q in zip(marks, marks[1:]))
    out = {(t.numerator, t.denominator) for t in taus if t > 0}
    top = 2 * marks[-1] + 1
    out.update((top.numerator * k, top.denominator * count) for k in range(1, count + 1))
    return out


def _covered_at(A_int, S_int, p, q) -> bool:
    return all(
        any(all(q * c - p * d >= 0 for c, d in zip(ca, ds)) for ds in S_int)
        for ca in A_int
    )


def _in_intervals(bounds, p, q) -> bool:
    for (ln, ld, lc), hi in bounds:
        # compare p/q with ln/ld without building Fractions
        left = p * ld - ln * q
        if left < 0 or (left == 0 and not lc):
            continue
        if hi is None:
            return True
        hn, hd, hc = hi
        right = hn * q - p * hd
        if right > 0 or (right == 0 and hc):
            return True
    return False


def _integer_evals(points, facets):
    rows = [[_dot(u, p) for u in facets] for p in points]
    den = lcm(*(v.denominator for r in rows for v in r)) if rows and rows[0] else 1
    return [[int(v * den) for v in r] for r in rows], den


def oracle_tau_check(A, S, cone_gens, n, intervals, count: int = 1000):
    """Smallest sampled tau where direct containment and the interval answer differ, else None."""
    facets = brute_facets(n, cone_gens)
    A_int, da = _integer_evals(A, facets)
    S_int, ds = _integer_evals(S, facets)
    # c/da - tau * d/ds >= 0  <=>  c*ds - tau * d*da >= 0
    A_sc = [[c * ds for c in r] for r in A_int]
    S_sc = [[d * da for d in r] for r in S_int]
    bounds = [
        ((iv.lo.numerator, iv.lo.denominator, iv.lo_closed),
         None if iv.hi is None else (iv.hi.numerator, iv.hi.denominator, iv.hi_closed))
        for iv in intervals
    ]
    bad = [Fraction(p, q) for p, q in _tau_samples(A, S, facets, intervals, count)
           if _covered_at(A_sc, S_sc, p, q) != _in_intervals(bounds, p, q)]
    return min(bad) if bad else None


class _RayEnumeration:
    """Extreme rays of the pointed cone {v : R v >= 0} by double description."""

    def __init__(self, rows, n):
        self.n = n
        rows = [tuple(map(Fraction, r)) for r in rows]
        # pick n independent rows greedily
        basis, rest = [], []
        for r in rows:
            if len(basis) < n and _rank(basis + [r], n) == len(basis) + 1:
                basis.append(r)
            else:
                rest.append(r)
        self.pointed = len(basis) == n
        if not self.pointed:
            return
        # rays of {B v >= 0} are the columns of B^-1
        inv = self._inverse(basis)
        self.rays = [tuple(inv[i][j] for i in range(n)) for j in range(n)]
        self.done = list(basis)
        for r in rest:
            self._add_row(r)

    def _inverse(self, B):
        n = self.n
        aug = [list(B[i]) + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        m, _ = _rref(aug, 2 * n)
        return [row[n:] for row in m]

    def _zeros(self, ray):
        return frozenset(i for i, r in enumerate(self.done) if _dot(r, ray) == 0)

    def _add_row(self, row):
        pos, zer, neg = [], [], []
        for ray in self.rays:
            v = _dot(row, ray)
            (pos if v > 0 else neg if v < 0 else zer).append((ray, v))
        new = [r for r, _ in pos] + [r for r, _ in zer]
        zsets = {r: self._zeros(r) for r in self.rays}
        for rp, vp in pos:
            for rn, vn in neg:
                common = zsets[rp] & zsets[rn]
                if len(common) < self.n - 2:
                    continue
                if any(r not in (rp, rn) and common <= zsets[r] for r in self.rays):
                    continue
                combo = tuple(vp * b - vn * a for a, b in zip(rp, rn))
                new.append(_primitive(combo))
        self.done.append(row)
        self.rays = sorted(set(_primitive(r) for r in new))


def oracle_system_ii(inst: ProblemInstance) -> tuple:
    """(nonzero solution exists, solution with xi != 0 exists) by ray enumeration."""
    dy, dz, dw = inst.dim_y, inst.dim_z, inst.dim_w
    n = dy + dz + dw
    zero_z, zero_w = (Fraction(0),) * dz, (Fraction(0),) * dw
    # xi in Y+* means <xi, g> >= 0 on Y+ generators
    rows = [tuple(g) + zero_z + zero_w for g in inst.y_cone.generators]
    rows += [(Fraction(0),) * dy + tuple(g) + zero_w for g in inst.z_cone.generators]
    rows += [tuple(r) for r in constraint_rows(inst)]
    lineality = _nullspace(rows, n)
    if lineality:
        if any(any(v[:dy]) for v in lineality):
            return True, True
        rows = rows + [tuple(v) for v in lineality] + [tuple(-a for a in v) for v in lineality]
        rays = _RayEnumeration(rows, n).rays
        return True, any(any(r[:dy]) for r in rays)
    rays = _RayEnumeration(rows, n).rays
    return bool(rays), any(any(r[:dy]) for r in rays)


# --- report ------------------------------------------------------------------------

@dataclass
class OracleReport:
    checks: dict = field(default_factory=dict)  # name -> number of comparisons made

    def to_dict(self) -> dict:
        return {"agree": True, "checks": dict(self.checks)}


def _fail(check, detail, inst):
    from .instance_io import serialize_instance

    raise OracleDisagreement(check, detail, serialize_instance(inst))


def brute_oracles(inst: ProblemInstance, grid: AlphaGrid = AlphaGrid(2), tau_samples: int = 1000) -> OracleReport:
    """Compare the main implementation with the brute versions on one instance.

    Raises OracleDisagreement carrying the serialized instance on the first mismatch.
    """
    report = OracleReport()
    Y = BruteCone(inst.dim_y, inst.y_cone.generators)

    n = 0
    for x in inst.labels:
        if list(pmin(inst.f[x], inst.y_cone)) != oracle_pmin(inst.f[x], Y):
            _fail("pmin", f"f({x})", inst)
        if list(pmax(inst.f[x], inst.y_cone)) != oracle_pmax(inst.f[x], Y):
            _fail("pmax", f"f({x})", inst)
        n += 2
    allf = [y for x in inst.labels for y in inst.f[x]]
    if list(pmin(allf, inst.y_cone)) != oracle_pmin(allf, Y):
        _fail("pmin", "f(X)", inst)
    report.checks["pmin_pmax"] = n + 1

    try:
        main = [(w.label, w.ybar) for w in weakly_efficient(inst)]
    except EmptyFeasibleSet:
        main = []
    if sorted(main) != sorted(oracle_weakly_efficient(inst)):
        _fail("weak_efficiency", f"main {sorted(main)}", inst)
    report.checks["weak_efficiency"] = 1

    n = 0
    labels = sorted(inst.labels)
    for x1, x2 in combinations_with_replacement(labels, 2):
        for alpha in grid.samples:
            A = combine(inst.f, x1, x2, alpha)
            for x3 in labels:
                ivs = tau_interval(A, inst.f[x3], inst.y_cone)
                bad = oracle_tau_check(A, inst.f[x3], inst.y_cone.generators, inst.dim_y, ivs, tau_samples)
                if bad is not None:
                    _fail("tau_interval", f"cell ({x1},{x2},{alpha}) x3={x3} tau={bad}", inst)
                n += 1
    report.checks["tau_interval"] = n

    exists, xi_exists = oracle_system_ii(inst)
    for flag, want in ((False, exists), (True, xi_exists)):
        m = system_ii_solve(inst, require_xi_nonzero=flag)
        if (m is not None) != want:
            _fail("system_ii", f"require_xi_nonzero={flag}: main {m is not None}, oracle {want}", inst)
        if m is not None and (m.is_zero() or not multipliers_valid(inst, m) or (flag and not any(m.xi))):
            _fail("system_ii", f"solution fails substitution: {m.to_dict()}", inst)
    report.checks["system_ii"] = 2
    return report
