"""Exact rational vectors, polyhedral cones and homogeneous cone feasibility.

Vectors and linear functionals are plain tuples of :class:`~fractions.Fraction`;
a functional ``l`` evaluates at ``v`` as ``dot(v, l)``. Cones keep both a
generator and a facet description. Facets come from Fourier-Motzkin
elimination of the multipliers in ``{(lam, v) : v = G lam, lam >= 0}``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Optional, Sequence

from .errors import DimensionMismatch, NotFullDimensional, ZeroGenerator
from .simplex import solve_feasibility

Vector = tuple  # tuple[Fraction, ...]


def vec(values: Iterable) -> Vector:
    return tuple(Fraction(x) for x in values)


def zero(n: int) -> Vector:
    return (Fraction(0),) * n


def unit(n: int, j: int) -> Vector:
    return tuple(Fraction(1 if i == j else 0) for i in range(n))


def dot(u: Vector, v: Vector) -> Fraction:
    if len(u) != len(v):
        raise DimensionMismatch(f"cannot pair vectors of length {len(u)} and {len(v)}")
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def add(u: Vector, v: Vector) -> Vector:
    if len(u) != len(v):
        raise DimensionMismatch(f"cannot add vectors of length {len(u)} and {len(v)}")
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Vector, v: Vector) -> Vector:
    if len(u) != len(v):
        raise DimensionMismatch(f"cannot subtract vectors of length {len(u)} and {len(v)}")
    return tuple(a - b for a, b in zip(u, v))


def scale(c, v: Vector) -> Vector:
    c = Fraction(c)
    return tuple(c * a for a in v)


def neg(v: Vector) -> Vector:
    return tuple(-a for a in v)


def is_zero(v: Vector) -> bool:
    return not any(v)


def primitive(v: Vector) -> Vector:
    """Positive multiple of ``v`` with coprime integer entries (zero stays zero)."""
    if is_zero(v):
        return tuple(Fraction(0) for _ in v)
    den = lcm(*(a.denominator for a in v))
    ints = [int(a * den) for a in v]
    g = 0
    for a in ints:
        g = gcd(g, a)
    return tuple(Fraction(a // g) for a in ints)


def rank(rows: Sequence[Vector]) -> int:
    """Rank of a list of vectors by exact Gaussian elimination."""
    work = [list(r) for r in rows if any(r)]
    if not work:
        return 0
    ncols = len(work[0])
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(work)) if work[i][c]), None)
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        p = work[r][c]
        for i in range(r + 1, len(work)):
            f = work[i][c] / p
            if f:
                work[i] = [a - f * b for a, b in zip(work[i], work[r])]
        r += 1
        if r == len(work):
            break
    return r


# --- homogeneous feasibility -------------------------------------------------

@dataclass(frozen=True)
class ConeFeasibilityProblem:
    """The cone ``{v in Q^n : dot(v, a) >= 0 for every a in inequalities}``."""

    variable_dim: int
    inequalities: tuple = ()

    def __post_init__(self):
        rows = tuple(vec(a) for a in self.inequalities)
        for a in rows:
            if len(a) != self.variable_dim:
                raise DimensionMismatch(
                    f"inequality of length {len(a)} in a problem over {self.variable_dim} variables"
                )
        object.__setattr__(self, "inequalities", rows)

    def is_solution(self, v: Vector) -> bool:
        return len(v) == self.variable_dim and all(dot(v, a) >= 0 for a in self.inequalities)


def _dedupe_rows(rows):
    seen = {}
    for a in rows:
        p = primitive(a)
        if any(p):
            seen.setdefault(p, None)
    return list(seen)


def cone_nonzero_point(
    problem: ConeFeasibilityProblem, coords: Optional[Iterable[int]] = None
) -> Optional[Vector]:
    """Find a nonzero solution of a homogeneous system, or ``None`` if only 0 solves it.

    Directions are scanned as ``s * v[j] = 1`` for ``j`` ascending (restricted to
    ``coords`` when given) and ``s = +1`` before ``-1``; the first feasible LP
    wins.
    """
    n = problem.variable_dim
    scan = range(n) if coords is None else sorted(set(coords))
    if n == 0:
        return None
    rows = _dedupe_rows(problem.inequalities)
    if not rows:
        j = next(iter(scan), None)
        return None if j is None else unit(n, j)
    for j in scan:
        for s in (1, -1):
            pin = scale(s, unit(n, j))
            point = solve_feasibility(
                rows + [pin, neg(pin)],
                [Fraction(0)] * len(rows) + [Fraction(1), Fraction(-1)],
                n,
            )
            if point is not None:
                return point
    return None


# --- Fourier-Motzkin ---------------------------------------------------------

def _fm_facets(n: int, gens: Sequence[Vector]):
    """Project ``{(lam, v) : v = G lam, lam >= 0}`` onto ``v``.

    Returns ``(inequalities, equalities)`` in ``v`` only. Rows are coefficient
    lists over ``lam_1..lam_m, v_1..v_n``; each inequality carries the set of
    original ``lam_i >= 0`` rows it combines (Chernikov's redundancy rule).
    """
    m = len(gens)
    width = m + n
    ineqs = []
    for i in range(m):
        row = [Fraction(0)] * width
        row[i] = Fraction(1)
        ineqs.append((row, frozenset([i])))
    eqs = []
    for k in range(n):
        row = [Fraction(0)] * width
        row[m + k] = Fraction(1)
        for i, g in enumerate(gens):
            row[i] = -g[k]
        eqs.append(row)

    remaining = set(range(m))
    # equalities first: each one removes a multiplier exactly
    while True:
        hit = next(
            ((e, j) for e in eqs for j in sorted(remaining) if e[j]), None
        )
        if hit is None:
            break
        e, j = hit
        eqs.remove(e)
        piv = e[j]

        def substitute(row, e=e, j=j, piv=piv):
            f = row[j] / piv
            return [a - f * b for a, b in zip(row, e)] if f else row

        eqs = [substitute(r) for r in eqs]
        ineqs = [(substitute(r), h) for r, h in ineqs]
        remaining.discard(j)

    eliminated = 0
    for j in sorted(remaining):
        pos = [(r, h) for r, h in ineqs if r[j] > 0]
        negs = [(r, h) for r, h in ineqs if r[j] < 0]
        keep = [(r, h) for r, h in ineqs if r[j] == 0]
        eliminated += 1
        seen = {tuple(primitive(tuple(r))) for r, _ in keep}
        for rp, hp in pos:
            for rn, hn in negs:
                hist = hp | hn
                if len(hist) > eliminated + 1:
                    continue
                a, b = rp[j], -rn[j]
                row = [b * x + a * y for x, y in zip(rp, rn)]
                key = primitive(tuple(row))
                if key in seen:
                    continue
                seen.add(key)
                keep.append((row, hist))
        ineqs = keep

    out_ineqs = [tuple(r[m:]) for r, _ in ineqs]
    out_eqs = [tuple(r[m:]) for r in eqs]
    return out_ineqs, out_eqs


def _facet_key(v: Vector):
    return tuple(v)


@dataclass(frozen=True)
class PolyhedralCone:
    """A full-dimensional cone ``cone(generators) = {v : dot(v, n) >= 0 for n in facet_normals}``.

    Build instances with :func:`cone_from_generators`.
    """

    ambient_dim: int
    generators: tuple
    facet_normals: tuple = field(default=())

    def contains(self, v: Vector) -> bool:
        return contains(self, v)

    def contains_interior(self, v: Vector) -> bool:
        return contains_interior(self, v)

    def __repr__(self):
        gens = ", ".join("(" + ",".join(str(a) for a in g) + ")" for g in self.generators)
        return f"PolyhedralCone(dim={self.ambient_dim}, gens=[{gens}])"


def cone_from_generators(ambient_dim: int, gens: Iterable) -> PolyhedralCone:
    """Build a cone from generators; facets are computed by Fourier-Motzkin.

    Facet normals are canonical: coprime integers (positive rescaling only),
    irredundant, sorted lexicographically.
    """
    gens = tuple(vec(g) for g in gens)
    for g in gens:
        if len(g) != ambient_dim:
            raise DimensionMismatch(
                f"generator of length {len(g)} for a cone in dimension {ambient_dim}"
            )
        if is_zero(g):
            raise ZeroGenerator("cone generators must be nonzero")
    if ambient_dim == 0:
        return PolyhedralCone(0, gens, ())

    ineqs, eqs = _fm_facets(ambient_dim, gens)
    if any(any(e) for e in eqs):
        raise NotFullDimensional("generators span a proper subspace")
    candidates = sorted({primitive(r) for r in ineqs if any(r)}, key=_facet_key)

    # Interior exists iff some v has every facet evaluation >= 1.
    if candidates and solve_feasibility(candidates, [Fraction(1)] * len(candidates), ambient_dim) is None:
        raise NotFullDimensional("cone has empty interior")

    facets = tuple(
        n for n in candidates
        if rank([g for g in gens if dot(g, n) == 0]) == ambient_dim - 1
    )
    return PolyhedralCone(ambient_dim, gens, facets)


def orthant(n: int) -> PolyhedralCone:
    return cone_from_generators(n, [unit(n, j) for j in range(n)])


def _check_dim(C: PolyhedralCone, v: Vector):
    if len(v) != C.ambient_dim:
        raise DimensionMismatch(
            f"vector of length {len(v)} tested against a cone in dimension {C.ambient_dim}"
        )


def contains(C: PolyhedralCone, v: Vector) -> bool:
    _check_dim(C, v)
    return all(dot(v, n) >= 0 for n in C.facet_normals)


def contains_interior(C: PolyhedralCone, v: Vector) -> bool:
    _check_dim(C, v)
    return all(dot(v, n) > 0 for n in C.facet_normals)


def dual_cone(C: PolyhedralCone) -> PolyhedralCone:
    """``{l : dot(x, l) >= 0 for all x in C}``, generated by C's facet normals.

    Raises :class:`NotFullDimensional` when C is not pointed.
    """
    return cone_from_generators(C.ambient_dim, C.facet_normals)


def is_pointed(C: PolyhedralCone) -> bool:
    rows = list(C.facet_normals) + [neg(n) for n in C.facet_normals]
    return cone_nonzero_point(ConeFeasibilityProblem(C.ambient_dim, tuple(rows))) is None


def same_cone(C1: PolyhedralCone, C2: PolyhedralCone) -> bool:
    """Equality of point sets by mutual generator membership."""
    return (
        C1.ambient_dim == C2.ambient_dim
        and all(contains(C2, g) for g in C1.generators)
        and all(contains(C1, g) for g in C2.generators)
    )


def in_dual(C: PolyhedralCone, ell: Vector) -> bool:
    """Whether the functional ``ell`` is nonnegative on C."""
    _check_dim(C, ell)
    return all(dot(g, ell) >= 0 for g in C.generators)


def interior_point(C: PolyhedralCone) -> Vector:
    """Sum of the generators; interior for any full-dimensional cone."""
    out = zero(C.ambient_dim)
    for g in C.generators:
        out = add(out, g)
    return out
