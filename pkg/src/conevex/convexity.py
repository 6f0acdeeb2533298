"""Generalized convexity classifiers for finite set-valued maps.

Each classifier walks the cells ``(x1, x2, alpha)`` (unordered label pairs in
lexicographic order, then alpha ascending on an :class:`AlphaGrid`) and looks
for a covering label ``x3``. The scan does not stop at the first failure: the
certificate is the first failing cell and ``refuted_cells`` lists all of them. The scale ``tau`` is not sampled: for every
candidate ``x3`` the whole set ``{tau > 0 : A <= tau*S + C}`` is computed as a
finite union of rational intervals.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Mapping, Optional, Sequence

from .errors import DimensionMismatch
from .geometry import PolyhedralCone, add, contains, dot, scale, sub, unit, vec
from .setvalued import FiniteSetMap, combine


@dataclass(frozen=True)
class AlphaGrid:
    denominator: int = 8

    def __post_init__(self):
        if self.denominator < 2:
            raise ValueError("grid denominator must be at least 2")

    @property
    def samples(self) -> tuple:
        N = self.denominator
        return tuple(Fraction(k, N) for k in range(1, N))


@dataclass(frozen=True)
class TauInterval:
    """An interval of positive reals; ``hi is None`` means unbounded above."""

    lo: Fraction
    hi: Optional[Fraction]
    lo_closed: bool = False
    hi_closed: bool = False

    def __contains__(self, tau) -> bool:
        tau = Fraction(tau)
        if tau < self.lo or (tau == self.lo and not self.lo_closed):
            return False
        if self.hi is None:
            return True
        return tau < self.hi or (tau == self.hi and self.hi_closed)

    def __str__(self):
        left = "[" if self.lo_closed else "("
        right = "]" if self.hi_closed else ")"
        hi = "inf" if self.hi is None else str(self.hi)
        return f"{left}{self.lo}, {hi}{right}"


def _nonempty(iv: TauInterval) -> bool:
    if iv.hi is None or iv.lo < iv.hi:
        return True
    return iv.lo == iv.hi and iv.lo_closed and iv.hi_closed


def _single(evals_a, evals_s) -> Optional[TauInterval]:
    """``{tau > 0 : c_j - tau*d_j >= 0 for all j}`` for c = evals_a, d = evals_s."""
    lo, lo_closed = Fraction(0), False
    hi, hi_closed = None, False
    for c, d in zip(evals_a, evals_s):
        if d > 0:
            b = c / d
            if hi is None or b < hi:
                hi, hi_closed = b, True
        elif d < 0:
            b = c / d
            if b > lo:
                lo, lo_closed = b, True
        elif c < 0:
            return None
    iv = TauInterval(lo, hi, lo_closed, hi_closed)
    return iv if _nonempty(iv) else None


def _hi_key(iv):
    # position of the right end for sorting/merging; unbounded sorts last
    return (1, 0, 0) if iv.hi is None else (0, iv.hi, 1 if iv.hi_closed else 0)


def _union(intervals) -> tuple:
    ivs = sorted(intervals, key=lambda iv: (iv.lo, 0 if iv.lo_closed else 1))
    out = []
    for iv in ivs:
        if out:
            last = out[-1]
            touching = last.hi is None or iv.lo < last.hi or (
                iv.lo == last.hi and (last.hi_closed or iv.lo_closed)
            )
            if touching:
                hi = max(last, iv, key=_hi_key)
                out[-1] = TauInterval(last.lo, hi.hi, last.lo_closed, hi.hi_closed)
                continue
        out.append(iv)
    return tuple(out)


def _meet(a: TauInterval, b: TauInterval) -> Optional[TauInterval]:
    if a.lo > b.lo or (a.lo == b.lo and not a.lo_closed):
        lo, lo_closed = a.lo, a.lo_closed
    else:
        lo, lo_closed = b.lo, b.lo_closed
    hi = min(a, b, key=_hi_key)
    iv = TauInterval(lo, hi.hi, lo_closed, hi.hi_closed)
    return iv if _nonempty(iv) else None


def _intersect(xs: tuple, ys: tuple) -> tuple:
    return _union(iv for a in xs for b in ys if (iv := _meet(a, b)) is not None)


def _evals(points, normals) -> list:
    return [tuple(dot(n, p) for n in normals) for p in points]


def _tau_from_evals(a_evals, s_evals) -> tuple:
    result = (TauInterval(Fraction(0), None),)
    for c in a_evals:
        pieces = [iv for d in s_evals if (iv := _single(c, d)) is not None]
        result = _intersect(result, _union(pieces))
        if not result:
            break
    return result


def _tau_set(A, S, normals) -> tuple:
    return _tau_from_evals(_evals(A, normals), _evals(S, normals))


def tau_interval(A: Sequence, S: Sequence, C: PolyhedralCone) -> tuple:
    """``{tau > 0 : A is a subset of tau*S + C}`` as sorted disjoint intervals."""
    for p in list(A) + list(S):
        if len(p) != C.ambient_dim:
            raise DimensionMismatch(
                f"point of length {len(p)} against a cone in dimension {C.ambient_dim}"
            )
    return _tau_set([vec(a) for a in A], [vec(s) for s in S], C.facet_normals)


def tau_in(intervals, tau) -> bool:
    return any(tau in iv for iv in intervals)


def choose_tau(intervals) -> Fraction:
    """Deterministic witness: midpoint of the first interval, or its left end + 1 when unbounded."""
    first = intervals[0]
    if first.hi is None:
        return first.lo + 1
    return (first.lo + first.hi) / 2


class Verdict(str, Enum):
    VERIFIED = "VerifiedOnGrid"
    REFUTED = "Refuted"


@dataclass
class ConvexityVerdict:
    kind: Verdict
    witnesses: dict = field(default_factory=dict)  # (x1, x2, alpha) -> (x3, tau)
    certificate: Optional[tuple] = None  # (x1, x2, alpha) of the first failing cell
    skipped: tuple = ()  # cells with no matching midpoint label (cone-convexity only)
    refuted_cells: tuple = ()  # every failing cell, in scan order

    @property
    def verified(self) -> bool:
        return self.kind is Verdict.VERIFIED

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "certificate": None if self.certificate is None else [
                self.certificate[0], self.certificate[1], str(self.certificate[2])
            ],
            "skipped": len(self.skipped),
            "refuted_cells": [[x1, x2, str(al)] for x1, x2, al in self.refuted_cells],
            "witnesses": [
                {"x1": x1, "x2": x2, "alpha": str(al), "x3": x3, "tau": str(tau)}
                for (x1, x2, al), (x3, tau) in self.witnesses.items()
            ],
        }


def _cells(F: FiniteSetMap, grid: AlphaGrid):
    labels = sorted(F.labels)
    for x1, x2 in combinations_with_replacement(labels, 2):
        for alpha in grid.samples:
            yield x1, x2, alpha


def _verdict(witnesses, refuted, skipped=()) -> ConvexityVerdict:
    if refuted:
        return ConvexityVerdict(Verdict.REFUTED, witnesses, refuted[0], tuple(skipped), tuple(refuted))
    return ConvexityVerdict(Verdict.VERIFIED, witnesses, None, tuple(skipped))


def _combined_evals(ev, x1, x2, alpha) -> set:
    """Facet evaluations of combine(F, x1, x2, alpha), using linearity."""
    beta = 1 - alpha
    return {
        tuple(alpha * a + beta * b for a, b in zip(u, v)) for u in ev[x1] for v in ev[x2]
    }


def _classify_by_tau(F: FiniteSetMap, normals, grid: AlphaGrid) -> ConvexityVerdict:
    labels = sorted(F.labels)
    ev = {x: _evals(F[x], normals) for x in labels}
    witnesses, refuted = {}, []
    for cell in _cells(F, grid):
        A = sorted(_combined_evals(ev, *cell))
        for x3 in labels:
            ivs = _tau_from_evals(A, ev[x3])
            if ivs:
                witnesses[cell] = (x3, choose_tau(ivs))
                break
        else:
            refuted.append(cell)
    return _verdict(witnesses, refuted)


def _check_codomain(F: FiniteSetMap, C: PolyhedralCone):
    if F.codomain_dim != C.ambient_dim:
        raise DimensionMismatch(
            f"map into dimension {F.codomain_dim} ordered by a cone in dimension {C.ambient_dim}"
        )


def _dominates(a_evals, s_evals) -> bool:
    # a - s in C  iff  every facet evaluation of a is >= that of s
    return all(any(all(p >= q for p, q in zip(c, d)) for d in s_evals) for c in a_evals)


def covered(A, S, C: PolyhedralCone) -> bool:
    """Whether every a in A lies in s + C for some s in S."""
    return all(any(contains(C, sub(a, s)) for s in S) for a in A)


def is_preconvexlike(F: FiniteSetMap, C: PolyhedralCone, grid: AlphaGrid = AlphaGrid()) -> ConvexityVerdict:
    """alpha*F(x1) + (1-alpha)*F(x2) inside tau*F(x3) + C for some x3 and tau > 0."""
    _check_codomain(F, C)
    return _classify_by_tau(F, C.facet_normals, grid)


def is_convexlike(F: FiniteSetMap, C: PolyhedralCone, grid: AlphaGrid = AlphaGrid()) -> ConvexityVerdict:
    """Same as :func:`is_preconvexlike` with tau fixed to 1."""
    _check_codomain(F, C)
    labels = sorted(F.labels)
    ev = {x: _evals(F[x], C.facet_normals) for x in labels}
    witnesses, refuted = {}, []
    for cell in _cells(F, grid):
        A = _combined_evals(ev, *cell)
        x3 = next((x for x in labels if _dominates(A, ev[x])), None)
        if x3 is None:
            refuted.append(cell)
        else:
            witnesses[cell] = (x3, Fraction(1))
    return _verdict(witnesses, refuted)


def is_preaffine(F: FiniteSetMap, grid: AlphaGrid = AlphaGrid()) -> ConvexityVerdict:
    """Containment in tau*F(x3) with no cone slack.

    The trivial cone {0} is described by the facet pairs +-e_k, which turns
    each inequality pair into an equation ``a_k = tau * s_k``.
    """
    m = F.codomain_dim
    normals = [unit(m, k) for k in range(m)] + [scale(-1, unit(m, k)) for k in range(m)]
    return _classify_by_tau(F, normals, grid)


def is_cone_convex(
    F: FiniteSetMap,
    C: PolyhedralCone,
    grid: AlphaGrid,
    domain_coords: Mapping[str, tuple],
) -> ConvexityVerdict:
    """alpha*F(x1) + (1-alpha)*F(x2) inside F(alpha*x1 + (1-alpha)*x2) + C.

    Cells whose combined coordinates match no label are skipped.
    """
    _check_codomain(F, C)
    by_coords = {}
    for label in sorted(domain_coords):
        by_coords.setdefault(vec(domain_coords[label]), label)
    witnesses, skipped, refuted = {}, [], []
    for cell in _cells(F, grid):
        x1, x2, alpha = cell
        mid = add(scale(alpha, vec(domain_coords[x1])), scale(1 - alpha, vec(domain_coords[x2])))
        m = by_coords.get(mid)
        if m is None:
            skipped.append(cell)
            continue
        if covered(combine(F, *cell), F[m], C):
            witnesses[cell] = (m, Fraction(1))
        else:
            refuted.append(cell)
    return _verdict(witnesses, refuted, skipped)
