"""Finite set-valued maps and vector optimization problem instances.

A point set is always a sorted, duplicate-free tuple of vectors, so set
equality is tuple equality and every scan order is reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional

from .errors import AlphaOutOfRange, DimensionMismatch, UnknownLabel, ValidationError
from .geometry import PolyhedralCone, Vector, add, contains, dot, is_pointed, neg, scale, vec, zero


def point_set(points: Iterable) -> tuple:
    return tuple(sorted({vec(p) for p in points}))


@dataclass(frozen=True)
class DomainPoint:
    label: str
    coords: Vector

    def __post_init__(self):
        object.__setattr__(self, "coords", vec(self.coords))


@dataclass(frozen=True, eq=False)
class FiniteSetMap:
    """A map from labels to nonempty finite subsets of Q^codomain_dim."""

    codomain_dim: int
    images: Mapping[str, tuple]

    def __post_init__(self):
        table = {}
        for label, pts in self.images.items():
            image = point_set(pts)
            if not image:
                raise ValidationError(f"image of {label!r} is empty")
            for p in image:
                if len(p) != self.codomain_dim:
                    raise DimensionMismatch(
                        f"image point of length {len(p)} at {label!r}; expected {self.codomain_dim}"
                    )
            table[label] = image
        object.__setattr__(self, "images", table)

    @classmethod
    def constant(cls, codomain_dim: int, labels: Iterable[str], points) -> "FiniteSetMap":
        pts = point_set(points)
        return cls(codomain_dim, {x: pts for x in labels})

    def __getitem__(self, label: str) -> tuple:
        try:
            return self.images[label]
        except KeyError:
            raise UnknownLabel(label) from None

    def __contains__(self, label):
        return label in self.images

    @property
    def labels(self) -> tuple:
        return tuple(self.images)

    def __eq__(self, other):
        if not isinstance(other, FiniteSetMap):
            return NotImplemented
        return self.codomain_dim == other.codomain_dim and self.images == other.images

    def __hash__(self):
        return hash((self.codomain_dim, tuple(sorted(self.images.items()))))


def image_union(F: FiniteSetMap, labels: Iterable[str]) -> tuple:
    """f(D) for a set of labels D."""
    pts = []
    for x in labels:
        pts.extend(F[x])
    return point_set(pts)


def combine(F: FiniteSetMap, x1: str, x2: str, alpha) -> tuple:
    """The Minkowski combination alpha*F(x1) + (1 - alpha)*F(x2)."""
    alpha = Fraction(alpha)
    if not 0 < alpha < 1:
        raise AlphaOutOfRange(f"alpha must lie in (0, 1), got {alpha}")
    beta = 1 - alpha
    return point_set(
        add(scale(alpha, u), scale(beta, v)) for u in F[x1] for v in F[x2]
    )


def apply_functional(F: FiniteSetMap, x: str, ell: Vector) -> tuple:
    """{<y, ell> : y in F(x)} as a sorted tuple of rationals."""
    ell = vec(ell)
    if len(ell) != F.codomain_dim:
        raise DimensionMismatch(
            f"functional of length {len(ell)} on a codomain of dimension {F.codomain_dim}"
        )
    return tuple(sorted({dot(y, ell) for y in F[x]}))


@dataclass(frozen=True, eq=False)
class ProblemInstance:
    """Spaces, order cones and the triple (f, g, h) of a set-valued vector program.

    ``h`` defaults to the constant map onto the origin of the zero-dimensional
    space when ``dim_w == 0``.
    """

    dim_x: int
    dim_y: int
    dim_z: int
    dim_w: int
    y_cone: PolyhedralCone
    z_cone: PolyhedralCone
    domain: tuple
    f: FiniteSetMap
    g: FiniteSetMap
    h: Optional[FiniteSetMap] = None
    w_cone: Optional[PolyhedralCone] = None

    def __post_init__(self):
        domain = tuple(self.domain)
        object.__setattr__(self, "domain", domain)
        if min(self.dim_x, self.dim_y, self.dim_z, self.dim_w) < 0:
            raise ValidationError("dimensions must be nonnegative")
        if self.dim_y < 1:
            raise ValidationError("the objective space needs dimension >= 1")
        labels = [p.label for p in domain]
        if not labels:
            raise ValidationError("domain is empty")
        if len(set(labels)) != len(labels):
            raise ValidationError("domain labels must be unique")
        for p in domain:
            if len(p.coords) != self.dim_x:
                raise ValidationError(f"coords of {p.label!r} do not lie in dimension {self.dim_x}")
        if self.h is None:
            if self.dim_w != 0:
                raise ValidationError("h is required when dim W > 0")
            object.__setattr__(self, "h", FiniteSetMap.constant(0, labels, [()]))
        for name, cone, dim in (("Y", self.y_cone, self.dim_y), ("Z", self.z_cone, self.dim_z)):
            if cone.ambient_dim != dim:
                raise ValidationError(f"cone {name}+ lives in dimension {cone.ambient_dim}, expected {dim}")
            if not is_pointed(cone):
                raise ValidationError(f"cone {name}+ must be pointed")
        if self.w_cone is not None and self.w_cone.ambient_dim != self.dim_w:
            raise ValidationError("cone W+ has the wrong dimension")
        for name, F, dim in (("f", self.f, self.dim_y), ("g", self.g, self.dim_z), ("h", self.h, self.dim_w)):
            if F.codomain_dim != dim:
                raise ValidationError(f"{name} maps into dimension {F.codomain_dim}, expected {dim}")
            if set(F.labels) != set(labels):
                raise ValidationError(f"{name} must be defined on exactly the domain labels")

    @property
    def labels(self) -> tuple:
        return tuple(p.label for p in self.domain)

    @property
    def coords(self) -> dict:
        return {p.label: p.coords for p in self.domain}

    def replace(self, **changes) -> "ProblemInstance":
        fields = dict(
            dim_x=self.dim_x, dim_y=self.dim_y, dim_z=self.dim_z, dim_w=self.dim_w,
            y_cone=self.y_cone, z_cone=self.z_cone, domain=self.domain,
            f=self.f, g=self.g, h=self.h, w_cone=self.w_cone,
        )
        fields.update(changes)
        return ProblemInstance(**fields)

    def __eq__(self, other):
        if not isinstance(other, ProblemInstance):
            return NotImplemented
        return (
            (self.dim_x, self.dim_y, self.dim_z, self.dim_w) == (other.dim_x, other.dim_y, other.dim_z, other.dim_w)
            and self.y_cone.generators == other.y_cone.generators
            and self.z_cone.generators == other.z_cone.generators
            and (self.w_cone.generators if self.w_cone else None) == (other.w_cone.generators if other.w_cone else None)
            and self.domain == other.domain
            and self.f == other.f and self.g == other.g and self.h == other.h
        )

    __hash__ = None


def meets_negative_cone(cone: PolyhedralCone, points) -> bool:
    """Whether some point p satisfies -p in cone."""
    return any(contains(cone, neg(p)) for p in points)


def is_feasible(inst: ProblemInstance, x: str) -> bool:
    # constraint: g(x) meets -Z+ and the origin of W lies in h(x)
    return meets_negative_cone(inst.z_cone, inst.g[x]) and zero(inst.dim_w) in inst.h[x]


def feasible_set(inst: ProblemInstance) -> tuple:
    """Feasible labels in domain order."""
    return tuple(x for x in inst.labels if is_feasible(inst, x))
