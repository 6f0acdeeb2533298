"""Seeded random instances, one family per theorem hypothesis set.

FREE  arbitrary valid instance (random pointed cones, optional W of dim 1)
H1    orthant cones, dim W = 0, and one anchor label whose f- and g-images
      are singletons at the coordinatewise minimum minus 1 of all image
      points, which makes f and g convexlike for every alpha
H2    H1 plus a Slater label (g-image strictly negative) and a nonempty
      feasible set
H3    H2 with singleton g-images

Every instance draws from its own ``random.Random`` keyed by
``(seed, family, index)``, so instance ``i`` does not depend on how many
instances were generated before it or on which worker generated it.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import ConevexError, GenerationExhausted
from .geometry import cone_from_generators, contains_interior, neg, orthant, rank
from .setvalued import DomainPoint, FiniteSetMap, ProblemInstance, feasible_set, point_set
from .efficiency import slater_holds

FAMILIES = ("FREE", "H1", "H2", "H3")


@dataclass(frozen=True)
class GeneratorConfig:
    seed: int
    family: str = "FREE"
    max_domain: int = 6
    max_dim: int = 3
    max_image: int = 3
    max_num: int = 8
    max_den: int = 8
    grid: int = 8
    retries: int = 100

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; choose from {', '.join(FAMILIES)}")
        if self.max_domain < 3 or self.max_dim < 1 or self.max_image < 1:
            raise ValueError("size bounds too small")


class _Draw:
    """Bounded random rationals and vectors."""

    def __init__(self, rng: random.Random, cfg: GeneratorConfig):
        self.rng = rng
        self.cfg = cfg

    def rational(self, lo=None, hi=None) -> Fraction:
        cfg, rng = self.cfg, self.rng
        lo = -cfg.max_num if lo is None else lo
        hi = cfg.max_num if hi is None else hi
        while True:
            den = 1 if rng.random() < 0.5 else rng.randint(2, cfg.max_den)
            v = Fraction(rng.randint(-cfg.max_num, cfg.max_num), den)
            if lo <= v <= hi:
                return v

    def vector(self, n, lo=None, hi=None) -> tuple:
        return tuple(self.rational(lo, hi) for _ in range(n))

    def image(self, n, lo=None, hi=None, size=None) -> tuple:
        size = size or self.rng.randint(1, self.cfg.max_image)
        return point_set(self.vector(n, lo, hi) for _ in range(size))


def _instance_rng(cfg: GeneratorConfig, index: int) -> random.Random:
    return random.Random(f"conevex:{cfg.seed}:{cfg.family}:{index}")


def _random_pointed_cone(draw: _Draw, n: int):
    """Generators with positive coordinate sum, so the cone is pointed."""
    rng = draw.rng
    while True:
        k = rng.randint(n, n + 2)
        gens = []
        while len(gens) < k:
            g = tuple(Fraction(rng.randint(-3, 3)) for _ in range(n))
            if sum(g) > 0:
                gens.append(g)
        if rank(gens) == n:
            return cone_from_generators(n, gens)


def _labels(count: int) -> list:
    return [f"x{i}" for i in range(count)]


def _domain(draw: _Draw, labels, dim_x) -> tuple:
    return tuple(DomainPoint(x, draw.vector(dim_x)) for x in labels)


def _floor_min_minus_one(points, n) -> tuple:
    return tuple(Fraction(math.floor(min(p[k] for p in points)) - 1) for k in range(n))


def _free(draw: _Draw, cfg: GeneratorConfig) -> ProblemInstance:
    rng = draw.rng
    # oracle preconditions: |domain| <= 5, multiplier space of dimension <= 6
    labels = _labels(rng.randint(2, min(5, cfg.max_domain)))
    dy = rng.randint(1, min(3, cfg.max_dim))
    dz = rng.randint(1, min(3, cfg.max_dim))
    dw = rng.choice((0, 0, 1)) if dy + dz < 6 else 0
    dx = rng.randint(1, cfg.max_dim)
    y_cone = _random_pointed_cone(draw, dy)
    z_cone = _random_pointed_cone(draw, dz)
    f = FiniteSetMap(dy, {x: draw.image(dy) for x in labels})
    g = FiniteSetMap(dz, {x: draw.image(dz) for x in labels})
    h = None
    w_cone = None
    if dw:
        # origin in about half the h-images keeps some labels feasible
        images = {}
        for x in labels:
            img = list(draw.image(dw))
            if rng.random() < 0.5:
                img.append((Fraction(0),))
            images[x] = img
        h = FiniteSetMap(dw, images)
        w_cone = orthant(1)
    return ProblemInstance(dx, dy, dz, dw, y_cone, z_cone, _domain(draw, labels, dx), f, g, h, w_cone)


def _anchored(draw: _Draw, cfg: GeneratorConfig, family: str) -> ProblemInstance:
    rng = draw.rng
    n_labels = rng.randint(3, cfg.max_domain)
    labels = _labels(n_labels)
    dy = rng.randint(1, cfg.max_dim)
    dz = rng.randint(1, cfg.max_dim)
    dx = rng.randint(1, cfg.max_dim)
    # keep image points >= -7 so the anchor stays within the numerator bound
    lo = -cfg.max_num + 1
    anchor = labels[rng.randrange(n_labels)]
    others = [x for x in labels if x != anchor]
    slater = None
    if family in ("H2", "H3"):
        slater = rng.choice(others)

    # H1 regime switch: a positive f-range keeps the anchor out of -int Y+
    f_lo = lo if family != "H1" or rng.random() < 0.5 else Fraction(1)
    g_size = 1 if family == "H3" else None
    f_images = {x: draw.image(dy, f_lo) for x in others}
    g_images = {}
    for x in others:
        if x == slater:
            g_images[x] = draw.image(dz, lo, Fraction(-1, cfg.max_den), size=g_size)
        else:
            g_images[x] = draw.image(dz, lo, size=g_size)
    f_images[anchor] = (_floor_min_minus_one([p for img in f_images.values() for p in img], dy),)
    g_images[anchor] = (_floor_min_minus_one([p for img in g_images.values() for p in img], dz),)
    f = FiniteSetMap(dy, {x: f_images[x] for x in labels})
    g = FiniteSetMap(dz, {x: g_images[x] for x in labels})
    return ProblemInstance(dx, dy, dz, 0, orthant(dy), orthant(dz), _domain(draw, labels, dx), f, g)


def family_guarantees(inst: ProblemInstance, family: str) -> list:
    """Structural guarantees of a family that fail on ``inst`` (empty list = all hold)."""
    failed = []
    if family == "FREE":
        return failed
    if inst.dim_w != 0:
        failed.append("dim_w_zero")
    if inst.y_cone != orthant(inst.dim_y) or inst.z_cone != orthant(inst.dim_z):
        failed.append("orthant_cones")
    f_all = [p for x in inst.labels for p in inst.f[x]]
    g_all = [p for x in inst.labels for p in inst.g[x]]
    anchored = any(
        len(inst.f[x]) == 1
        and len(inst.g[x]) == 1
        and all(contains_interior(inst.y_cone, tuple(a - b for a, b in zip(p, inst.f[x][0]))) for p in f_all if p != inst.f[x][0])
        and all(contains_interior(inst.z_cone, tuple(a - b for a, b in zip(p, inst.g[x][0]))) for p in g_all if p != inst.g[x][0])
        for x in inst.labels
    )
    if not anchored:
        failed.append("anchor")
    if family in ("H2", "H3"):
        if not any(contains_interior(inst.z_cone, neg(z)) for x in inst.labels for z in inst.g[x]):
            failed.append("slater_label")
        if not slater_holds(inst):
            failed.append("slater")
        if not feasible_set(inst):
            failed.append("feasible")
    if family == "H3" and any(len(inst.g[x]) != 1 for x in inst.labels):
        failed.append("singleton_g")
    return failed


def gen_random_instance(cfg: GeneratorConfig, index: int = 0) -> ProblemInstance:
    """Instance ``index`` of the stream defined by ``cfg``.

    Candidates failing the family guarantees are redrawn from the same stream
    up to ``cfg.retries`` times.
    """
    rng = _instance_rng(cfg, index)
    draw = _Draw(rng, cfg)
    for _ in range(cfg.retries):
        try:
            inst = _free(draw, cfg) if cfg.family == "FREE" else _anchored(draw, cfg, cfg.family)
        except ConevexError:
            continue
        if not family_guarantees(inst, cfg.family):
            return inst
    raise GenerationExhausted(f"no valid {cfg.family} instance after {cfg.retries} attempts (index {index})")
