"""Named example fans and seeded random generators."""

from __future__ import annotations

import random

from .errors import NotAFan, NotPointed
from .geometry import Cone, Fan, cone_from_generators, fan_from_maximal, zero_cone


def _fan(cones, d=2) -> Fan:
    return fan_from_maximal([cone_from_generators(c, d) for c in cones], d)


def quadrant() -> Fan:
    """Q2: the positive quadrant, K[Σ] = K[x, y]."""
    return _fan([[(1, 0), (0, 1)]])


def opposite_quadrants() -> Fan:
    """OPP: two quadrants meeting only at the origin."""
    return _fan([[(1, 0), (0, 1)], [(-1, 0), (0, -1)]])


def half_plane() -> Fan:
    """HALF: the upper half plane cut along the ray e2."""
    return _fan([[(1, 0), (0, 1)], [(0, 1), (-1, 0)]])


def full_plane() -> Fan:
    """FULL4: the complete fan of the four quadrants."""
    return _fan([[(1, 0), (0, 1)], [(0, 1), (-1, 0)], [(-1, 0), (0, -1)], [(0, -1), (1, 0)]])


def trivial_fan(d: int = 2) -> Fan:
    return Fan(d, [zero_cone(d)])


NAMED = {
    "Q2": quadrant,
    "OPP": opposite_quadrants,
    "HALF": half_plane,
    "FULL4": full_plane,
}


def named(name: str) -> Fan:
    return NAMED[name]()


# -- random generation ------------------------------------------------------------

def random_pointed_cone(rng: random.Random, d: int, max_rays: int = 5, bound: int = 3) -> Cone:
    """Cone on random integer vectors lying strictly on one side of a hyperplane."""
    while True:
        w = [rng.randint(1, 3) for _ in range(d)]
        k = rng.randint(1, max_rays)
        vs = []
        while len(vs) < k:
            v = tuple(rng.randint(-bound, bound) for _ in range(d))
            if sum(x * y for x, y in zip(v, w)) > 0:
                vs.append(v)
        try:
            return cone_from_generators(vs, d)
        except NotPointed:
            continue


def _cross(o, a, b) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull(points) -> list[tuple[int, int]]:
    """Vertices of the convex hull in counterclockwise order (monotone chain)."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    lower: list = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _strictly_inside(hull, p) -> bool:
    n = len(hull)
    return all(_cross(hull[i], hull[(i + 1) % n], p) > 0 for i in range(n))


def random_polygon_fan(rng: random.Random, bound: int = 3, npoints: int = 6) -> Fan:
    """3-dimensional fan: cones over a triangulated lattice polygon at height 1.

    The polygon is triangulated either as a fan from one vertex or as the
    star of an interior lattice point; both give shellable balls.
    """
    while True:
        pts = [(rng.randint(-bound, bound), rng.randint(-bound, bound)) for _ in range(npoints)]
        hull = convex_hull(pts)
        if len(hull) < 3:
            continue
        inner = [p for p in pts if _strictly_inside(hull, p)]
        if inner and rng.random() < 0.5:
            c = inner[0]
            tris = [(c, hull[i], hull[(i + 1) % len(hull)]) for i in range(len(hull))]
        else:
            tris = [(hull[0], hull[i], hull[i + 1]) for i in range(1, len(hull) - 1)]
        cones = [[(x, y, 1) for x, y in t] for t in tris]
        return _fan(cones, 3)


def random_planar_fan(rng: random.Random, bound: int = 3, nrays: int = 4) -> Fan:
    """2-dimensional fan from consecutive pairs of random rays sorted by angle."""
    while True:
        rays = set()
        for _ in range(nrays):
            v = (rng.randint(-bound, bound), rng.randint(-bound, bound))
            if v != (0, 0):
                rays.add(cone_from_generators([v], 2).generators[0])
        rays = sorted(rays, key=_angle_key)
        if len(rays) < 2:
            continue
        pairs = [(rays[i], rays[i + 1]) for i in range(len(rays) - 1)]
        if rng.random() < 0.5:
            pairs.append((rays[-1], rays[0]))
        try:
            cones = [cone_from_generators(p, 2) for p in pairs]
            if any(c.dim != 2 for c in cones):
                continue
            return fan_from_maximal(cones, 2)
        except (NotPointed, NotAFan):
            continue


def _angle_key(v):
    # exact angular order: half plane first, then the cross product
    x, y = v
    half = 0 if (y > 0 or (y == 0 and x > 0)) else 1
    return (half, _AngleCmp(v))


class _AngleCmp:
    def __init__(self, v):
        self.v = v

    def __lt__(self, other):
        return _cross((0, 0), self.v, other.v) > 0

    def __eq__(self, other):
        return _cross((0, 0), self.v, other.v) == 0


def random_nonpure_fan(rng: random.Random, bound: int = 3) -> Fan:
    """A polygon fan with lower-dimensional cones attached along rays."""
    while True:
        base = random_polygon_fan(rng, bound, npoints=rng.randint(4, 6))
        mx = [base.cones[i] for i in base.maximal]
        rays = sorted({r for c in mx for r in c.generators})
        extra = []
        for _ in range(rng.randint(1, 2)):
            r = rng.choice(rays)
            v = (rng.randint(-bound, bound), rng.randint(-bound, bound), rng.randint(-3, -1))
            extra.append([r, v])
        if rng.random() < 0.3:
            extra.append([(rng.randint(-bound, bound), rng.randint(-bound, bound), -1)])
        try:
            cones = mx + [cone_from_generators(e, 3) for e in extra]
            f = fan_from_maximal(cones, 3)
        except (NotPointed, NotAFan):
            continue
        if not f.is_pure():
            return f
