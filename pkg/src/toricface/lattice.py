"""Affine monoids on the cones of a fan and monoidal complexes."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import floor
from typing import Mapping, Sequence

from .geometry import Cone, Fan, cone_from_generators
from .linalg import dot
from .lp import feasible_point


@dataclass(frozen=True)
class AffineMonoid:
    """A positive affine monoid with cone ``cone``.

    With ``normal_flag`` set the monoid is ``cone ∩ Z^d`` and ``generators``
    is left empty (no Hilbert basis is computed).
    """

    cone: Cone
    generators: tuple[tuple[int, ...], ...] = ()
    normal_flag: bool = True

    def contains(self, a: Sequence[int]) -> bool:
        return monoid_contains(self, a)


def normal_monoid(c: Cone) -> AffineMonoid:
    return AffineMonoid(c, (), True)


def monoid_from_generators(gens: Sequence[Sequence[int]], cone: Cone | None = None) -> AffineMonoid:
    gens = tuple(sorted({tuple(int(x) for x in g) for g in gens if any(g)}))
    if cone is None:
        cone = cone_from_generators(gens, len(gens[0]) if gens else None)
    return AffineMonoid(cone, gens, False)


@lru_cache(maxsize=None)
def membership_bound_functional(m: AffineMonoid) -> tuple[Fraction, ...] | None:
    """A functional ``w`` with ``w(g) >= 1`` on every generator (exact LP)."""
    if not m.generators:
        return None
    d = m.cone.ambient
    return feasible_point(
        geq=[(g, 1) for g in m.generators],
        nvars=d,
        objective=[sum(g[j] for g in m.generators) for j in range(d)],
    )


def monoid_contains(m: AffineMonoid, a: Sequence[int]) -> bool:
    """Exact membership test.

    For generator-given monoids the search is finite: with ``w`` positive on
    the generators, any representation ``a = sum n_i g_i`` has
    ``n_i <= w(a) / min_i w(g_i)``.
    """
    a = tuple(int(x) for x in a)
    if not any(a):
        return True
    if not m.cone.contains(a):
        return False
    if m.normal_flag:
        return True
    if not m.generators:
        return False
    w = membership_bound_functional(m)
    return _search(m.generators, tuple(w), m.cone, a)


def _search(gens, w, cone, target) -> bool:
    wg = [dot(w, g) for g in gens]

    @lru_cache(maxsize=None)
    def go(i: int, rem: tuple) -> bool:
        if not any(rem):
            return True
        if i == len(gens) or not cone.contains(rem):
            return False
        budget = dot(w, rem)
        top = floor(budget / wg[i])
        for n in range(top, -1, -1):
            nxt = tuple(r - n * x for r, x in zip(rem, gens[i]))
            if go(i + 1, nxt):
                return True
        return False

    return go(0, target)


def naive_membership(gens: Sequence[Sequence[int]], a: Sequence[int], max_total: int) -> bool:
    """Enumerate all N-combinations with total coefficient ``<= max_total``."""
    a = tuple(a)
    reach = {tuple(0 for _ in a)}
    frontier = set(reach)
    for _ in range(max_total):
        frontier = {tuple(x + y for x, y in zip(p, g)) for p in frontier for g in gens} - reach
        reach |= frontier
    return a in reach


@dataclass(frozen=True)
class MonoidalComplex:
    fan: Fan
    monoids: Mapping[int, AffineMonoid] = field(hash=False)

    @property
    def is_normal(self) -> bool:
        return all(m.normal_flag for m in self.monoids.values())

    def monoid(self, i: int) -> AffineMonoid:
        return self.monoids[i]

    def in_support(self, a: Sequence[int]) -> bool:
        return any(self.monoids[i].contains(a) for i in self.fan.maximal)

    def common_monoid(self, a, b) -> int | None:
        for i in self.fan.maximal:
            m = self.monoids[i]
            if m.contains(a) and m.contains(b):
                return i
        return None


def normal_complex(f: Fan) -> MonoidalComplex:
    return MonoidalComplex(f, {i: normal_monoid(c) for i, c in enumerate(f.cones)})


def complex_from_generators(f: Fan, gens: Mapping[int, Sequence[Sequence[int]]]) -> MonoidalComplex:
    """Monoidal complex from generator lists on (some) maximal cones.

    A face inherits the generators of the first listed cone containing it
    (``M_C ∩ C'`` is generated by the generators lying in the face ``C'``);
    cones covered by no listed cone get the normal monoid.
    """
    monoids = {}
    for i, c in enumerate(f.cones):
        src = next((j for j in sorted(gens) if i in f.faces_of(j)), None)
        if src is None:
            monoids[i] = normal_monoid(c)
            continue
        inside = [tuple(g) for g in gens[src] if c.contains(g) and any(g)]
        monoids[i] = AffineMonoid(c, tuple(sorted(set(inside))), False)
    return MonoidalComplex(f, monoids)


@dataclass
class ValidationReport:
    valid: bool
    exact: bool
    box_radius: int
    violations: list = field(default_factory=list)

    @property
    def scope(self) -> str:
        return "exact" if self.exact else f"verified up to radius {self.box_radius}"


def validate_monoidal_complex(mc: MonoidalComplex, box_radius: int = 3) -> ValidationReport:
    f = mc.fan
    violations = []
    exact = True
    for i, c in enumerate(f.cones):
        m = mc.monoids[i]
        if not m.normal_flag:
            gen_cone = cone_from_generators(m.generators, c.ambient)
            if gen_cone != c:
                violations.append((i, None, f"cn(M) = {gen_cone!r} differs from {c!r}"))
    for i, c in enumerate(f.cones):
        for j in sorted(f.faces_of(i)):
            if j == i:
                continue
            big, small = mc.monoids[i], mc.monoids[j]
            if big.normal_flag and small.normal_flag:
                continue
            exact = False
            for a in lattice_points(f.cones[j], box_radius):
                if small.contains(a) != big.contains(a):
                    violations.append((j, a, f"M_{j} and M_{i} ∩ C_{j} disagree"))
                    break
    return ValidationReport(not violations, exact, box_radius, violations)


def lattice_points(region: Cone, box_radius: int, relint: bool = False) -> list[tuple[int, ...]]:
    """Integer points of the cone (or its relative interior) in the sup-norm box."""
    test = region.relint_contains if relint else region.contains
    rng = range(-box_radius, box_radius + 1)
    return [p for p in product(rng, repeat=region.ambient) if test(p)]


def box(d: int, box_radius: int):
    return product(range(-box_radius, box_radius + 1), repeat=d)


def interior_point(c: Cone) -> tuple[int, ...]:
    """Sum of the rays: a lattice point in the relative interior."""
    if c.dim == 0:
        return tuple(0 for _ in range(c.ambient))
    return tuple(sum(r[j] for r in c.generators) for j in range(c.ambient))

