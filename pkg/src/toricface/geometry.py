"""Rational pointed cones and fans.

A :class:`Cone` keeps both descriptions: its primitive extreme rays and its
primitive facet forms (chosen inside the linear span of the cone, so they are
canonical).  Two cones are equal exactly when their ray sets are equal.

A :class:`Fan` is a face-closed, validated collection of cones indexed in a
fixed order (by dimension, then rays).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import gcd
from typing import Iterable, Sequence

from .errors import ConeNotInFan, NotAFan, NotASubfan, NotPointed, ProjectionDegenerate, ZeroCone
from .linalg import (
    coordinates,
    dot,
    independent_subset,
    integer_kernel,
    lattice_basis_of_span,
    nullspace,
    primitive,
    rank_q,
    solve,
)

IntVector = tuple


@dataclass(frozen=True)
class Cone:
    """A rational pointed polyhedral cone in ``R^ambient``."""

    generators: tuple[tuple[int, ...], ...]
    facet_forms: tuple[tuple[int, ...], ...] = field(compare=False)
    equations: tuple[tuple[int, ...], ...] = field(compare=False)
    dim: int = field(compare=False)
    ambient: int
    lineality_dim: int = field(default=0, compare=False)

    @property
    def rays(self):
        return self.generators

    def contains(self, a: Sequence) -> bool:
        return all(dot(e, a) == 0 for e in self.equations) and all(
            dot(f, a) >= 0 for f in self.facet_forms
        )

    def relint_contains(self, a: Sequence) -> bool:
        return all(dot(e, a) == 0 for e in self.equations) and all(
            dot(f, a) > 0 for f in self.facet_forms
        )

    def is_face_of(self, other: "Cone") -> bool:
        return any(self == f for f in faces(other))

    def __repr__(self):
        if not self.generators:
            return f"Cone(0 in R^{self.ambient})"
        return "Cone(" + ", ".join(_fmt(r) for r in self.generators) + ")"


def _fmt(v):
    return "(" + ",".join(str(x) for x in v) + ")"


def zero_cone(d: int) -> Cone:
    eqs = tuple(tuple(int(i == j) for j in range(d)) for i in range(d))
    return Cone((), (), eqs, 0, d)


def cone_from_generators(vs: Iterable[Sequence], d: int | None = None) -> Cone:
    """Build a cone from (rational) generators, computing its facet forms.

    Raises :class:`NotPointed` when the generators span a cone with a line.
    """
    vs = [tuple(Fraction(x) for x in v) for v in vs]
    if d is None:
        if not vs:
            raise ValueError("ambient dimension needed for an empty generator list")
        d = len(vs[0])
    gens = [v for v in vs if any(x != 0 for x in v)]
    if not gens:
        return zero_cone(d)
    basis = [gens[i] for i in independent_subset(gens)]
    r = len(basis)
    coords = [coordinates(basis, g) for g in gens]

    normals: set[tuple[int, ...]] = set()
    pool = _distinct(coords)
    for subset in combinations(pool, r - 1):
        if r > 1 and rank_q(list(subset)) < r - 1:
            continue
        ns = nullspace(list(subset), r) if subset else [tuple(Fraction(int(j == 0)) for j in range(r))]
        if len(ns) != 1:
            continue
        phi = ns[0]
        vals = [dot(phi, c) for c in coords]
        if all(v >= 0 for v in vals):
            normals.add(primitive(phi))
        elif all(v <= 0 for v in vals):
            normals.add(primitive([-x for x in phi]))
    phis = sorted(normals)
    lineality = r - (rank_q(phis) if phis else 0)
    if lineality > 0:
        raise NotPointed(f"generators span a cone with a {lineality}-dimensional lineality space")

    gram = [[dot(b1, b2) for b2 in basis] for b1 in basis]
    forms = []
    for phi in phis:
        t = solve(gram, phi)
        f = [sum(t[k] * basis[k][j] for k in range(r)) for j in range(d)]
        forms.append(primitive(f))

    if r == 1:
        rays = {primitive(gens[0])}
    else:
        rays = set()
        for g in gens:
            tight = [f for f in forms if dot(f, g) == 0]
            if tight and rank_q(tight) == r - 1:
                rays.add(primitive(g))
    eqs = integer_kernel([list(x) for x in rays], d) if r < d else []
    return Cone(tuple(sorted(rays)), tuple(sorted(set(forms))), tuple(eqs), r, d)


def _distinct(vectors):
    seen = []
    for v in vectors:
        p = primitive(v)
        if p not in [primitive(w) for w in seen]:
            seen.append(v)
    return seen


def cone_from_inequalities(
    ineqs: Sequence[Sequence], eqs: Sequence[Sequence], d: int
) -> Cone:
    """The cone ``{x : f @ x >= 0 for f in ineqs, e @ x == 0 for e in eqs}``."""
    sub = nullspace([list(e) for e in eqs], d) if eqs else nullspace([], d)
    s = len(sub)
    if s == 0:
        return zero_cone(d)
    psis = [tuple(dot(f, b) for b in sub) for f in ineqs]
    psis = [p for p in psis if any(x != 0 for x in p)]
    if (rank_q(psis) if psis else 0) < s:
        raise NotPointed("inequality system has a nontrivial lineality space")
    rays = []
    for subset in combinations(_distinct(psis), s - 1):
        if s > 1 and rank_q(list(subset)) < s - 1:
            continue
        ns = nullspace(list(subset), s) if subset else [tuple(Fraction(int(j == 0)) for j in range(s))]
        if len(ns) != 1:
            continue
        y = ns[0]
        for cand in (y, tuple(-x for x in y)):
            if all(dot(p, cand) >= 0 for p in psis):
                x = [sum(cand[k] * sub[k][j] for k in range(s)) for j in range(d)]
                rays.append(x)
    return cone_from_generators(rays, d)


def intersect(c1: Cone, c2: Cone) -> Cone:
    return cone_from_inequalities(
        list(c1.facet_forms) + list(c2.facet_forms),
        list(c1.equations) + list(c2.equations),
        c1.ambient,
    )


@lru_cache(maxsize=None)
def _face_ray_sets(c: Cone) -> tuple[frozenset, ...]:
    if c.dim == 0:
        return (frozenset(),)
    zero_sets = [frozenset(r for r in c.generators if dot(f, r) == 0) for f in c.facet_forms]
    found = {frozenset(c.generators)}
    frontier = [frozenset(c.generators)]
    while frontier:
        nxt = []
        for face in frontier:
            for z in zero_sets:
                g = face & z
                if g not in found:
                    found.add(g)
                    nxt.append(g)
        frontier = nxt
    found.add(frozenset())
    return tuple(found)


def faces(c: Cone) -> list[Cone]:
    """All faces of ``c``, including ``{0}`` and ``c`` itself."""
    return list(_faces(c))


@lru_cache(maxsize=None)
def _faces(c: Cone) -> tuple[Cone, ...]:
    out = []
    for rs in _face_ray_sets(c):
        if rs == frozenset(c.generators):
            out.append(c)
        else:
            out.append(cone_from_generators(sorted(rs), c.ambient))
    return tuple(sorted(out, key=_cone_key))


def _cone_key(c: Cone):
    return (c.dim, c.generators)


def relint_contains(c: Cone, a: Sequence) -> bool:
    return c.relint_contains(a)


class Fan:
    """A finite rational pointed fan; all cones immutable and indexed."""

    def __init__(self, ambient: int, cones: Iterable[Cone]):
        self.ambient = ambient
        self.cones: tuple[Cone, ...] = tuple(sorted(set(cones), key=_cone_key))
        self._index = {c: i for i, c in enumerate(self.cones)}
        self._hash = hash((ambient, self.cones))
        raysets = [frozenset(c.generators) for c in self.cones]
        self._below = []
        self._above = [set() for _ in self.cones]
        for i, ri in enumerate(raysets):
            below = frozenset(j for j, rj in enumerate(raysets) if rj <= ri)
            self._below.append(below)
            for j in below:
                self._above[j].add(i)
        self._above = [frozenset(s) for s in self._above]
        self.maximal: tuple[int, ...] = tuple(
            i for i in range(len(self.cones)) if self._above[i] == {i}
        )
        self.dim = max((c.dim for c in self.cones), default=-1)

    def __len__(self):
        return len(self.cones)

    def __iter__(self):
        return iter(self.cones)

    def __eq__(self, other):
        return isinstance(other, Fan) and self.ambient == other.ambient and self.cones == other.cones

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Fan(d={self.ambient}, cones={len(self.cones)}, maximal={[self.cones[i] for i in self.maximal]})"

    def index(self, c: Cone) -> int:
        try:
            return self._index[c]
        except KeyError:
            raise ConeNotInFan(f"{c!r} is not a cone of the fan") from None

    def __contains__(self, c) -> bool:
        return c in self._index

    def faces_of(self, i: int) -> frozenset[int]:
        return self._below[i]

    def cofaces_of(self, i: int) -> frozenset[int]:
        return self._above[i]

    @property
    def face_relation(self) -> list[tuple[int, int]]:
        return [(j, i) for i in range(len(self.cones)) for j in sorted(self._below[i])]

    def is_pure(self) -> bool:
        return len({self.cones[i].dim for i in self.maximal}) <= 1

    def f_vector(self) -> list[int]:
        out = [0] * (self.dim + 1)
        for c in self.cones:
            out[c.dim] += 1
        return out

    def zero_index(self) -> int | None:
        return 0 if self.cones and self.cones[0].dim == 0 else None

    def carrier(self, a: Sequence) -> int | None:
        """Index of the unique cone with ``a`` in its relative interior."""
        for i, c in enumerate(self.cones):
            if c.relint_contains(a):
                return i
        return None

    def contains_point(self, a: Sequence) -> bool:
        return any(self.cones[i].contains(a) for i in self.maximal)

    def subfan(self, indices: Iterable[int]) -> "Fan":
        idx = set(indices)
        for i in idx:
            if not self._below[i] <= idx:
                raise NotASubfan("index set is not closed under taking faces")
        return Fan(self.ambient, [self.cones[i] for i in idx])

    def maximal_cones(self) -> list[Cone]:
        return [self.cones[i] for i in self.maximal]


def fan_from_maximal(cs: Sequence[Cone], d: int | None = None) -> Fan:
    """Face closure of ``cs`` after checking the common-face axiom pairwise."""
    if d is None:
        if not cs:
            raise ValueError("ambient dimension needed for an empty cone list")
        d = cs[0].ambient
    cs = list(cs)
    for c1, c2 in combinations(cs, 2):
        meet = intersect(c1, c2)
        f1 = faces(c1)
        f2 = faces(c2)
        if meet not in f1 or meet not in f2:
            raise NotAFan(f"{c1!r} ∩ {c2!r} = {meet!r} is not a common face", pair=(c1, c2))
    allc = set()
    for c in cs:
        allc.update(faces(c))
    return Fan(d, allc)


def empty_fan(d: int) -> Fan:
    return Fan(d, [])


def star_indices(f: Fan, c: Cone) -> list[int]:
    return sorted(f.cofaces_of(f.index(c)))


def star(f: Fan, c: Cone) -> list[Cone]:
    """Cones of ``f`` containing ``c``."""
    return [f.cones[i] for i in star_indices(f, c)]


def deletion(f: Fan, c: Cone) -> Fan:
    """The subfan of cones not containing ``c``."""
    s = set(star_indices(f, c))
    return f.subfan(i for i in range(len(f)) if i not in s)


def star_by_point(f: Fan, a: Sequence) -> list[Cone]:
    return [c for c in f.cones if c.contains(a)]


def star_by_point_indices(f: Fan, a: Sequence) -> list[int]:
    return [i for i, c in enumerate(f.cones) if c.contains(a)]


def cone_fan(c: Cone) -> Fan:
    return Fan(c.ambient, faces(c))


def boundary_fan(c: Cone) -> Fan:
    if c.dim == 0:
        raise ZeroCone("the zero cone has no boundary fan")
    return Fan(c.ambient, [g for g in faces(c) if g != c])


def quotient_fan(f: Fan, c: Cone) -> tuple[Fan, dict[int, int]]:
    """Project ``star(f, c)`` along ``span(c)``.

    Returns the image fan in ``R^(d - dim c)`` and the order isomorphism from
    star indices in ``f`` to cone indices in the image.
    """
    ci = f.index(c)
    st = sorted(f.cofaces_of(ci))
    if c.dim == 0:
        return f, {i: i for i in st}
    proj = integer_kernel([list(r) for r in c.generators], f.ambient)
    k = len(proj)

    def image(d_cone: Cone) -> Cone:
        pts = [tuple(dot(row, r) for row in proj) for r in d_cone.generators]
        try:
            return cone_from_generators(pts, k)
        except NotPointed as exc:
            raise ProjectionDegenerate(f"image of {d_cone!r} is not pointed") from exc

    images = {i: image(f.cones[i]) for i in st}
    tops = [images[i] for i in st if f.cofaces_of(i) <= set(st) and len(f.cofaces_of(i)) == 1]
    qf = fan_from_maximal(tops, k) if tops else Fan(k, [zero_cone(k)])
    mapping = {i: qf.index(images[i]) for i in st}
    if len(set(mapping.values())) != len(st) or len(qf) != len(st):
        raise ProjectionDegenerate("projection does not induce a bijection on the star")
    for i in st:
        for j in st:
            if (j in f.faces_of(i)) != (mapping[j] in qf.faces_of(mapping[i])):
                raise ProjectionDegenerate("projection does not preserve the face order")
    return qf, mapping


def positive_functional(c: Cone) -> tuple[Fraction, ...]:
    """An integral functional strictly positive on ``c`` minus the origin."""
    # the sum of facet forms is positive on every nonzero point of a pointed
    # cone (some facet form is nonzero there); inside the span that suffices
    if c.dim == 0:
        return tuple(0 for _ in range(c.ambient))
    return tuple(sum(f[j] for f in c.facet_forms) for j in range(c.ambient))


def lattice_facet_forms(c: Cone) -> list[tuple[Fraction, ...]]:
    """Facet forms scaled to be primitive on the lattice ``span(c) ∩ Z^d``."""
    basis = lattice_basis_of_span(list(c.generators), c.ambient)
    out = []
    for f in c.facet_forms:
        g = 0
        for b in basis:
            g = gcd(g, dot(f, b))
        out.append(tuple(Fraction(x, g) for x in f))
    return out
