"""The toric face ring K[M_Σ]: elements, monomial ideals, Hilbert data, gradings."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import lcm
from typing import Iterable, Mapping, Sequence

from .errors import ConeNotInFan, MixedComplex, NotASubfan, NotInterior
from .field import QQ, FieldSpec
from .geometry import Cone, Fan, cone_from_generators
from .lattice import MonoidalComplex, box
from .linalg import dot
from .lp import minimize

__all__ = [
    "AdmissibleGrading",
    "EmbeddingWitness",
    "FieldSpec",
    "GradedIdeal",
    "HilbertTable",
    "RingElement",
    "check_ideal_identities",
    "find_admissible_grading",
    "hilbert_table",
    "monomial",
    "multiply",
    "omega_embedding_witness",
    "prime_ideal",
    "radical_ideal",
]


@dataclass(frozen=True)
class RingElement:
    """Sparse element ``sum c_a x^a`` of K[M_Σ]."""

    terms: Mapping[tuple[int, ...], object]
    complex: MonoidalComplex = field(compare=False, repr=False)
    field: FieldSpec = QQ

    def __post_init__(self):
        clean = {}
        for a, c in self.terms.items():
            c = self.field.coerce(c)
            if c != 0:
                if not self.complex.in_support(a):
                    raise ValueError(f"degree {a} is not in the support of the ring")
                clean[tuple(a)] = c
        object.__setattr__(self, "terms", clean)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "RingElement") -> "RingElement":
        _check_same(self, other)
        out = dict(self.terms)
        for a, c in other.terms.items():
            out[a] = self.field.coerce(out.get(a, 0) + c)
        return RingElement(out, self.complex, self.field)

    def __mul__(self, other: "RingElement") -> "RingElement":
        return multiply(self, other)

    def __eq__(self, other):
        return (
            isinstance(other, RingElement)
            and self.complex is other.complex
            and self.field == other.field
            and self.terms == other.terms
        )

    __hash__ = None


def _check_same(x: RingElement, y: RingElement):
    if x.complex is not y.complex or x.field != y.field:
        raise MixedComplex("elements belong to different rings")


def monomial(mc: MonoidalComplex, a: Sequence[int], coeff=1, field: FieldSpec = QQ) -> RingElement:
    return RingElement({tuple(a): coeff}, mc, field)


def one(mc: MonoidalComplex, field: FieldSpec = QQ) -> RingElement:
    return monomial(mc, (0,) * mc.fan.ambient, 1, field)


def multiply(x: RingElement, y: RingElement) -> RingElement:
    """x^a x^b = x^(a+b) when a, b lie in a common monoid, else 0."""
    _check_same(x, y)
    mc = x.complex
    out: dict = {}
    for a, c in x.terms.items():
        for b, e in y.terms.items():
            if mc.common_monoid(a, b) is None:
                continue
            s = tuple(p + q for p, q in zip(a, b))
            out[s] = x.field.coerce(out.get(s, 0) + c * e)
    return RingElement(out, mc, x.field)


# -- graded ideals ---------------------------------------------------------------

@dataclass(frozen=True)
class GradedIdeal:
    """A monomial ideal given by a membership predicate on degrees.

    ``kind == "prime"``: p_C, ``index`` is the cone index.
    ``kind == "radical"``: q_Σ', ``subfan`` holds the cone indices of Σ'.
    """

    kind: str
    complex: MonoidalComplex = field(repr=False, compare=False)
    index: int | None = None
    subfan: frozenset[int] = frozenset()

    def contains_monomial(self, a: Sequence[int]) -> bool:
        mc = self.complex
        if not mc.in_support(a):
            return False
        if self.kind == "prime":
            return not mc.monoids[self.index].contains(a)
        return not any(mc.monoids[i].contains(a) for i in self.subfan)

    def support(self, box_radius: int) -> frozenset:
        return frozenset(a for a in box(self.complex.fan.ambient, box_radius) if self.contains_monomial(a))

    def quotient_support(self, box_radius: int) -> frozenset:
        mc = self.complex
        return frozenset(
            a for a in box(mc.fan.ambient, box_radius) if mc.in_support(a) and not self.contains_monomial(a)
        )


def prime_ideal(mc: MonoidalComplex, c: Cone | int) -> GradedIdeal:
    i = c if isinstance(c, int) else mc.fan.index(c)
    if not 0 <= i < len(mc.fan):
        raise ConeNotInFan(f"no cone with index {i}")
    return GradedIdeal("prime", mc, index=i)


def radical_ideal(mc: MonoidalComplex, sub: Fan | Iterable[int]) -> GradedIdeal:
    f = mc.fan
    if isinstance(sub, Fan):
        idx = set()
        for c in sub.cones:
            if c not in f:
                raise NotASubfan(f"{c!r} is not a cone of the fan")
            idx.add(f.index(c))
    else:
        idx = set(sub)
    for i in idx:
        if not f.faces_of(i) <= idx:
            raise NotASubfan("cone set is not closed under faces")
    return GradedIdeal("radical", mc, subfan=frozenset(idx))


def maximal_ideal(mc: MonoidalComplex) -> GradedIdeal:
    return prime_ideal(mc, 0)


def meet_index(f: Fan, indices: Sequence[int]) -> int:
    """Index of the intersection of cones of a fan (a common face)."""
    rays = set(f.cones[indices[0]].generators)
    for i in indices[1:]:
        rays &= set(f.cones[i].generators)
    return f.index(cone_from_generators(sorted(rays), f.ambient))


@dataclass
class IdentityReport:
    holds: bool
    witness: tuple | None = None
    identity: str | None = None


def check_ideal_identities(
    mc: MonoidalComplex, cones: Sequence, box_radius: int = 3, D: Cone | int | None = None
) -> IdentityReport:
    """Check p_{C1∩..∩Cj} = Σ p_Ci and p_D + ∩ p_Ci = ∩ (p_D + p_Ci) on the box.

    Monomial ideals are compared through their degree sets: sums become
    unions and intersections become intersections.  Without ``D`` the second
    identity is checked for every cone of the fan.
    """
    f = mc.fan
    idx = [c if isinstance(c, int) else f.index(c) for c in cones]
    supp = {i: prime_ideal(mc, i).support(box_radius) for i in range(len(f))}
    meet = meet_index(f, idx)
    lhs = supp[meet]
    rhs = frozenset().union(*(supp[i] for i in idx))
    if lhs != rhs:
        return IdentityReport(False, min(lhs ^ rhs), "intersection")
    ds = range(len(f)) if D is None else [D if isinstance(D, int) else f.index(D)]
    for d_i in ds:
        left = supp[d_i] | frozenset.intersection(*(supp[i] for i in idx))
        right = frozenset.intersection(*(supp[d_i] | supp[i] for i in idx))
        if left != right:
            return IdentityReport(False, min(left ^ right), "distributive")
    return IdentityReport(True)


# -- Hilbert data ------------------------------------------------------------------

@dataclass
class HilbertTable:
    entries: dict
    box_radius: int

    def support(self) -> list:
        return sorted(a for a, v in self.entries.items() if v)


def hilbert_table(mc: MonoidalComplex, box_radius: int = 3) -> HilbertTable:
    d = mc.fan.ambient
    if len(mc.fan) == 0:
        return HilbertTable({a: 0 for a in box(d, box_radius)}, box_radius)
    return HilbertTable({a: int(mc.in_support(a)) for a in box(d, box_radius)}, box_radius)


# -- admissible gradings -------------------------------------------------------------

@dataclass
class AdmissibleGrading:
    """One integral linear form per maximal cone, agreeing on shared faces."""

    fan: Fan = field(repr=False)
    forms: dict

    def degree(self, a: Sequence[int]) -> int:
        for i in self.fan.maximal:
            if self.fan.cones[i].contains(a):
                return dot(self.forms[i], a)
        raise ValueError(f"{a} is outside the support of the fan")

    def verify(self) -> bool:
        f = self.fan
        for i in f.maximal:
            if any(dot(self.forms[i], r) < 1 for r in f.cones[i].generators):
                return False
        for i in f.maximal:
            for j in f.maximal:
                if i < j:
                    shared = set(f.cones[i].generators) & set(f.cones[j].generators)
                    if any(dot(self.forms[i], r) != dot(self.forms[j], r) for r in shared):
                        return False
        return True


def find_admissible_grading(mc: MonoidalComplex | Fan) -> AdmissibleGrading | None:
    """Exact LP for a strictly positive piecewise-linear support function."""
    f = mc.fan if isinstance(mc, MonoidalComplex) else mc
    d = f.ambient
    mx = list(f.maximal)
    n = d * len(mx)

    def var(k, v):
        row = [0] * n
        for j in range(d):
            row[k * d + j] = v[j]
        return row

    geq, eq = [], []
    objective = [0] * n
    for k, i in enumerate(mx):
        for r in f.cones[i].generators:
            geq.append((var(k, r), 1))
            objective = [o + x for o, x in zip(objective, var(k, r))]
    for k, i in enumerate(mx):
        for l in range(k + 1, len(mx)):
            shared = set(f.cones[i].generators) & set(f.cones[mx[l]].generators)
            for r in sorted(shared):
                eq.append(([x - y for x, y in zip(var(k, r), var(l, r))], 0))
    if not mx:
        return AdmissibleGrading(f, {})
    res = minimize(objective, geq, eq, n)
    if res.status != "optimal":
        return None
    den = 1
    for x in res.x:
        den = lcm(den, x.denominator)
    forms = {i: tuple(int(res.x[k * d + j] * den) for j in range(d)) for k, i in enumerate(mx)}
    g = AdmissibleGrading(f, forms)
    assert g.verify()
    return g


@dataclass
class EmbeddingWitness:
    degrees: dict
    h: int
    multipliers: dict
    checked_degrees: int
    injective: bool
    failures: list = field(default_factory=list)


def omega_embedding_witness(
    mc: MonoidalComplex,
    grading: AdmissibleGrading,
    interior_choices: Mapping[int, Sequence[int]],
    box_radius: int = 3,
    field: FieldSpec = QQ,
) -> EmbeddingWitness:
    """Data of the Z-graded embedding ω(-h) -> K[Σ] built from interior points.

    ``g_j`` is the degree of the chosen interior point of the j-th top cone,
    ``h = lcm(g_j)`` and component j is multiplied by x^((h/g_j) a_j).  The
    composed map is checked degree by degree on the box: every nonzero
    element of ω_a must land on nonzero monomials in pairwise disjoint
    relative interiors, shifted by exactly h in the Z-grading.
    """
    from .cohomology import canonical_module_basis

    f = mc.fan
    tops = [i for i in f.maximal if f.cones[i].dim == f.dim]
    degrees = {}
    for i in tops:
        a = tuple(interior_choices[i])
        if not f.cones[i].relint_contains(a):
            raise NotInterior(f"{a} is not in the relative interior of {f.cones[i]!r}")
        degrees[i] = dot(grading.forms[i], a)
    h = 1
    for g in degrees.values():
        h = lcm(h, g)
    mult = {i: tuple((h // degrees[i]) * x for x in interior_choices[i]) for i in tops}

    failures = []
    checked = 0
    seen: dict = {}
    for a in box(f.ambient, box_radius):
        vec = canonical_module_basis(f, a, field)
        if vec is None:
            continue
        checked += 1
        for cone_i, coeff in vec.items():
            if coeff == 0:
                continue
            j = cone_i
            img = tuple(x + y for x, y in zip(a, mult[j]))
            if not f.cones[j].relint_contains(img):
                failures.append((a, j, "image not interior"))
            if grading.degree(img) != grading.degree(a) + h:
                failures.append((a, j, "degree shift differs from h"))
            if img in seen and seen[img] != (a, j):
                failures.append((a, j, "image collides"))
            seen[img] = (a, j)
        if not any(c != 0 for c in vec.values()):
            failures.append((a, None, "zero image"))
    return EmbeddingWitness(degrees, h, mult, checked, not failures, failures)
