"""Shellings of pure and non-pure fans.

A linear order ``C_1, ..., C_s`` of the maximal cones is a shelling when the
boundary fan of ``C_1`` is shellable, and for every ``j > 1`` the union of
``fan(C_i) ∩ fan(C_j)`` over ``i < j`` is generated by facets of ``C_j``
(at least one, so the union is pure of dimension ``dim C_j - 1``) that form
the initial segment of some shelling of the boundary fan of ``C_j``.

Whether a facet can be appended depends only on the *set* of facets already
placed, so searches run over sets and memoize on them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations
from typing import Iterable, Iterator, Sequence

from .errors import NotMaximalPermutation, RearrangementFailed, SearchBudgetExceeded
from .geometry import Cone, Fan, cone_from_generators, faces, zero_cone


@dataclass
class StepWitness:
    """Data for one appended cone: the facets generating the intersection fan,
    a shelling of its boundary fan, and the length of the matching prefix."""

    cone: Cone
    intersection: tuple
    boundary_shelling: tuple
    prefix_length: int


@dataclass
class ShellingCertificate:
    order: list
    steps: list = field(default_factory=list)

    def dims(self, f: Fan) -> list[int]:
        return [f.cones[i].dim for i in self.order]


class _Budget:
    def __init__(self, limit: int | None):
        self.limit = limit
        self.used = 0

    def tick(self):
        self.used += 1
        if self.limit is not None and self.used > self.limit:
            raise SearchBudgetExceeded(f"search exceeded {self.limit} nodes")


_UNLIMITED = _Budget(None)

# (cone, frozenset of prefix facets) -> boundary shelling (tuple of cones) or None
_prefix_memo: dict = {}


def _facets(c: Cone) -> list[Cone]:
    return [g for g in faces(c) if g.dim == c.dim - 1]


def _meet(c1: Cone, c2: Cone) -> Cone:
    """c1 ∩ c2 for two cones of a common fan: the cone on their shared rays."""
    shared = sorted(set(c1.generators) & set(c2.generators))
    if not shared:
        return zero_cone(c1.ambient)
    return cone_from_generators(shared, c1.ambient)


def intersection_facets(c: Cone, previous: Iterable[Cone]) -> tuple[Cone, ...] | None:
    """Maximal cones of ``∪ fan(C_i) ∩ fan(c)``, or None unless all are facets of ``c``."""
    meets = {_meet(c, p) for p in previous}
    rays = {m: set(m.generators) for m in meets}
    maximal = [m for m in meets if not any(m != o and rays[m] < rays[o] for o in meets)]
    if not maximal or any(m.dim != c.dim - 1 for m in maximal):
        return None
    return tuple(sorted(maximal, key=lambda m: (m.dim, m.generators)))


def _can_append(c: Cone, placed: frozenset, budget: _Budget):
    """Boundary shelling witnessing that ``c`` may follow ``placed``, or None."""
    if not placed:
        if c.dim == 0:
            return ()
        return shell_boundary_with_prefix(c, frozenset(), budget)
    pi = intersection_facets(c, placed)
    if pi is None:
        return None
    return shell_boundary_with_prefix(c, frozenset(pi), budget)


def shell_boundary_with_prefix(c: Cone, prefix: frozenset, budget: _Budget = _UNLIMITED):
    """A shelling of fan(∂c) whose first ``len(prefix)`` facets are ``prefix``."""
    key = (c, prefix)
    if key in _prefix_memo:
        return _prefix_memo[key]
    facets = sorted(_facets(c), key=lambda g: g.generators)
    dead: set = set()

    def go(placed: frozenset, order: tuple):
        if len(placed) == len(facets):
            return order
        if placed in dead:
            return None
        budget.tick()
        pool = [g for g in facets if g not in placed]
        if not prefix <= placed:
            pool = [g for g in pool if g in prefix]
        for g in pool:
            if _can_append(g, placed, budget) is None:
                continue
            got = go(placed | {g}, order + (g,))
            if got is not None:
                return got
        dead.add(placed)
        return None

    result = go(frozenset(), ())
    _prefix_memo[key] = result
    return result


def _check_permutation(f: Fan, order: Sequence[int]):
    if sorted(order) != sorted(f.maximal) or len(set(order)) != len(order):
        raise NotMaximalPermutation("order must list every maximal cone exactly once")


def verify_shelling(
    f: Fan, order: Sequence[int], pure_required: bool = True
) -> tuple[bool, ShellingCertificate | None]:
    _check_permutation(f, order)
    if pure_required and not f.is_pure():
        return False, None
    cert = ShellingCertificate(list(order))
    placed: frozenset = frozenset()
    for i in order:
        c = f.cones[i]
        bd = _can_append(c, placed, _UNLIMITED)
        if bd is None:
            return False, None
        pi = intersection_facets(c, placed) if placed else ()
        cert.steps.append(StepWitness(c, pi, bd, len(pi)))
        placed = placed | {c}
    return True, cert


def find_shelling(
    f: Fan, nonpure: bool = False, budget: int | None = None
) -> ShellingCertificate | None:
    """Backtracking search in index-lexicographic order.

    Returns None only after exhausting the search space; raises
    :class:`SearchBudgetExceeded` when more than ``budget`` nodes are needed.
    """
    if not nonpure and not f.is_pure():
        return None
    b = _Budget(budget)
    mx = list(f.maximal)
    dead: set = set()

    def go(placed: frozenset, order: list):
        if len(order) == len(mx):
            return list(order)
        if placed in dead:
            return None
        b.tick()
        for i in mx:
            c = f.cones[i]
            if c in placed:
                continue
            if _can_append(c, placed, b) is None:
                continue
            got = go(placed | {c}, order + [i])
            if got is not None:
                return got
        dead.add(placed)
        return None

    order = go(frozenset(), [])
    if order is None:
        return None
    ok, cert = verify_shelling(f, order, pure_required=not nonpure)
    assert ok
    return cert


def enumerate_shellings(f: Fan, nonpure: bool = True) -> Iterator[list[int]]:
    """Every shelling order, by brute force over permutations (small fans only)."""
    for order in permutations(f.maximal):
        if verify_shelling(f, list(order), pure_required=not nonpure)[0]:
            yield list(order)


def rearrange_decreasing(f: Fan, cert: ShellingCertificate) -> ShellingCertificate:
    """Stable reordering by decreasing dimension, re-verified."""
    order = sorted(cert.order, key=lambda i: -f.cones[i].dim)
    ok, new = verify_shelling(f, order, pure_required=False)
    if not ok:
        raise RearrangementFailed(f"reordered sequence {order} is not a shelling")
    return new
