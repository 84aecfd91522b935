"""Oriented chain complexes of the cell complex of a fan, and of order complexes.

Indexing convention, used everywhere: the cone ``C`` is the cell of index
``dim C - 1``.  The zero cone therefore sits in index -1 and plays the role
of the augmentation.  For a simplicial complex the empty face sits in index
-1, so ``H~^{-1}({∅}) = K`` and ``H~^{-1}`` vanishes for nonempty complexes.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Sequence

from .errors import AxiomViolation, ConeNotInFan, NotAComplex
from .field import QQ, FieldSpec
from .geometry import Cone, Fan
from .linalg import coordinates, det, independent_subset, rank_sparse


@dataclass(frozen=True)
class IncidenceFunction:
    """Signs ``values[(i, j)]`` for cone ``j`` a facet of cone ``i``."""

    fan: Fan = field(repr=False, compare=False)
    values: dict

    def __call__(self, i: int, j: int) -> int:
        return self.values.get((i, j), 0)


def _orientation(c: Cone, rng: random.Random | None) -> list:
    rays = list(c.generators)
    if rng is not None:
        rng.shuffle(rays)
    return [rays[k] for k in independent_subset(rays)]


def build_incidence(f: Fan, rng: random.Random | None = None) -> IncidenceFunction:
    """Incidence signs from determinants of chosen ordered bases.

    Each cone gets an ordered basis of its span taken greedily from its rays
    (sorted, or shuffled by ``rng``).  For a facet ``C'`` of ``C`` and a ray
    ``v`` of ``C`` outside ``C'`` the sign is that of the determinant of
    ``(basis(C'), v)`` written in ``basis(C)``.  The three axioms are checked
    before returning.
    """
    bases = [_orientation(c, rng) for c in f.cones]
    values = {}
    for i, c in enumerate(f.cones):
        for j in f.faces_of(i):
            sub = f.cones[j]
            if sub.dim != c.dim - 1:
                continue
            v = next(r for r in c.generators if r not in set(sub.generators))
            frame = bases[j] + [v]
            m = [coordinates(bases[i], x) for x in frame]
            s = det(m)
            values[(i, j)] = 1 if s > 0 else -1
    eps = IncidenceFunction(f, values)
    verify_incidence(f, eps)
    return eps


def verify_incidence(f: Fan, eps: IncidenceFunction) -> None:
    for i, c in enumerate(f.cones):
        for j in f.faces_of(i):
            gap = c.dim - f.cones[j].dim
            val = eps(i, j)
            if gap == 1 and val not in (1, -1):
                raise AxiomViolation(f"missing sign on facet pair {(i, j)}")
            if gap != 1 and val != 0:
                raise AxiomViolation(f"sign on non-facet pair {(i, j)}")
            if gap == 2:
                mids = [k for k in f.faces_of(i) if j in f.faces_of(k) and f.cones[k].dim == c.dim - 1]
                if len(mids) != 2:
                    raise AxiomViolation(f"interval {(i, j)} is not a diamond")
                total = sum(eps(i, k) * eps(k, j) for k in mids)
                if total != 0:
                    raise AxiomViolation(f"diamond relation fails on {(i, j)}")
        if c.dim == 1 and eps(i, 0) != 1:
            raise AxiomViolation(f"0-cell {i} does not meet the augmentation with +1")
    for (i, j) in eps.values:
        if j not in f.faces_of(i) or f.cones[i].dim - f.cones[j].dim != 1:
            raise AxiomViolation(f"sign on non-facet pair {(i, j)}")


@dataclass
class FiniteChainComplex:
    """Chain complex over a field with labelled bases.

    ``cells[i]`` lists the basis labels of C_i; ``boundary[i]`` is the map
    C_i -> C_{i-1} stored column-wise as ``{row_position: value}`` dicts.
    """

    field: FieldSpec
    cells: dict
    boundary: dict

    @property
    def indices(self) -> list[int]:
        return sorted(self.cells)

    def rank(self, i: int) -> int:
        cols = self.boundary.get(i)
        if not cols:
            return 0
        return rank_sparse(cols, self.field.p)

    def check(self) -> None:
        """Raise :class:`NotAComplex` unless consecutive boundaries compose to 0."""
        p = self.field.p
        for i in self.indices:
            top = self.boundary.get(i + 1)
            low = self.boundary.get(i)
            if not top or not low:
                continue
            for col in top:
                acc: dict = {}
                for r, v in col.items():
                    for rr, w in low[r].items():
                        acc[rr] = acc.get(rr, 0) + v * w
                if any((x % p if p else x) != 0 for x in acc.values()):
                    raise NotAComplex(f"boundary composition nonzero at index {i + 1}")

    def euler_characteristic(self) -> int:
        return sum((-1) ** i * len(c) for i, c in self.cells.items())


def _complex_from_cells(cells_by_index: dict, faces: Callable, field: FieldSpec) -> FiniteChainComplex:
    pos = {i: {lab: k for k, lab in enumerate(labs)} for i, labs in cells_by_index.items()}
    boundary = {}
    for i, labs in cells_by_index.items():
        if i - 1 not in pos:
            continue
        cols = []
        for lab in labs:
            col = {}
            for sub, sign in faces(lab):
                if sub in pos[i - 1]:
                    col[pos[i - 1][sub]] = sign
            cols.append(col)
        boundary[i] = cols
    return FiniteChainComplex(field, {i: list(l) for i, l in cells_by_index.items()}, boundary)


def _cells_of(f: Fan, indices: Iterable[int]) -> dict:
    out: dict = {}
    for i in sorted(indices):
        out.setdefault(f.cones[i].dim - 1, []).append(i)
    return out


def chain_complex(f: Fan, eps: IncidenceFunction, field: FieldSpec = QQ) -> FiniteChainComplex:
    """Augmented oriented chain complex of the cell complex of ``f``."""
    return _fan_complex(f, eps, range(len(f)), field)


def relative_star_complex(
    f: Fan, eps: IncidenceFunction, c: Cone | int, field: FieldSpec = QQ
) -> FiniteChainComplex:
    """Quotient of the chain complex by the subcomplex of the deletion of ``c``.

    Its basis is the set of cells of the star of ``c``.
    """
    ci = c if isinstance(c, int) else f.index(c)
    if not 0 <= ci < len(f):
        raise ConeNotInFan(f"no cone with index {ci}")
    return _fan_complex(f, eps, f.cofaces_of(ci), field)


def _fan_complex(f, eps, indices, field) -> FiniteChainComplex:
    def faces(i):
        return [(j, eps(i, j)) for j in f.faces_of(i) if eps(i, j)]

    cells = _cells_of(f, indices)
    lo, hi = -1, max(f.dim - 1, -1)
    for k in range(lo, hi + 1):
        cells.setdefault(k, [])
    return _complex_from_cells(cells, faces, field)


# -- simplicial complexes ------------------------------------------------------------

@dataclass
class SimplicialComplex:
    """Faces are tuples of vertex labels sorted by ``vertices`` order; () is the empty face."""

    vertices: list
    faces: list

    @property
    def dim(self) -> int:
        return max((len(s) for s in self.faces), default=0) - 1

    def f_vector(self) -> dict:
        out: dict = {}
        for s in self.faces:
            out[len(s) - 1] = out.get(len(s) - 1, 0) + 1
        return out


def order_complex(elements: Sequence[Hashable], less: Callable[[Hashable, Hashable], bool]) -> SimplicialComplex:
    """Chains of the poset ``elements`` ordered by the strict relation ``less``.

    ``elements`` must be listed in a linear extension of the order.
    """
    elems = list(elements)
    faces = [()]

    def extend(chain, start):
        for k in range(start, len(elems)):
            e = elems[k]
            if not chain or less(chain[-1], e):
                new = chain + (e,)
                faces.append(new)
                extend(new, k + 1)

    extend((), 0)
    return SimplicialComplex(elems, faces)


def star_order_complex(f: Fan, c: Cone | int) -> SimplicialComplex:
    """Order complex of ``star(c)`` with ``c`` removed."""
    ci = c if isinstance(c, int) else f.index(c)
    elems = sorted((i for i in f.cofaces_of(ci) if i != ci), key=lambda i: (f.cones[i].dim, i))

    def less(a, b):
        return a != b and a in f.faces_of(b)

    return order_complex(elems, less)


def simplicial_chain_complex(sc: SimplicialComplex, field: FieldSpec = QQ) -> FiniteChainComplex:
    cells: dict = {}
    for s in sc.faces:
        cells.setdefault(len(s) - 1, []).append(s)
    for k in range(-1, sc.dim + 1):
        cells.setdefault(k, [])

    def faces(s):
        return [(s[:k] + s[k + 1:], (-1) ** k) for k in range(len(s))]

    return _complex_from_cells(cells, faces, field)


# -- (co)homology ------------------------------------------------------------------------

def homology_dims(cc: FiniteChainComplex) -> dict[int, int]:
    """dim ker ∂_i - dim im ∂_{i+1} for every index of the complex."""
    cc.check()
    ranks = {i: cc.rank(i) for i in cc.indices}
    return {i: len(cc.cells[i]) - ranks.get(i, 0) - ranks.get(i + 1, 0) for i in cc.indices}


def cohomology_dims(cc: FiniteChainComplex) -> dict[int, int]:
    """Cohomology of the dual complex, ranks taken on transposed matrices."""
    cc.check()
    ranks = {}
    for i in cc.indices:
        cols = cc.boundary.get(i)
        if not cols:
            ranks[i] = 0
            continue
        rows: dict = {}
        for c, col in enumerate(cols):
            for r, v in col.items():
                rows.setdefault(r, {})[c] = v
        ranks[i] = rank_sparse(list(rows.values()), cc.field.p)
    # δ^{i-1}: C^{i-1} -> C^i is the transpose of ∂_i
    return {i: len(cc.cells[i]) - ranks.get(i + 1, 0) - ranks.get(i, 0) for i in cc.indices}


def reduced_cohomology_of_star(f: Fan, eps: IncidenceFunction, c, field: FieldSpec = QQ) -> dict[int, int]:
    return cohomology_dims(relative_star_complex(f, eps, c, field))


def order_complex_cohomology(f: Fan, c, field: FieldSpec = QQ) -> dict[int, int]:
    return cohomology_dims(simplicial_chain_complex(star_order_complex(f, c), field))
