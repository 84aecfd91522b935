"""Exact linear algebra over Q, GF(p) and Z.

Vectors are tuples, matrices are lists of rows.  Everything here works with
:class:`fractions.Fraction` or plain ``int`` and never touches floats.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

Vector = tuple
Matrix = list


def to_fraction_rows(rows: Iterable[Sequence]) -> list[list[Fraction]]:
    return [[Fraction(x) for x in row] for row in rows]


def dot(u: Sequence, v: Sequence):
    return sum(x * y for x, y in zip(u, v))


def primitive(vec: Sequence) -> tuple[int, ...]:
    """Scale a rational vector to the primitive integer vector on its ray."""
    fr = [Fraction(x) for x in vec]
    den = 1
    for x in fr:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return tuple(0 for _ in ints)
    return tuple(x // g for x in ints)


def rref(rows: Sequence[Sequence], ncols: int | None = None):
    """Reduced row echelon form over Q.

    Returns ``(R, pivots)`` where ``R`` holds only the nonzero rows.
    """
    m = to_fraction_rows(rows)
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank_q(rows: Sequence[Sequence]) -> int:
    if not rows:
        return 0
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[tuple[Fraction, ...]]:
    """Basis of ``{x : rows @ x = 0}`` over Q."""
    if not rows:
        return [tuple(Fraction(int(i == j)) for j in range(ncols)) for i in range(ncols)]
    r, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, p in zip(r, pivots):
            x[p] = -row[f]
        basis.append(tuple(x))
    return basis


def nullspace_mod_p(rows: Sequence[Sequence[int]], ncols: int, p: int) -> list[tuple[int, ...]]:
    """Basis of the kernel of an integer matrix over GF(p)."""
    m = [[x % p for x in row] for row in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], p - 2, p)
        m[r] = [(x * inv) % p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [(x - f * y) % p for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    basis = []
    for fcol in (c for c in range(ncols) if c not in pivots):
        x = [0] * ncols
        x[fcol] = 1
        for row, pc in zip(m, pivots):
            x[pc] = (-row[fcol]) % p
        basis.append(tuple(x))
    return basis


def det(rows: Sequence[Sequence]) -> Fraction:
    m = to_fraction_rows(rows)
    n = len(m)
    sign = 1
    result = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            sign = -sign
        result *= m[c][c]
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] / m[c][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return sign * result


def solve(rows: Sequence[Sequence], rhs: Sequence) -> tuple[Fraction, ...] | None:
    """One solution of ``rows @ x = rhs`` (free variables set to 0), or None."""
    ncols = len(rows[0]) if rows else 0
    aug = [list(row) + [b] for row, b in zip(rows, rhs)]
    r, pivots = rref(aug, ncols + 1)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for row, p in zip(r, pivots):
        x[p] = row[ncols]
    return tuple(x)


def independent_subset(vectors: Sequence[Sequence]) -> list[int]:
    """Indices of a greedy (first-come) maximal linearly independent subset."""
    chosen: list[int] = []
    basis: list = []
    for i, v in enumerate(vectors):
        if rank_q(basis + [list(v)]) > len(basis):
            basis.append(list(v))
            chosen.append(i)
    return chosen


def coordinates(basis: Sequence[Sequence], v: Sequence) -> tuple[Fraction, ...]:
    """Coordinates of ``v`` in ``basis`` (which must span a space containing v)."""
    cols = [list(col) for col in zip(*basis)]
    x = solve(cols, list(v))
    if x is None:
        raise ValueError("vector not in span of basis")
    return x


# -- integer lattices ---------------------------------------------------------

def _col_hermite(a: list[list[int]], ncols: int):
    """Column-reduce the integer matrix ``a`` by unimodular operations.

    Returns ``(h, u)`` with ``a @ u == h`` where the nonzero columns of ``h``
    come first; ``u`` is unimodular.
    """
    h = [row[:] for row in a]
    u = [[int(i == j) for j in range(ncols)] for i in range(ncols)]
    col = 0
    for r in range(len(h)):
        if col >= ncols:
            break
        while True:
            nz = [c for c in range(col, ncols) if h[r][c] != 0]
            if not nz:
                break
            c0 = min(nz, key=lambda c: abs(h[r][c]))
            _swap_cols(h, u, col, c0)
            done = True
            for c in range(col + 1, ncols):
                if h[r][c] != 0:
                    q = h[r][c] // h[r][col]
                    _sub_col(h, u, c, col, q)
                    if h[r][c] != 0:
                        done = False
            if done:
                break
        if any(h[r][c] != 0 for c in range(col, ncols)):
            col += 1
    return h, u, col


def _swap_cols(h, u, i, j):
    if i == j:
        return
    for row in h:
        row[i], row[j] = row[j], row[i]
    for row in u:
        row[i], row[j] = row[j], row[i]


def _sub_col(h, u, target, source, q):
    for row in h:
        row[target] -= q * row[source]
    for row in u:
        row[target] -= q * row[source]


def integer_kernel(rows: Sequence[Sequence[int]], ncols: int) -> list[tuple[int, ...]]:
    """Basis of the saturated lattice ``{x in Z^n : rows @ x = 0}``."""
    a = [[int(x) for x in row] for row in rows]
    if not a:
        return [tuple(int(i == j) for j in range(ncols)) for i in range(ncols)]
    _, u, r = _col_hermite(a, ncols)
    return [tuple(u[i][c] for i in range(ncols)) for c in range(r, ncols)]


def lattice_basis_of_span(vectors: Sequence[Sequence], d: int) -> list[tuple[int, ...]]:
    """Integer basis of ``span(vectors) ∩ Z^d``."""
    if not vectors or rank_q(vectors) == 0:
        return []
    ann = integer_kernel([primitive(v) for v in vectors], d)
    if not ann:
        return [tuple(int(i == j) for j in range(d)) for i in range(d)]
    return integer_kernel(ann, d)


# -- ranks over a field ---------------------------------------------------------

def rank_mod_p(rows: Sequence[Sequence[int]], p: int) -> int:
    m = [{j: x % p for j, x in enumerate(row) if x % p} for row in rows]
    return _sparse_rank(m, p)


def rank_sparse(rows: list[dict], p: int | None = None) -> int:
    """Rank of a matrix given as a list of ``{col: value}`` rows."""
    if p is None:
        m = [{j: Fraction(x) for j, x in row.items() if x} for row in rows]
    else:
        m = [{j: x % p for j, x in row.items() if x % p} for row in rows]
    return _sparse_rank(m, p)


def _sparse_rank(m: list[dict], p: int | None) -> int:
    rank = 0
    pivot_rows: dict[int, dict] = {}
    for row in m:
        row = dict(row)
        while row:
            c = min(row)
            prow = pivot_rows.get(c)
            if prow is None:
                if p is None:
                    inv = 1 / row[c]
                    row = {j: x * inv for j, x in row.items()}
                else:
                    inv = pow(row[c], p - 2, p)
                    row = {j: (x * inv) % p for j, x in row.items()}
                pivot_rows[c] = row
                rank += 1
                break
            f = row[c]
            for j, x in prow.items():
                v = row.get(j, 0) - f * x
                if p is not None:
                    v %= p
                if v:
                    row[j] = v
                else:
                    row.pop(j, None)
    return rank
