"""Exact two-phase simplex over the rationals with Bland's rule.

Only what the package needs: free variables, ``>=`` and ``=`` rows, a linear
objective to minimize.  Pivoting is deterministic (lowest index), so the same
problem always yields the same vertex.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


@dataclass(frozen=True)
class LPResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    x: tuple[Fraction, ...] | None = None
    value: Fraction | None = None


def minimize(
    objective: Sequence,
    geq: Sequence[tuple[Sequence, object]] = (),
    eq: Sequence[tuple[Sequence, object]] = (),
    nvars: int | None = None,
) -> LPResult:
    """Minimize ``objective @ x`` over free ``x`` with ``a @ x >= b`` and ``a @ x == b`` rows."""
    if nvars is None:
        nvars = len(objective)
    # x = xp - xm, one surplus per >= row
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    nsur = len(geq)
    ncols = 2 * nvars + nsur
    for k, (a, b) in enumerate(geq):
        row = [Fraction(v) for v in a] + [-Fraction(v) for v in a] + [Fraction(0)] * nsur
        row[2 * nvars + k] = Fraction(-1)
        rows.append(row)
        rhs.append(Fraction(b))
    for a, b in eq:
        row = [Fraction(v) for v in a] + [-Fraction(v) for v in a] + [Fraction(0)] * nsur
        rows.append(row)
        rhs.append(Fraction(b))
    for i in range(len(rows)):
        if rhs[i] < 0:
            rows[i] = [-v for v in rows[i]]
            rhs[i] = -rhs[i]
    cost = [Fraction(v) for v in objective] + [-Fraction(v) for v in objective] + [Fraction(0)] * nsur

    m = len(rows)
    if m == 0:
        if any(c != 0 for c in cost):
            return LPResult("unbounded")
        return LPResult("optimal", tuple(Fraction(0) for _ in range(nvars)), Fraction(0))

    # phase 1 with artificials
    tab = [rows[i] + [Fraction(int(i == j)) for j in range(m)] + [rhs[i]] for i in range(m)]
    basis = [ncols + i for i in range(m)]
    phase1 = [Fraction(0)] * ncols + [Fraction(1)] * m
    status = _run(tab, basis, phase1)
    if _objective_value(tab, basis, phase1) != 0:
        return LPResult("infeasible")
    # drive artificials out of the basis
    for i in range(m):
        if basis[i] >= ncols:
            piv = next((j for j in range(ncols) if tab[i][j] != 0), None)
            if piv is not None:
                _pivot(tab, basis, i, piv)
    keep = [i for i in range(m) if basis[i] < ncols]
    tab = [tab[i][:ncols] + [tab[i][-1]] for i in keep]
    basis = [basis[i] for i in keep]
    if not tab:
        return LPResult("optimal", tuple(Fraction(0) for _ in range(nvars)), Fraction(0))
    status = _run(tab, basis, cost)
    if status == "unbounded":
        return LPResult("unbounded")
    full = [Fraction(0)] * ncols
    for i, b in enumerate(basis):
        full[b] = tab[i][-1]
    x = tuple(full[j] - full[nvars + j] for j in range(nvars))
    value = sum((Fraction(c) * v for c, v in zip(objective, x)), Fraction(0))
    return LPResult("optimal", x, value)


def feasible_point(geq=(), eq=(), nvars: int = 0, objective: Sequence | None = None):
    """A feasible point (minimizing ``objective`` when given) or None."""
    res = minimize(objective if objective is not None else [0] * nvars, geq, eq, nvars)
    if res.status == "infeasible":
        return None
    if res.status == "unbounded":
        # feasibility is all the caller asked for
        res = minimize([0] * nvars, geq, eq, nvars)
    return res.x


def _objective_value(tab, basis, cost):
    return sum((cost[b] * tab[i][-1] for i, b in enumerate(basis)), Fraction(0))


def _run(tab, basis, cost) -> str:
    ncols = len(tab[0]) - 1
    while True:
        # reduced costs
        entering = None
        for j in range(ncols):
            if j in basis:
                continue
            rc = cost[j] - sum((cost[b] * tab[i][j] for i, b in enumerate(basis)), Fraction(0))
            if rc < 0:
                entering = j
                break
        if entering is None:
            return "optimal"
        best = None
        for i in range(len(tab)):
            a = tab[i][entering]
            if a > 0:
                ratio = tab[i][-1] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            return "unbounded"
        _pivot(tab, basis, best[1], entering)


def _pivot(tab, basis, r, c):
    inv = 1 / tab[r][c]
    tab[r] = [v * inv for v in tab[r]]
    for i in range(len(tab)):
        if i != r and tab[i][c] != 0:
            f = tab[i][c]
            tab[i] = [v - f * w for v, w in zip(tab[i], tab[r])]
    basis[r] = c
