"""Acceptance suite: one test and one printed PASS/FAIL line per criterion.

All comparisons are exact (integer dimensions, zero tolerance).
"""

import random
import time

import pytest

from conftest import five_test_fans
from toricface.catalog import (
    full_plane,
    half_plane,
    opposite_quadrants,
    quadrant,
    random_nonpure_fan,
    random_planar_fan,
    random_pointed_cone,
    random_polygon_fan,
)
from toricface.cellcomplex import (
    build_incidence,
    chain_complex,
    cohomology_dims,
    homology_dims,
    order_complex_cohomology,
    relative_star_complex,
)
from toricface.cohomology import (
    canonical_module_dims,
    depth,
    direct_Dcomplex_piece,
    is_cohen_macaulay,
    local_cohomology_at,
    mayer_vietoris_check,
)
from toricface.field import QQ, FieldSpec
from toricface.geometry import cone_fan, fan_from_maximal
from toricface.gorenstein import check_sigma_criterion, euler_char, gorenstein_decide, is_euler_fan
from toricface.lattice import box, normal_complex
from toricface.ring import hilbert_table
from toricface.shelling import find_shelling, rearrange_decreasing, verify_shelling


@pytest.fixture
def report(capsys):
    def emit(n, ok, detail=""):
        with capsys.disabled():
            print(f"\ncriterion {n}: {'PASS' if ok else 'FAIL'}" + (f" ({detail})" if detail else ""))
        assert ok, detail

    return emit


def test_criterion_01_single_cone_exactness(report):
    rng = random.Random(2024)
    start = time.perf_counter()
    bad = []
    for k in range(20):
        c = random_pointed_cone(rng, rng.randint(1, 4))
        f = cone_fan(c)
        h = homology_dims(chain_complex(f, build_incidence(f)))
        if any(h.values()):
            bad.append((c, h))
    elapsed = time.perf_counter() - start
    report(1, not bad and elapsed < 10, f"20 cones, {elapsed:.2f}s, failures {len(bad)}")


def test_criterion_02_hochster_oracle_equivalence(report):
    start = time.perf_counter()
    mismatches = []
    count = 0
    for name, f in five_test_fans().items():
        for a in box(f.ambient, 3):
            count += 1
            if local_cohomology_at(f, a).dims != direct_Dcomplex_piece(f, a):
                mismatches.append((name, a))
    elapsed = time.perf_counter() - start
    report(2, not mismatches and elapsed < 60, f"{count} degrees, {elapsed:.2f}s, mismatches {mismatches[:3]}")


def test_criterion_03_two_route_star_cohomology(report):
    bad = []
    cones = 0
    for name, f in five_test_fans().items():
        eps = build_incidence(f)
        for ci, c in enumerate(f.cones):
            cones += 1
            cell = cohomology_dims(relative_star_complex(f, eps, ci))
            simp = order_complex_cohomology(f, ci)
            shifted = {i: simp.get(i - c.dim, 0) for i in cell}
            lost = {j: v for j, v in simp.items() if v and j + c.dim not in cell}
            if cell != shifted or lost:
                bad.append((name, ci))
    report(3, not bad, f"{cones} cones, failures {bad}")


def test_criterion_04_non_cm_witness(report):
    f = opposite_quadrants()
    d = depth(f)
    h1 = local_cohomology_at(f, (0, 0)).dims[1]
    shell = find_shelling(f, budget=None)
    ok = d == 1 and f.dim == 2 and h1 == 1 and shell is None
    report(4, ok, f"depth {d}, dim {f.dim}, dim H^1_m(0) = {h1}, shelling {shell}")


def _shellable_pure_fans(n):
    rng = random.Random(99)
    fans = []
    while len(fans) < n:
        if len(fans) % 2:
            f = random_planar_fan(rng, nrays=rng.randint(3, 6))
        else:
            f = random_polygon_fan(rng, npoints=rng.randint(5, 9))
        if f.is_pure() and find_shelling(f) is not None:
            fans.append(f)
    return fans


def test_criterion_05_shellable_implies_cm(report):
    f2 = FieldSpec(2)
    fans = _shellable_pure_fans(10)
    bad = [k for k, f in enumerate(fans) if not (is_cohen_macaulay(f, QQ) and is_cohen_macaulay(f, f2))]
    report(5, not bad, f"{len(fans)} fans, non-CM {bad}")


def test_criterion_06_gorenstein_decisions(report):
    full4, half, q2 = full_plane(), half_plane(), quadrant()
    v_full = gorenstein_decide(full4)
    three_way = v_full.gorenstein and v_full.sigma == (0, 0) and is_euler_fan(full4) and euler_char(full4, 0) == (-1) ** 2
    v_half = gorenstein_decide(half)
    crit = check_sigma_criterion(half)
    half_ok = v_half.gorenstein and v_half.sigma == (0, 1) and crit.deletion_euler and crit.deletion_cm and crit.agrees
    v_q2 = gorenstein_decide(q2)
    q2_ok = v_q2.gorenstein and v_q2.sigma == (1, 1) and all(
        set(vals) == {1} for vals in v_q2.facet_values.values()
    ) and v_q2.scope == "exact"
    report(6, three_way and half_ok and q2_ok, f"FULL4 {v_full.sigma}, HALF {v_half.sigma}, Q2 {v_q2.sigma}")


def test_criterion_07_mayer_vietoris(report):
    full4, opp = full_plane(), opposite_quadrants()

    def sub(f, keep):
        return fan_from_maximal([c for c in f.maximal_cones() if keep(c)], f.ambient)

    def upper(c):
        return all(r[1] >= 0 for r in c.generators)

    def right(c):
        return all(r[0] >= 0 for r in c.generators)

    def first_quadrant(c):
        return all(min(r) >= 0 for r in c.generators)

    decomps = [
        (full4, sub(full4, upper), sub(full4, lambda c: not upper(c))),
        (full4, sub(full4, right), sub(full4, lambda c: not right(c))),
        (full4, sub(full4, first_quadrant), sub(full4, lambda c: not first_quadrant(c))),
        (opp, sub(opp, first_quadrant), sub(opp, lambda c: not first_quadrant(c))),
        (opp, opp, opp),
        (opp, sub(opp, first_quadrant), opp),
    ]
    results = [mayer_vietoris_check(f, s1, s2, 2) for f, s1, s2 in decomps]
    report(7, all(r.holds for r in results), f"{len(results)} decompositions, {sum(r.checked for r in results)} degrees")


def test_criterion_08_vanishing(report):
    sampled = 0
    bad = []
    for name, f in five_test_fans().items():
        for a in box(f.ambient, 3):
            if f.contains_point(tuple(-x for x in a)):
                continue
            sampled += 1
            if local_cohomology_at(f, a).total() or any(direct_Dcomplex_piece(f, a).values()):
                bad.append((name, a))
    report(8, sampled > 0 and not bad, f"{sampled} degrees outside -support, nonzero {bad[:3]}")


def test_criterion_09_canonical_module_support(report):
    full4, q2 = full_plane(), quadrant()
    full_ok = all(canonical_module_dims(full4, a) == 1 for a in box(2, 3))
    q2_ok = all(
        canonical_module_dims(q2, a) == int(q2.cones[q2.maximal[0]].relint_contains(a)) for a in box(2, 3)
    )
    shift_ok = True
    for f in (full4, q2, half_plane()):
        sigma = gorenstein_decide(f).sigma
        table = hilbert_table(normal_complex(f), 6)
        for a in box(2, 3):
            shifted = tuple(x - s for x, s in zip(a, sigma))
            if canonical_module_dims(f, a) != table.entries[shifted]:
                shift_ok = False
    report(9, full_ok and q2_ok and shift_ok, f"FULL4 {full_ok}, Q2 {q2_ok}, shifted Hilbert {shift_ok}")


def test_criterion_10_rearrangement(report):
    rng = random.Random(5)
    done = 0
    reordered = 0
    failures = []
    while done < 10:
        f = random_nonpure_fan(rng)
        cert = find_shelling(f, nonpure=True)
        if cert is None:
            continue
        done += 1
        try:
            new = rearrange_decreasing(f, cert)
        except Exception as exc:
            failures.append(repr(exc))
            continue
        dims = new.dims(f)
        if dims != sorted(dims, reverse=True) or not verify_shelling(f, new.order, pure_required=False)[0]:
            failures.append(new.order)
        reordered += new.order != cert.order
    report(10, not failures, f"{done} fans, {reordered} reordered, failures {failures}")
