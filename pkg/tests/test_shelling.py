import random

import pytest

from toricface.catalog import random_nonpure_fan, random_planar_fan, random_polygon_fan
from toricface.cohomology import is_cohen_macaulay
from toricface.errors import NotMaximalPermutation, SearchBudgetExceeded
from toricface.field import FieldSpec
from toricface.geometry import cone_from_generators, fan_from_maximal
from toricface.shelling import (
    enumerate_shellings,
    find_shelling,
    rearrange_decreasing,
    verify_shelling,
)


def order_of(f, *gens):
    return [f.index(cone_from_generators(g, f.ambient)) for g in gens]


def test_single_cone(q2):
    ok, cert = verify_shelling(q2, list(q2.maximal))
    assert ok and cert.order == list(q2.maximal)


def test_full_plane_cyclic_order(full4):
    order = order_of(full4, [(1, 0), (0, 1)], [(0, 1), (-1, 0)], [(-1, 0), (0, -1)], [(0, -1), (1, 0)])
    ok, cert = verify_shelling(full4, order)
    assert ok
    last = cert.steps[-1]
    assert last.prefix_length == 2
    assert set(last.boundary_shelling[:2]) == set(last.intersection)


def test_opposite_quadrants_never_shell(opp):
    for order in ([opp.maximal[0], opp.maximal[1]], [opp.maximal[1], opp.maximal[0]]):
        assert not verify_shelling(opp, order)[0]
    assert find_shelling(opp) is None
    assert find_shelling(opp, nonpure=True) is None


def test_half_plane(half):
    cert = find_shelling(half)
    assert cert is not None and len(cert.order) == 2


def test_permutation_required(full4):
    with pytest.raises(NotMaximalPermutation):
        verify_shelling(full4, list(full4.maximal)[:2])
    with pytest.raises(NotMaximalPermutation):
        verify_shelling(full4, [0] + list(full4.maximal)[1:])


def test_budget(full4):
    with pytest.raises(SearchBudgetExceeded):
        find_shelling(full4, budget=1)
    assert find_shelling(full4, budget=10_000) is not None


def _planar_subfan(rng):
    """Random 2-dim fan in the plane, possibly disconnected."""
    base = random_planar_fan(rng, nrays=rng.randint(4, 7))
    mx = base.maximal_cones()
    keep = [c for c in mx if rng.random() < 0.7] or mx[:1]
    return fan_from_maximal(keep, 2)


def _connected(f):
    mx = f.maximal_cones()
    seen = {mx[0]}
    stack = [mx[0]]
    while stack:
        c = stack.pop()
        for d in mx:
            if d not in seen and set(c.generators) & set(d.generators):
                seen.add(d)
                stack.append(d)
    return len(seen) == len(mx)


def test_planar_fans_shell_iff_connected():
    rng = random.Random(12)
    for _ in range(30):
        f = _planar_subfan(rng)
        assert (find_shelling(f) is not None) == _connected(f)


def test_exhaustive_search_agrees_with_enumeration():
    rng = random.Random(2)
    fans = [_planar_subfan(rng) for _ in range(10)] + [random_nonpure_fan(rng) for _ in range(5)]
    for f in fans:
        cert = find_shelling(f, nonpure=True)
        assert (cert is not None) == any(True for _ in enumerate_shellings(f))


def test_round_trip_and_cm():
    rng = random.Random(30)
    f2 = FieldSpec(2)
    for _ in range(8):
        f = random_polygon_fan(rng, npoints=rng.randint(5, 8))
        cert = find_shelling(f)
        assert cert is not None
        assert verify_shelling(f, cert.order)[0]
        assert is_cohen_macaulay(f) and is_cohen_macaulay(f, f2)


def nonpure_example():
    a = cone_from_generators([(1, 0, 1), (0, 1, 1), (0, 0, 1)])
    c = cone_from_generators([(1, 0, 1), (0, 1, 1), (1, 1, 1)])
    b = cone_from_generators([(0, 0, 1), (-1, -1, -5)])
    return fan_from_maximal([a, b, c]), (a, b, c)


def test_rearrangement_of_nonpure_shelling():
    f, (a, b, c) = nonpure_example()
    order = [f.index(a), f.index(b), f.index(c)]
    ok, cert = verify_shelling(f, order, pure_required=False)
    assert ok
    assert not verify_shelling(f, order, pure_required=True)[0]
    new = rearrange_decreasing(f, cert)
    assert new.order == [f.index(a), f.index(c), f.index(b)]
    # the lower-dimensional cone cannot go first
    assert not verify_shelling(f, [f.index(b), f.index(a), f.index(c)], pure_required=False)[0]


def test_rearrangement_keeps_pure_orders(full4):
    cert = find_shelling(full4)
    assert rearrange_decreasing(full4, cert).order == cert.order


def test_nonpure_witnesses_are_pure():
    rng = random.Random(17)
    for _ in range(10):
        f = random_nonpure_fan(rng)
        cert = find_shelling(f, nonpure=True)
        if cert is None:
            continue
        for step in cert.steps[1:]:
            assert step.intersection
            assert {g.dim for g in step.intersection} == {step.cone.dim - 1}
        new = rearrange_decreasing(f, cert)
        dims = new.dims(f)
        assert dims == sorted(dims, reverse=True)
