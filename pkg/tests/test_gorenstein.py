import random

import pytest

from toricface.catalog import random_planar_fan, random_polygon_fan, trivial_fan
from toricface.cohomology import canonical_module_dims, is_cohen_macaulay
from toricface.errors import NoSigma, NotInIdealSupport
from toricface.geometry import cone_from_generators, fan_from_maximal
from toricface.gorenstein import (
    check_sigma_criterion,
    deletion_by_point,
    euler_char,
    euler_char_order_complex,
    euler_data,
    gorenstein_decide,
    is_euler_fan,
    omega_support_matches_shift,
    sigma_decompose,
    support_shift_on_box,
)
from toricface.lattice import box


def test_euler_characteristics(full4, half, q2):
    zero = full4.index(cone_from_generators([], 2))
    ray = full4.index(cone_from_generators([(1, 0)]))
    assert euler_char(full4, zero) == 1
    assert euler_char(full4, ray) == -1
    assert euler_char(half, half.index(cone_from_generators([(1, 0)]))) == 0
    assert euler_char(q2, 0) == 0


def test_two_euler_formulas_agree(full4, opp, half):
    rng = random.Random(4)
    fans = [full4, opp, half, random_polygon_fan(rng), random_planar_fan(rng)]
    for f in fans:
        ed = euler_data(f)
        for ci in range(len(f)):
            assert ed.chi[ci] == euler_char_order_complex(f, ci)


def test_euler_fans(full4, q2):
    assert is_euler_fan(full4)
    assert not is_euler_fan(q2)
    assert is_euler_fan(trivial_fan(2))


def test_verdicts(full4, half, q2, opp):
    v = gorenstein_decide(full4)
    assert v.gorenstein and v.sigma == (0, 0) and v.euler_fan
    v = gorenstein_decide(half)
    assert v.gorenstein and v.sigma == (0, 1) and v.scope == "exact"
    v = gorenstein_decide(q2)
    assert v.gorenstein and v.sigma == (1, 1)
    assert set(v.facet_values[3]) == {1}
    v = gorenstein_decide(opp)
    assert not v.gorenstein and not v.cm


def test_a1_singularity_is_gorenstein():
    # lattice facet forms y and 2x - y both equal 1 at (1,1)
    f = fan_from_maximal([cone_from_generators([(1, 0), (1, 2)])])
    v = gorenstein_decide(f)
    assert v.gorenstein and v.sigma == (1, 1)
    assert support_shift_on_box(f, v.sigma, 4) is None


def test_non_gorenstein_cone():
    # cone over a segment of lattice length 3 at height 1: C[x,y]^(Z/3) type
    f = fan_from_maximal([cone_from_generators([(1, 0), (1, 3)])])
    v = gorenstein_decide(f)
    assert v.cm and not v.gorenstein
    # no shift works on the box either
    for s in box(2, 3):
        if f.cones[f.maximal[0]].relint_contains(s):
            assert support_shift_on_box(f, s, 4) is not None


def test_gorenstein_properties_on_random_fans():
    rng = random.Random(8)
    for _ in range(12):
        f = random_planar_fan(rng) if rng.random() < 0.5 else random_polygon_fan(rng)
        v = gorenstein_decide(f)
        assert not v.gorenstein or v.cm
        if not v.gorenstein:
            continue
        sigma = v.sigma
        assert all(f.cones[i].contains(sigma) for i in f.maximal)
        assert support_shift_on_box(f, sigma, 3) is None
        assert omega_support_matches_shift(f, sigma, 2) is None
        assert abs(euler_char(f, f.carrier(sigma))) == 1
        if any(sigma):
            assert check_sigma_criterion(f).agrees
        else:
            assert is_euler_fan(f) and euler_char(f, 0) == (-1) ** f.dim


def test_support_shift_refutes_wrong_sigma(half):
    assert support_shift_on_box(half, (0, 1), 3) is None
    assert support_shift_on_box(half, (0, 2), 3) is not None


def test_sigma_criterion(half, q2, full4):
    rep = check_sigma_criterion(half)
    assert rep.sigma == (0, 1)
    assert rep.in_all_maximal and rep.deletion_euler and rep.deletion_cm and rep.agrees
    assert len(deletion_by_point(half, (0, 1))) == 3
    assert check_sigma_criterion(q2).agrees
    with pytest.raises(NoSigma):
        check_sigma_criterion(full4)


def test_sigma_decompose(half):
    assert sigma_decompose(half, (0, 1), (2, 3)) == (3, (2, 0))
    assert sigma_decompose(half, (0, 1), (0, 1)) == (1, (0, 0))
    with pytest.raises(NotInIdealSupport):
        sigma_decompose(half, (0, 1), (1, 0))


def test_sigma_decompose_round_trip(half, q2):
    for f, sigma in ((half, (0, 1)), (q2, (1, 1))):
        for a in box(2, 3):
            ci = f.carrier(a)
            if ci is None or not f.cones[ci].contains(sigma):
                continue
            n, b = sigma_decompose(f, sigma, a)
            assert n >= 1
            assert tuple(x + n * s for x, s in zip(b, sigma)) == a
            assert f.contains_point(b)
            assert not f.contains_point(tuple(x - s for x, s in zip(b, sigma)))


def test_canonical_module_is_shifted_ring(half):
    for a in box(2, 3):
        assert canonical_module_dims(half, a) == int(half.contains_point((a[0], a[1] - 1)))
    assert is_cohen_macaulay(deletion_by_point(half, (0, 1)))
