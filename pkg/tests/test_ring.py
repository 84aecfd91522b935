from fractions import Fraction

import pytest

from toricface.catalog import full_plane, half_plane, quadrant
from toricface.errors import MixedComplex, NotASubfan, NotInterior
from toricface.field import FieldSpec
from toricface.geometry import cone_from_generators
from toricface.lattice import box, complex_from_generators, interior_point, normal_complex
from toricface.ring import (
    check_ideal_identities,
    find_admissible_grading,
    hilbert_table,
    maximal_ideal,
    monomial,
    omega_embedding_witness,
    one,
    prime_ideal,
    radical_ideal,
)


def test_products_vanish_across_cones(full4):
    mc = normal_complex(full4)
    x = monomial(mc, (1, 0))
    y = monomial(mc, (0, 1))
    xinv = monomial(mc, (-1, 0))
    assert (x * y).terms == {(1, 1): 1}
    assert (x * xinv).is_zero()
    assert (x * one(mc)) == x


def test_half_plane_relation(half):
    # K[Σ] = K[x, y, z]/(xz) with x = (1,0), y = (0,1), z = (-1,0)
    mc = normal_complex(half)
    x, y, z = (monomial(mc, v) for v in [(1, 0), (0, 1), (-1, 0)])
    assert (x * z).is_zero()
    assert (x * y * z).is_zero()
    assert not (y * z).is_zero()


def test_field_coefficients(q2):
    mc = normal_complex(q2)
    f2 = FieldSpec(2)
    x = monomial(mc, (1, 0), 1, f2)
    assert (x + x).is_zero()
    xq = monomial(mc, (1, 0), Fraction(1, 2))
    assert (xq + xq).terms == {(1, 0): 1}
    with pytest.raises(MixedComplex):
        x + xq


def test_support_validation(q2):
    mc = normal_complex(q2)
    with pytest.raises(ValueError):
        monomial(mc, (-1, 0))


def test_prime_ideals(full4):
    mc = normal_complex(full4)
    ray = full4.index(cone_from_generators([(1, 0)]))
    p = prime_ideal(mc, ray)
    assert not p.contains_monomial((3, 0))
    assert p.contains_monomial((3, 1))
    assert maximal_ideal(mc).contains_monomial((1, 0))
    assert not maximal_ideal(mc).contains_monomial((0, 0))


def test_radical_ideal_requires_subfan(full4):
    mc = normal_complex(full4)
    with pytest.raises(NotASubfan):
        radical_ideal(mc, [5])
    q = radical_ideal(mc, [0])
    assert q.quotient_support(2) == frozenset({(0, 0)})


def test_ideal_identities():
    for f in (quadrant(), half_plane(), full_plane()):
        mc = normal_complex(f)
        for i in f.maximal:
            for j in f.maximal:
                assert check_ideal_identities(mc, [i, j], 2).holds


def test_hilbert_table(q2):
    t = hilbert_table(normal_complex(q2), 2)
    assert t.support() == sorted(a for a in box(2, 2) if min(a) >= 0)
    nn = complex_from_generators(q2, {3: [(2, 0), (1, 1), (0, 2)]})
    t2 = hilbert_table(nn, 2)
    assert t2.support() == sorted(a for a in box(2, 2) if min(a) >= 0 and sum(a) % 2 == 0)


def test_admissible_grading_is_verified():
    for f in (quadrant(), half_plane(), full_plane()):
        g = find_admissible_grading(f)
        assert g is not None and g.verify()
        for a in box(2, 2):
            if f.contains_point(a) and any(a):
                assert g.degree(a) >= 1


def test_omega_embedding():
    for f in (quadrant(), half_plane(), full_plane()):
        mc = normal_complex(f)
        g = find_admissible_grading(f)
        choices = {i: interior_point(f.cones[i]) for i in f.maximal}
        w = omega_embedding_witness(mc, g, choices, 2)
        assert w.injective, w.failures
        assert w.checked_degrees > 0
        assert all(w.h % d == 0 for d in w.degrees.values())


def test_omega_embedding_rejects_boundary_choice(q2):
    mc = normal_complex(q2)
    g = find_admissible_grading(q2)
    with pytest.raises(NotInterior):
        omega_embedding_witness(mc, g, {3: (1, 0)}, 2)
