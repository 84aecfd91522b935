from hypothesis import given, settings
from hypothesis import strategies as st

from toricface.catalog import quadrant
from toricface.geometry import cone_from_generators
from toricface.lattice import (
    complex_from_generators,
    interior_point,
    lattice_points,
    monoid_from_generators,
    naive_membership,
    normal_complex,
    validate_monoidal_complex,
)

vec2 = st.tuples(st.integers(0, 3), st.integers(0, 3))


def test_normal_monoid_membership(full4):
    mc = normal_complex(full4)
    assert mc.is_normal
    assert mc.in_support((-2, 5))
    assert mc.common_monoid((1, 0), (0, 1)) is not None
    assert mc.common_monoid((1, 1), (-1, -1)) is None


def test_non_normal_monoid():
    m = monoid_from_generators([(2, 0), (1, 1), (0, 2)])
    assert m.contains((3, 1))
    assert not m.contains((1, 0))
    assert not m.contains((2, 1))
    assert m.contains((0, 0))


@given(st.lists(vec2.filter(any), min_size=1, max_size=4), vec2)
@settings(max_examples=80, deadline=None)
def test_membership_matches_enumeration(gens, a):
    m = monoid_from_generators(gens)
    # every generator has coordinate sum >= 1, so a needs at most sum(a) of them
    assert m.contains(a) == naive_membership(m.generators, a, sum(a))


def test_validation_of_generated_complex():
    q = quadrant()
    mc = complex_from_generators(q, {3: [(2, 0), (1, 1), (0, 2)]})
    rep = validate_monoidal_complex(mc, 3)
    assert rep.valid and not rep.exact
    assert rep.scope == "verified up to radius 3"
    assert normal_complex(q) and validate_monoidal_complex(normal_complex(q)).scope == "exact"


def test_generators_with_wrong_cone_are_flagged():
    q = quadrant()
    mc = complex_from_generators(q, {3: [(1, 0), (1, 1)]})
    rep = validate_monoidal_complex(mc, 2)
    assert not rep.valid


def test_interior_point_and_lattice_points():
    c = cone_from_generators([(1, 0), (1, 2)])
    assert c.relint_contains(interior_point(c))
    pts = lattice_points(c, 2, relint=True)
    assert all(c.relint_contains(p) for p in pts)
    assert (1, 1) in pts and (1, 0) not in pts
