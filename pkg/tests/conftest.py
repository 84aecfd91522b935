import random

import pytest

from toricface.catalog import full_plane, half_plane, opposite_quadrants, quadrant, random_polygon_fan


@pytest.fixture
def q2():
    return quadrant()


@pytest.fixture
def opp():
    return opposite_quadrants()


@pytest.fixture
def half():
    return half_plane()


@pytest.fixture
def full4():
    return full_plane()


def five_test_fans():
    """The four named fans and one seeded random 3-dimensional fan."""
    return {
        "Q2": quadrant(),
        "OPP": opposite_quadrants(),
        "HALF": half_plane(),
        "FULL4": full_plane(),
        "RAND3": random_polygon_fan(random.Random(7), npoints=7),
    }
