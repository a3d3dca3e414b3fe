import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from orbitoric.orbits import ToricFanDatum, affine_toric
from orbitoric.polyhedral import cone_from_rays, validate_fan

settings.register_profile("default", deadline=None, derandomize=True,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def small_int(lo=-5, hi=5):
    return st.integers(min_value=lo, max_value=hi)


def int_matrices(max_rows=4, max_cols=4, lo=-6, hi=6):
    return st.integers(1, max_rows).flatmap(
        lambda m: st.integers(1, max_cols).flatmap(
            lambda n: st.lists(st.lists(small_int(lo, hi), min_size=n, max_size=n),
                               min_size=m, max_size=m)))


def random_pointed_cone(rng: random.Random, rank=None, max_entry=4, ngens=None):
    """Generators pushed into the open half-space x_0 > 0, so the cone is pointed."""
    k = rank or rng.choice([2, 3])
    while True:
        count = ngens or rng.randint(3, 6)
        gens = [(rng.randint(1, max_entry),) + tuple(rng.randint(-max_entry, max_entry)
                                                      for _ in range(k - 1))
                for _ in range(count)]
        c = cone_from_rays(gens, k)
        if c.is_pointed:
            return c


@pytest.fixture
def p2():
    cones = [[(1, 0), (0, 1)], [(0, 1), (-1, -1)], [(-1, -1), (1, 0)]]
    return ToricFanDatum(validate_fan([cone_from_rays(c) for c in cones]), ("D1", "D2", "D3"))


@pytest.fixture
def quadric():
    return affine_toric(cone_from_rays([(1, 0), (1, 2)]))


@pytest.fixture
def orthant2():
    return affine_toric(cone_from_rays([(1, 0), (0, 1)]))
