import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from toricfan.fan import Fan
from toricfan.families import yu_fan


@pytest.fixture(scope="session")
def p1_fan():
    return Fan.from_cones(1, [(1,), (-1,)], [[0], [1]])


@pytest.fixture(scope="session")
def p2_fan():
    return Fan.from_cones(2, [(1, 0), (0, 1), (-1, -1)], [[0, 1], [0, 2], [1, 2]])


@pytest.fixture(scope="session")
def p3_fan():
    return Fan.from_cones(
        3,
        [(1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, -1, -1)],
        [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]],
    )


@pytest.fixture(scope="session")
def p1xp1_fan():
    return Fan.from_cones(
        2, [(1, 0), (0, 1), (-1, 0), (0, -1)], [[0, 1], [1, 2], [2, 3], [0, 3]]
    )


@pytest.fixture(scope="session")
def weighted_p112_fan():
    # Simplicial but not smooth: D_0 has Cartier index 2.
    return Fan.from_cones(2, [(1, 0), (0, 1), (-1, -2)], [[0, 1], [0, 2], [1, 2]])


@pytest.fixture(scope="session")
def suspension_fan():
    # Cone over the unit square plus four simplicial cones through (0,0,-1).
    rays = [(1, 0, 1), (0, 1, 1), (-1, 0, 1), (0, -1, 1), (0, 0, -1)]
    cones = [[0, 1, 2, 3], [0, 1, 4], [1, 2, 4], [2, 3, 4], [3, 0, 4]]
    return Fan.from_cones(3, rays, cones)


@pytest.fixture(scope="session")
def cube_suspension_fan():
    # Complete rank-4 fan with no ray in Egyptian position: removing a cube
    # ray leaves it on three facet hyperplanes of the base (tangency).
    from itertools import product
    cube = [tuple(list(s) + [1]) for s in product([-1, 1], repeat=3)]
    rays = cube + [(0, 0, 0, -1)]
    cones = [list(range(8))]
    for axis in range(3):
        for sign in (-1, 1):
            facet = [i for i, r in enumerate(cube) if r[axis] == sign]
            cones.append(sorted(facet + [8]))
    return Fan.from_cones(4, rays, cones)


@pytest.fixture(scope="session")
def yu_grid():
    cache = {}

    def get(n, u):
        if (n, u) not in cache:
            cache[(n, u)] = yu_fan(n, u)
        return cache[(n, u)]

    return get
