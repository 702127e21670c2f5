import numpy as np
import pytest
from hypothesis import settings

from conetomo.polytope import convex_hull, cross_polytope, cube

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


@pytest.fixture
def cube3():
    return cube(0.25)


@pytest.fixture
def octahedron():
    return cross_polytope(0.3)


@pytest.fixture
def tetra():
    return convex_hull(np.array([[0.3, 0, 0], [0, 0.3, 0], [0, 0, 0.3], [-0.1, -0.1, -0.1]]))
