import hypothesis
import pytest

from bisector import BisectorService
from polytope import make_cross_polytope, make_cube, make_root_polytope
from polytope_io import affine_regular_hexagon, circle_polygon, perturbed_hexagon
from sampling import make_rng

SEED = 20240611

hypothesis.settings.register_profile("exact", deadline=None, max_examples=40)
hypothesis.settings.load_profile("exact")


@pytest.fixture
def square():
    # vertices (1,0), (0,1), (-1,0), (0,-1)
    return circle_polygon(2)


@pytest.fixture
def hexagon():
    return affine_regular_hexagon()


@pytest.fixture
def skew_hexagon():
    return perturbed_hexagon()


@pytest.fixture
def cube2():
    return make_cube(2)


@pytest.fixture
def cube3():
    return make_cube(3)


@pytest.fixture
def cross2():
    return make_cross_polytope(2)


@pytest.fixture
def cross3():
    return make_cross_polytope(3)


@pytest.fixture
def root3():
    return make_root_polytope(3)


@pytest.fixture
def root4():
    return make_root_polytope(4)


@pytest.fixture
def rng():
    return make_rng(SEED)


@pytest.fixture
def service():
    return BisectorService(parallel=False)
