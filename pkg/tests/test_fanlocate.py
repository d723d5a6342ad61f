import pytest
from hypothesis import given

from bisector import BisectorService
from errors import DegeneratePoint, NotInHyperplane, UnsupportedFamily
from exact_core import QVector, rat
from fanlocate import (CrossSig, CubeSig, WassersteinSig, fan_rays_polygon, locate, polygon_fan_rays,
                       same_cone, signature_to_json, wasserstein_p)
from polytope import make_cross_polytope, make_cube, make_root_polytope
from polytope_io import builtin_solid, circle_polygon, perturbed_polygon
from sampling import random_generic_pair
from strategies import sum_zero_points


def test_square_rays(square):
    rays = polygon_fan_rays(square)
    assert len(rays) == 8
    assert rays[0].direction == (1, 0) and rays[0].label == (1, 3)
    assert fan_rays_polygon(square)[1] == QVector.of(1, 1)


def test_hexagon_ray_counts(hexagon, skew_hexagon):
    assert len(fan_rays_polygon(hexagon)) == 12
    assert len(fan_rays_polygon(skew_hexagon)) == 18


def test_locate_polygon(square):
    signature = locate(square, QVector.of(3, 1))
    assert signature.lower.direction == (1, 0) and signature.lower.label == (1, 3)
    assert signature.upper.direction == (1, 1) and signature.upper.label == (1, 4)
    assert signature_to_json(signature)["upper"] == {"direction": [1, 1], "label": "v1-v4"}


def test_locate_polygon_on_a_ray(square):
    with pytest.raises(DegeneratePoint):
        locate(square, QVector.of(2, 2))


def test_locate_cube(cube3):
    assert locate(cube3, QVector.of(5, 2, -1)) == CubeSig((1, 1, -1), 1)
    assert signature_to_json(locate(cube3, QVector.of(-1, 2, 3))) == {
        "family": "cube", "signs": [-1, 1, 1], "dominant": 3}
    with pytest.raises(DegeneratePoint):
        locate(cube3, QVector.of(1, 1, 2))


def test_locate_cross_polytope(cross3):
    assert locate(cross3, QVector.of(5, 1, -2)) == CrossSig((1, 1, -1), (1, 1, 1, 1))
    with pytest.raises(DegeneratePoint) as info:
        locate(cross3, QVector.of(3, 1, -2))
    assert info.value.witness


def test_locate_wasserstein(root3):
    signature = locate(root3, QVector.of(2, -3, 1))
    assert signature == WassersteinSig(3, frozenset({0b001, 0b101}), frozenset({0b001, 0b101}),
                                       frozenset({0b010}))
    assert signature.positive_sums() == {0b001, 0b100, 0b101}
    assert signature_to_json(signature) == {
        "family": "wasserstein",
        "positiveSums": [[1], [3], [1, 3]],
        "heavyPositive": [[1], [1, 3]],
        "lightNegative": [[2]],
    }


def test_locate_needs_closed_form_family():
    with pytest.raises(UnsupportedFamily):
        locate(builtin_solid("cube"), QVector.of(5, 2, -1))
    with pytest.raises(UnsupportedFamily):
        polygon_fan_rays(make_cube(2))


def test_same_cone(root3, cube3):
    assert same_cone(root3, QVector.of(2, -3, 1), QVector.of(3, -4, 1))
    assert not same_cone(root3, QVector.of(2, -3, 1), QVector.of(1, -3, 2))
    assert same_cone(cube3, QVector.of(5, 2, -1), QVector.of(4, 3, rat(-1, 2)))


def test_wasserstein_p_values():
    assert wasserstein_p(QVector.of(2, -3, 1)) == -4
    assert wasserstein_p(QVector.of(1, -3, 2)) == -4
    assert wasserstein_p(QVector.of(-2, 3, -1)) == 4
    assert wasserstein_p(QVector.zero(4)) == 0
    with pytest.raises(NotInHyperplane):
        wasserstein_p(QVector.of(1, 1, 1))


def test_wasserstein_p_is_affine_on_fan_cones(root3):
    a, b = QVector.of(2, -3, 1), QVector.of(4, -7, 3)
    assert same_cone(root3, a, b)
    mid = (a + b) * rat(1, 2)
    assert wasserstein_p(mid) == (wasserstein_p(a) + wasserstein_p(b)) / 2
    # across cones it bends
    c = QVector.of(1, -3, 2)
    assert wasserstein_p((a + c) * rat(1, 2)) == -6


@given(sum_zero_points(4))
def test_wasserstein_p_is_odd(a):
    assert wasserstein_p(-a) == -wasserstein_p(a)


@pytest.mark.parametrize("ball", [make_cube(3), make_cross_polytope(3), make_root_polytope(4)],
                         ids=["cube", "l1", "wasserstein"])
def test_fan_signature_decides_equivalence(ball, rng):
    service = BisectorService(parallel=False)
    for _ in range(15):
        a, b = random_generic_pair(ball, rng, numerator_range=4, denominator=1)
        assert same_cone(ball, a, b) == service.equivalent(ball, a, b)
        assert same_cone(ball, a, a * 2) and service.equivalent(ball, a, a * 2)


def test_polygon_fan_signature_decides_equivalence(rng):
    service = BisectorService(parallel=False)
    ball = perturbed_polygon(3, rng)
    for _ in range(15):
        a, b = random_generic_pair(ball, rng, numerator_range=6, denominator=1)
        assert same_cone(ball, a, b) == service.equivalent(ball, a, b)


@pytest.mark.slow
@pytest.mark.parametrize("build", [
    lambda rng: circle_polygon(5),
    lambda rng: perturbed_polygon(5, rng),
    lambda rng: make_cube(5),
    lambda rng: make_cross_polytope(4),
    lambda rng: make_cross_polytope(5),
    lambda rng: make_root_polytope(5),
], ids=["circle-10-gon", "perturbed-10-gon", "cube5", "l1-4", "l1-5", "wasserstein5"])
def test_fan_soundness_on_sampled_pairs(service, rng, build):
    ball = build(rng)
    counterexamples = []
    for _ in range(200):
        a, b = random_generic_pair(ball, rng)
        if same_cone(ball, a, b) != service.equivalent(ball, a, b):
            counterexamples.append((a, b))
    assert not counterexamples
