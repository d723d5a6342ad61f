"""Closed forms against both LP descriptions, at full size."""
import pytest

from biscone import bisection_cone_rays, closed_form_contains, homog_membership
from polytope import make_cross_polytope, make_cube, make_root_polytope
from polytope_io import perturbed_hexagon, perturbed_polygon
from sampling import random_generic_site, random_site

pytestmark = pytest.mark.slow


@pytest.mark.parametrize("ball,sites", [
    (make_cross_polytope(2), 10),
    (make_cross_polytope(3), 8),
    (make_cross_polytope(4), 4),
    (make_root_polytope(3), 10),
    (make_root_polytope(4), 5),
    (make_root_polytope(5), 2),
], ids=lambda v: v.name if hasattr(v, "name") else str(v))
def test_closed_form_cells_match_lp_cells(service, rng, ball, sites):
    generic = [random_generic_site(ball, rng) for _ in range(sites)]
    # small coordinates put sites on walls of the fan
    degenerate = [random_site(rng, ball.dim, ball.sum_zero, numerator_range=2, denominator=1)
                  for _ in range(sites)]
    for a in generic + degenerate:
        closed = service.enumerate_cells(ball, a, "closed")
        assert closed == service.enumerate_cells(ball, a, "lp"), f"{ball.name} at {a}"


def test_three_descriptions_of_bisection_cones_agree(rng):
    balls = [perturbed_hexagon(), perturbed_polygon(4, rng), make_cube(3), make_cross_polytope(3),
             make_root_polytope(4)]
    disagreements = []
    for _ in range(1000):
        ball = balls[int(rng.integers(len(balls)))]
        F, G = (int(k) for k in rng.integers(ball.n_facets, size=2))
        x = random_site(rng, ball.dim, ball.sum_zero, numerator_range=6, denominator=int(rng.integers(1, 4)))
        closed = closed_form_contains(ball, F, G, x)
        by_rays = bisection_cone_rays(ball, F, G).contains(x)
        by_lift = homog_membership(ball, F, G, x)
        if not closed == by_rays == by_lift:
            disagreements.append((ball.name, F, G, x, closed, by_rays, by_lift))
    assert not disagreements
