import pytest
from hypothesis import given

from errors import (BadFacet, BadOrientation, InvalidPolytope, NotCentrallySymmetric,
                    NotInHyperplane, ZeroSite, ZeroVector)
from exact_core import QVector, rat
from polytope import (Family, face_cone_of, facet_label, facet_max_gauge, gauge,
                      is_weak_general_position, make_ball, make_cross_polytope, make_cube,
                      make_polygon, make_root_polytope, make_vrep)
from strategies import points, sum_zero_points


@pytest.mark.parametrize("family,dim,n_vertices,n_facets", [
    (Family.CUBE, 3, 8, 6),
    (Family.CROSS, 3, 6, 8),
    (Family.ROOT_A, 3, 6, 6),
    (Family.ROOT_A, 4, 12, 14),
])
def test_family_sizes(family, dim, n_vertices, n_facets):
    ball = make_ball(family, dim)
    assert len(ball.vertices) == n_vertices
    assert ball.n_facets == n_facets


def test_opposite_facets_are_antipodal(cross3, root4):
    for ball in (cross3, root4):
        for k in range(ball.n_facets):
            assert ball.facet(ball.opposite(k)).normal == -ball.facet(k).normal
            assert ball.opposite(ball.opposite(k)) == k


def test_facet_labels(cube3, cross3, root3, square):
    assert facet_label(cube3, 0) == "F1+"
    assert facet_label(cube3, 5) == "F3-"
    assert facet_label(cross3, 3) == "F{1,2}"
    assert facet_label(root3, 4) == "F{1,3}"
    assert facet_label(square, 0) == "F1"
    assert cube3.index_of((2, -1)) == 3


def test_bad_facet_index(cube3):
    with pytest.raises(BadFacet):
        cube3.facet(6)
    with pytest.raises(BadFacet):
        cube3.index_of((4, 1))


def test_gauge_closed_forms(cube3, cross3, root3):
    assert gauge(cube3, QVector.of(3, -1, 2)) == 3
    assert gauge(cross3, QVector.of(3, -1, 2)) == 6
    assert gauge(root3, QVector.of(2, -3, 1)) == 3
    assert gauge(cube3, QVector.zero(3)) == 0


def test_root_gauge_needs_sum_zero(root3):
    with pytest.raises(NotInHyperplane):
        gauge(root3, QVector.of(1, 1, 1))


def test_vertices_have_gauge_one(cube3, cross3, root4, hexagon):
    for ball in (cube3, cross3, root4, hexagon):
        assert all(gauge(ball, v) == 1 for v in ball.vertices)


@given(points(3), points(3))
def test_cube_and_cross_gauge_match_facet_maximum(x, y):
    for ball in (make_cube(3), make_cross_polytope(3)):
        assert gauge(ball, x) == facet_max_gauge(ball, x)
        assert gauge(ball, -x) == gauge(ball, x)
        assert gauge(ball, x + y) <= gauge(ball, x) + gauge(ball, y)
        assert gauge(ball, x * rat(5, 2)) == gauge(ball, x) * rat(5, 2)


@given(sum_zero_points(4))
def test_root_gauge_matches_facet_maximum(x):
    ball = make_root_polytope(4)
    assert gauge(ball, x) == facet_max_gauge(ball, x)


def test_face_cone_of(cube2, cross3):
    # cube(2) facet indices: 0 = (1,+), 1 = (1,-), 2 = (2,+), 3 = (2,-)
    assert face_cone_of(cube2, QVector.of(3, 1)) == {0}
    assert face_cone_of(cube2, QVector.of(1, 1)) == {0, 2}
    assert face_cone_of(cross3, QVector.of(5, 1, -2)) == {0b011}


def test_face_cone_of_zero(cube2):
    with pytest.raises(ZeroVector):
        face_cone_of(cube2, QVector.zero(2))


def test_weak_general_position(cube3, cross3):
    assert is_weak_general_position(cube3, QVector.of(5, 2, -1))
    assert not is_weak_general_position(cube3, QVector.of(0, 1, 2))
    assert not is_weak_general_position(cross3, QVector.of(3, 1, -2))
    with pytest.raises(ZeroSite):
        is_weak_general_position(cube3, QVector.zero(3))


def test_polygon_validation():
    ccw = [QVector.of(1, 0), QVector.of(0, 1), QVector.of(-1, 0), QVector.of(0, -1)]
    assert make_polygon(ccw).n_facets == 4
    with pytest.raises(BadOrientation):
        make_polygon(list(reversed(ccw)))
    with pytest.raises(NotCentrallySymmetric):
        make_polygon([QVector.of(1, 0), QVector.of(0, 1), QVector.of(-2, 0), QVector.of(0, -1)])
    with pytest.raises(InvalidPolytope):
        make_polygon(ccw[:3])


def test_polygon_facet_normals_point_outward(hexagon):
    for k, facet in enumerate(hexagon.facets):
        assert facet.offset > 0
        assert all(gauge(hexagon, v) == 1 for v in hexagon.facet_vertices(k))


def test_vrep_recovers_cube_facets():
    vertices = [QVector.of(x, y, z) for x in (1, -1) for y in (1, -1) for z in (1, -1)]
    ball = make_vrep(vertices)
    assert ball.n_facets == 6
    assert all(len(f.vertex_indices) == 4 for f in ball.facets)
    assert gauge(ball, QVector.of(3, -1, 2)) == 3


def test_vrep_with_facet_list():
    vertices = [QVector.of(1, 0), QVector.of(0, 1), QVector.of(-1, 0), QVector.of(0, -1)]
    ball = make_vrep(vertices, facets=[[0, 1], [1, 2], [2, 3], [3, 0]])
    assert ball.n_facets == 4
    with pytest.raises(InvalidPolytope):
        make_vrep(vertices, facets=[[0, 2]])


def test_vrep_rejects_asymmetric_and_non_vertices():
    with pytest.raises(NotCentrallySymmetric):
        make_vrep([QVector.of(1, 0), QVector.of(0, 1), QVector.of(-1, 0)])
    square = [QVector.of(1, 1), QVector.of(-1, 1), QVector.of(-1, -1), QVector.of(1, -1)]
    with pytest.raises(InvalidPolytope):
        make_vrep(square + [QVector.of(1, 0), QVector.of(-1, 0)])
