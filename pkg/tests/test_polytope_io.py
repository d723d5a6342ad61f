import json

import pytest

from errors import CapExceeded, InputFormatError, InvalidPolytope
from exact_core import QVector, dot, rat
from polytope import Family
from polytope_io import (BUILTIN_SOLIDS, builtin_solid, circle_polygon, load_ball, load_vrep_json, ngon,
                         parse_vrep, perturbed_polygon)
from sampling import make_rng


def test_parse_vrep_accepts_strings_and_integers():
    vrep = parse_vrep({"dim": 2, "vertices": [["1/2", 0], [0, "1"], ["-1/2", 0], [0, -1]]})
    assert vrep.dim == 2
    assert vrep.vertices[0] == QVector.of(rat(1, 2), 0)
    assert vrep.facets is None


@pytest.mark.parametrize("data", [
    [],
    {"dim": 2},
    {"vertices": []},
    {"vertices": [[1.5, 0]]},
    {"dim": 3, "vertices": [[1, 0]]},
    {"vertices": [[1, 0]], "facets": [[0, "1"]]},
])
def test_parse_vrep_rejects_malformed_input(data):
    with pytest.raises(InputFormatError):
        parse_vrep(data)


def test_load_vrep_json(tmp_path):
    path = tmp_path / "square.json"
    path.write_text(json.dumps({"vertices": [[1, 0], [0, 1], [-1, 0], [0, -1]]}))
    assert len(load_vrep_json(str(path)).vertices) == 4
    ball = load_ball(str(path), Family.POLYGON)
    assert ball.family == Family.POLYGON and ball.name == "square"


def test_load_errors(tmp_path):
    with pytest.raises(InputFormatError):
        load_vrep_json(str(tmp_path / "missing.json"))
    broken = tmp_path / "broken.json"
    broken.write_text("{not json")
    with pytest.raises(InputFormatError):
        load_vrep_json(str(broken))
    cube = tmp_path / "cube.json"
    cube.write_text(json.dumps({"vertices": [[x, y, z] for x in (1, -1) for y in (1, -1) for z in (1, -1)]}))
    with pytest.raises(InvalidPolytope):
        load_ball(str(cube), Family.POLYGON)


@pytest.mark.parametrize("n", [2, 3, 5, 8])
def test_circle_polygons_are_on_the_unit_circle(n):
    ball = circle_polygon(n)
    assert len(ball.vertices) == 2 * n
    assert all(dot(v, v) == 1 for v in ball.vertices)


def test_square_is_exact():
    assert circle_polygon(2).vertices == (QVector.of(1, 0), QVector.of(0, 1), QVector.of(-1, 0),
                                          QVector.of(0, -1))


def test_perturbed_polygons_are_seeded():
    first = perturbed_polygon(4, make_rng(3))
    second = perturbed_polygon(4, make_rng(3))
    assert first.vertices == second.vertices
    assert all(dot(v, v) == 1 for v in first.vertices)
    assert ngon(4, perturbed=True, rng=make_rng(3)).vertices == first.vertices


def test_polygon_size_limits():
    with pytest.raises(InvalidPolytope):
        circle_polygon(1)
    with pytest.raises(CapExceeded):
        circle_polygon(65)


@pytest.mark.parametrize("name,n_vertices,n_facets", [
    ("cube", 8, 6),
    ("rhombic-dodecahedron", 14, 12),
    ("hexagonal-prism", 12, 8),
    ("truncated-octahedron", 24, 14),
    ("elongated-dodecahedron", 18, 12),
])
def test_builtin_solids(name, n_vertices, n_facets):
    ball = builtin_solid(name)
    assert len(ball.vertices) == n_vertices
    assert ball.n_facets == n_facets


def test_builtin_solid_names():
    assert len(BUILTIN_SOLIDS) == 5
    with pytest.raises(InputFormatError):
        builtin_solid("dodecahedron")
