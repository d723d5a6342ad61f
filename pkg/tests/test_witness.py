import pytest
from hypothesis import example, given

from biscone import closed_form_contains
from errors import UnsupportedFamily
from exact_core import QVector, rat
from polytope import make_cross_polytope, make_cube, make_root_polytope
from strategies import nonzero_points, sum_zero_points
from witness import closed_form_witness, in_face_cone, verify_witness


def _check_all_pairs(ball, a):
    for F in range(ball.n_facets):
        for G in range(ball.n_facets):
            x = closed_form_witness(ball, F, G, a)
            if closed_form_contains(ball, F, G, a):
                assert x is not None and verify_witness(ball, F, G, a, x), (F, G, x)
            else:
                assert x is None


def test_root_witness_examples(root3):
    a = QVector.of(2, -3, 1)
    # facet index = mask - 1: ({1}, {2}) and ({1}, {1,2})
    assert closed_form_witness(root3, 0, 1, a) == QVector.of(2, -1, -1)
    assert closed_form_witness(root3, 0, 2, a) == QVector.of(2, -1, -1)
    assert closed_form_witness(root3, 2, 0, a) is None


def test_cross_witness_example(cross2):
    assert closed_form_witness(cross2, 0b11, 0b10, QVector.of(3, 1)) == QVector.of(1, 1)


def test_verify_witness_rejects_wrong_points(cube3):
    a = QVector.of(5, 2, -1)
    assert verify_witness(cube3, 0, 1, a, a * rat(1, 2))
    assert not verify_witness(cube3, 0, 1, a, QVector.of(1, 0, 0))
    assert in_face_cone(cube3, 0, QVector.of(3, 1, -3))


def test_no_construction_for_polygons(square):
    with pytest.raises(UnsupportedFamily):
        closed_form_witness(square, 0, 1, QVector.of(1, 2))


@given(nonzero_points(3))
@example(QVector.of(1, 1, 0))
@example(QVector.of(5, 2, -1))
def test_cube_witnesses(a):
    _check_all_pairs(make_cube(3), a)


@given(nonzero_points(3))
@example(QVector.of(3, 1, -2))
@example(QVector.of(1, 1, 0))
def test_cross_witnesses(a):
    _check_all_pairs(make_cross_polytope(3), a)


@given(sum_zero_points(4).filter(lambda v: not v.is_zero()))
@example(QVector.of(2, -3, 1, 0))
@example(QVector.of(1, -1, 1, -1))
def test_root_witnesses(a):
    _check_all_pairs(make_root_polytope(4), a)
