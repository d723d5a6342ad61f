from fractions import Fraction
from functools import cmp_to_key

import hypothesis.strategies as st
import pytest
from hypothesis import assume, given

from errors import DimMismatch, NoSolution, SingularMap, Underdetermined, ZeroDenominator
from exact_core import (QMatrix, QVector, compare_angles, cross3, determinant, dot, format_rational,
                        inverse, primitive_direction, rank, rat, solve_linear, to_rational)
from strategies import points, rationals


def test_rat_reduces_and_normalizes_sign():
    assert rat(2, 4) == Fraction(1, 2)
    assert rat(3, -6) == Fraction(-1, 2)
    assert rat(3, -6).denominator == 2


def test_rat_zero_denominator():
    with pytest.raises(ZeroDenominator):
        rat(1, 0)


def test_floats_are_refused():
    with pytest.raises(TypeError):
        to_rational(0.5)
    with pytest.raises(TypeError):
        QVector.of(1, 0.25)


def test_dot_and_dimension_check():
    assert dot(QVector.of(1, 2, 3), QVector.of(4, -5, rat(1, 3))) == -5
    with pytest.raises(DimMismatch):
        dot(QVector.of(1, 2), QVector.of(1, 2, 3))


def test_format_rational():
    assert format_rational(Fraction(4, 2)) == "2"
    assert format_rational(Fraction(-3, 6)) == "-1/2"
    assert QVector.of(rat(1, 2), -1).to_strings() == ["1/2", "-1"]


def test_solve_linear_unique():
    A = QMatrix.from_lists([[2, 1], [1, 3]])
    assert solve_linear(A, QVector.of(3, 5)) == QVector.of(rat(4, 5), rat(7, 5))
    assert solve_linear(QMatrix.identity(3), QVector.of(1, -2, 3)) == QVector.of(1, -2, 3)


def test_solve_linear_inconsistent():
    A = QMatrix.from_lists([[1, 1], [2, 2]])
    with pytest.raises(NoSolution):
        solve_linear(A, QVector.of(1, 3))


def test_solve_linear_rank_deficient():
    A = QMatrix.from_lists([[1, 1], [2, 2]])
    with pytest.raises(Underdetermined) as info:
        solve_linear(A, QVector.of(1, 2))
    assert info.value.rank == 1


def test_determinant_tracks_row_swaps():
    assert determinant(QMatrix.from_lists([[2, 1], [1, 3]])) == 5
    assert determinant(QMatrix.from_lists([[0, 1], [1, 0]])) == -1
    assert determinant(QMatrix.from_lists([[1, 2], [2, 4]])) == 0


def test_inverse_of_singular_matrix():
    with pytest.raises(SingularMap):
        inverse(QMatrix.from_lists([[1, 2], [2, 4]]))


def test_rank():
    assert rank([QVector.of(1, 0, 0), QVector.of(0, 1, 0), QVector.of(1, 1, 0)]) == 2
    assert rank([]) == 0


def test_primitive_direction():
    assert primitive_direction(QVector.of(rat(2, 3), rat(-4, 3))) == (1, -2)
    assert primitive_direction(QVector.of(0, 6)) == (0, 1)


def test_cross3_is_orthogonal():
    u, v = QVector.of(1, 2, 3), QVector.of(-1, 0, 2)
    w = cross3(u, v)
    assert dot(w, u) == 0 and dot(w, v) == 0


def test_compare_angles_orders_counter_clockwise():
    directions = [(0, -1), (-1, 0), (1, 1), (1, 0), (-1, -1), (0, 1), (1, -1)]
    ordered = sorted(directions, key=cmp_to_key(compare_angles))
    assert ordered == [(1, 0), (1, 1), (0, 1), (-1, 0), (-1, -1), (0, -1), (1, -1)]


@given(st.lists(st.lists(rationals(), min_size=3, max_size=3), min_size=3, max_size=3), points(3))
def test_solve_linear_recovers_solution(rows, x):
    A = QMatrix.from_lists(rows)
    assume(determinant(A) != 0)
    assert solve_linear(A, A.apply(x)) == x


@given(st.lists(st.lists(rationals(), min_size=3, max_size=3), min_size=3, max_size=3))
def test_inverse_times_matrix_is_identity(rows):
    A = QMatrix.from_lists(rows)
    assume(determinant(A) != 0)
    A_inv = inverse(A)
    for k in range(3):
        e = QVector.unit(3, k)
        assert A.apply(A_inv.apply(e)) == e
