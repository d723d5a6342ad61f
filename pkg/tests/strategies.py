"""Hypothesis strategies for exact points."""
from fractions import Fraction

import hypothesis.strategies as st

from exact_core import QVector


def rationals(bound=12, max_denominator=6):
    return st.builds(Fraction, st.integers(-bound, bound), st.integers(1, max_denominator))


def points(dim, bound=12, max_denominator=6):
    return st.lists(rationals(bound, max_denominator), min_size=dim, max_size=dim).map(
        lambda cs: QVector(tuple(cs)))


def nonzero_points(dim, **kwargs):
    return points(dim, **kwargs).filter(lambda v: not v.is_zero())


def sum_zero_points(dim, bound=12, max_denominator=6):
    """Last coordinate balances the others."""
    return st.lists(rationals(bound, max_denominator), min_size=dim - 1, max_size=dim - 1).map(
        lambda cs: QVector(tuple(cs) + (-sum(cs, Fraction(0)),)))


def integer_points(dim, bound=40, sum_zero=False):
    """Integer sites; with sum_zero the last coordinate balances the others."""
    size = dim - 1 if sum_zero else dim
    return st.lists(st.integers(-bound, bound), min_size=size, max_size=size).map(
        lambda cs: QVector.of(*(cs + [-sum(cs)] if sum_zero else cs)))
