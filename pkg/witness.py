"""
PolyBisect Witness Module
Explicit points of bisector cells bis_{F,G}(0, a) for the cube, cross-polytope and
root polytope, built from the constructive side of their cone membership tests.
"""
import logging
from fractions import Fraction
from typing import List, Optional

from errors import NotInHyperplane, UnsupportedFamily
from exact_core import QVector, Rational
from polytope import Family, UnitBall, check_point, gauge

from biscone import SubsetSums, closed_form_contains

logger = logging.getLogger(__name__)


def in_face_cone(ball: UnitBall, F: int, x: QVector) -> bool:
    value = ball.lam(F, x)
    return all(value >= ball.lam(k, x) for k in range(ball.n_facets))


def verify_witness(ball: UnitBall, F: int, G: int, a: QVector, x: QVector) -> bool:
    """x in C_F, x - a in C_G and the two gauges agree, all exactly."""
    try:
        check_point(ball, x)
    except NotInHyperplane:
        return False
    y = x - a
    return in_face_cone(ball, F, x) and in_face_cone(ball, G, y) and gauge(ball, x) == gauge(ball, y)


def _cube_witness(d: int, i: int, s1: int, j: int, s2: int, a: QVector) -> QVector:
    S = sum((abs(c) for c in a), Fraction(0))
    if i == j:
        if s1 != s2:
            return a * Fraction(1, 2)
        return QVector.unit(d, i, s1) * S
    # reduce to (+, +) by flipping the signs of coordinates i and j
    flip = [1] * d
    flip[i] = s1
    flip[j] = s2
    b = QVector(tuple(f * c for f, c in zip(flip, a)))
    coords = list(b.coords)
    coords[i] = S
    coords[j] = S + b[j]
    return QVector(tuple(f * c for f, c in zip(flip, coords)))


def _cross_witness(s: SubsetSums, I: int, J: int) -> QVector:
    a, full = s.a, s.full
    Ic, Jc = full ^ I, full ^ J
    D = s(J) - s(Jc) + s(Ic) - s(I)
    lam = (s(J) - s(Jc)) / D if D != 0 else Fraction(0)
    coords: List[Rational] = []
    for k, c in enumerate(a):
        bit = 1 << k
        if bool(I & bit) != bool(J & bit):
            coords.append(lam * c)
        elif I & bit:
            coords.append(max(Fraction(0), c))
        else:
            coords.append(min(Fraction(0), c))
    return QVector(tuple(coords))


def _first_index(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def _root_witness(s: SubsetSums, I: int, J: int) -> QVector:
    a, full, d = s.a, s.full, s.d
    Ic, Jc = full ^ I, full ^ J
    both, neither = I & J, Ic & Jc

    if both and not neither:
        # mirror of the disjoint case: B_{I,J} = -B_{I^c,J^c}
        return -_root_witness(SubsetSums(-a), Ic, Jc)

    coords: List[Rational] = [Fraction(0)] * d
    if not both and not neither:
        return a * Fraction(1, 2)

    if both and neither:
        pos_part, neg_part = s(I & Jc), s(J & Ic)
        spread = pos_part - neg_part
        lam = Fraction(0)
        if spread != 0:
            lam = ((s(neither) - s(both)) / spread + 1) / 2
        target = -lam * (pos_part + neg_part)
        for k in range(d):
            bit = 1 << k
            if bit & both:
                coords[k] = max(Fraction(0), a[k])
            elif bit & neither:
                coords[k] = min(Fraction(0), a[k])
            else:
                coords[k] = lam * a[k]
        current = sum((coords[k] for k in range(d) if (both | neither) >> k & 1), Fraction(0))
        if current < target:
            coords[_first_index(both)] += target - current
        elif current > target:
            coords[_first_index(neither)] -= current - target
        return QVector(tuple(coords))

    # disjoint I, J with a nonempty rest R
    aI, aJ = s(I), s(J)
    if aI > 0 and -aJ <= aI:
        lam, mu, target = -aJ / aI, Fraction(0), aJ
    elif -aJ > aI:
        lam, mu, target = Fraction(1), (aJ + aI) / aJ, -2 * aI - aJ
    else:
        return QVector.zero(d)
    for k in range(d):
        bit = 1 << k
        if bit & I:
            coords[k] = lam * a[k]
        elif bit & J:
            coords[k] = mu * a[k]
        else:
            coords[k] = min(Fraction(0), a[k])
    current = sum((coords[k] for k in range(d) if neither >> k & 1), Fraction(0))
    coords[_first_index(neither)] -= current - target
    return QVector(tuple(coords))


def closed_form_witness(ball: UnitBall, F: int, G: int, a: QVector) -> Optional[QVector]:
    """
    A point of bis_{F,G}(0, a), or None when the cell is empty.
    Raises UnsupportedFamily for families without a construction.
    """
    if ball.family not in (Family.CUBE, Family.CROSS, Family.ROOT_A):
        raise UnsupportedFamily(f"no explicit witness construction for {ball.family.value}")
    if not closed_form_contains(ball, F, G, a):
        return None
    f, g = ball.facet(F).label, ball.facet(G).label
    if ball.family == Family.CUBE:
        return _cube_witness(ball.dim, f[0] - 1, f[1], g[0] - 1, g[1], a)
    s = SubsetSums(a)
    if ball.family == Family.CROSS:
        return _cross_witness(s, f, g)
    return _root_witness(s, f, g)
