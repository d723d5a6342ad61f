"""
PolyBisect Fan Location Module
Identifies the maximal cone of the bisection fan that contains a general-position
site, for polygons, cubes, cross-polytopes and the discrete Wasserstein norm, and
evaluates the piecewise-linear Wasserstein p-function.
"""
import logging
from dataclasses import dataclass
from functools import cmp_to_key
from typing import Any, Dict, FrozenSet, List, Tuple, Union

from config import MAX_WASSERSTEIN_P_DIM
from errors import CapExceeded, DegeneratePoint, NotInHyperplane, UnsupportedFamily
from exact_core import QVector, Rational, compare_angles, cross2, primitive_direction
from polytope import Family, UnitBall, mask_to_subset

from biscone import SubsetSums
from bisector import genericity

logger = logging.getLogger(__name__)


# ========================================
# SIGNATURES
# ========================================

@dataclass(frozen=True)
class FanRay:
    direction: Tuple[int, ...]
    label: Tuple[int, int]       # (i, j) of the first v_i - v_j on the ray, 1-based

    def to_json(self) -> Dict[str, Any]:
        return {"direction": list(self.direction), "label": f"v{self.label[0]}-v{self.label[1]}"}


@dataclass(frozen=True)
class PolygonSig:
    lower: FanRay
    upper: FanRay


@dataclass(frozen=True)
class CubeSig:
    signs: Tuple[int, ...]
    dominant: int                # 1-based


@dataclass(frozen=True)
class CrossSig:
    signs: Tuple[int, ...]
    # sign of a(I) - a(I^c) for the odd masks 1, 3, 5, ... (subsets holding index 1)
    comparisons: Tuple[int, ...]


@dataclass(frozen=True)
class WassersteinSig:
    """
    D(a) with subsets as bitmasks. `positive` keeps only the subsets holding
    index 1; the rest of S_a^+ is their complements' negatives.
    """
    dim: int
    positive: FrozenSet[int]
    heavy: FrozenSet[int]
    light: FrozenSet[int]

    def positive_sums(self) -> FrozenSet[int]:
        full = (1 << self.dim) - 1
        expanded = set(self.positive)
        expanded.update(full ^ I for I in range(1, full, 2) if I not in self.positive)
        return frozenset(expanded)


FanSignature = Union[PolygonSig, CubeSig, CrossSig, WassersteinSig]


def _sign(x: Rational) -> int:
    return (x > 0) - (x < 0)


# ========================================
# POLYGON RAYS
# ========================================

def polygon_fan_rays(ball: UnitBall) -> List[FanRay]:
    if ball.family != Family.POLYGON:
        raise UnsupportedFamily("fan rays are computed for polygons only")
    v = ball.vertices
    labels: Dict[Tuple[int, ...], Tuple[int, int]] = {}
    for i in range(len(v)):
        for j in range(len(v)):
            if i != j:
                labels.setdefault(primitive_direction(v[i] - v[j]), (i + 1, j + 1))
    ordered = sorted(labels, key=cmp_to_key(compare_angles))
    return [FanRay(d, labels[d]) for d in ordered]


def fan_rays_polygon(ball: UnitBall) -> List[QVector]:
    """Distinct primitive directions of all v_i - v_j, counter-clockwise from the positive x-axis."""
    return [QVector(r.direction) for r in polygon_fan_rays(ball)]


# ========================================
# LOCATE
# ========================================

def _locate_polygon(ball: UnitBall, a: QVector) -> PolygonSig:
    rays = polygon_fan_rays(ball)
    for k, lower in enumerate(rays):
        upper = rays[(k + 1) % len(rays)]
        if cross2(QVector(lower.direction), a) > 0 and cross2(a, QVector(upper.direction)) > 0:
            return PolygonSig(lower, upper)
    raise DegeneratePoint("site lies on a fan ray", str(a))


def _locate_cube(a: QVector) -> CubeSig:
    top = max(abs(c) for c in a)
    return CubeSig(tuple(_sign(c) for c in a), 1 + [abs(c) for c in a].index(top))


def _locate_cross(a: QVector) -> CrossSig:
    s = SubsetSums(a, table=True)
    comparisons = tuple(_sign(s(I) - s(s.full ^ I)) for I in range(1, s.full + 1, 2))
    return CrossSig(tuple(_sign(c) for c in a), comparisons)


def _support_subsets(support: int):
    X = support
    while True:
        yield X
        if X == 0:
            return
        X = (X - 1) & support


def _locate_wasserstein(a: QVector) -> WassersteinSig:
    s = SubsetSums(a, table=True)
    positive = frozenset(I for I in range(1, s.full, 2) if s(I) > 0)
    heavy = frozenset(X for X in _support_subsets(s.pos) if s(X) > s(s.pos ^ X))
    light = frozenset(Y for Y in _support_subsets(s.neg) if s(Y) < s(s.neg ^ Y))
    return WassersteinSig(a.dim, positive, heavy, light)


def locate(ball: UnitBall, a: QVector) -> FanSignature:
    """
    Signature of the open maximal fan cone containing a.
    Raises DegeneratePoint when a is not in general position.
    """
    if ball.family == Family.VREP:
        raise UnsupportedFamily("fan location needs one of the closed-form families")
    report = genericity(ball, a)
    if not report.general:
        raise DegeneratePoint("site is not in general position", report.violations[0])
    if ball.family == Family.POLYGON:
        return _locate_polygon(ball, a)
    if ball.family == Family.CUBE:
        return _locate_cube(a)
    if ball.family == Family.CROSS:
        return _locate_cross(a)
    return _locate_wasserstein(a)


def same_cone(ball: UnitBall, a: QVector, b: QVector) -> bool:
    return locate(ball, a) == locate(ball, b)


# ========================================
# WASSERSTEIN P-FUNCTION
# ========================================

def wasserstein_p(a: QVector) -> Rational:
    """
    p(a) = sum over I of f_I(a) + g_I(a), where f_I is the larger of the positive
    parts of a on I and on I^c and g_I the smaller of the negative parts.
    """
    if a.total() != 0:
        raise NotInHyperplane(f"coordinates of {a} sum to {a.total()}, not 0")
    if a.dim > MAX_WASSERSTEIN_P_DIM:
        raise CapExceeded(f"p-function is limited to dimension {MAX_WASSERSTEIN_P_DIM}")
    s = SubsetSums(a, table=True)
    value = sum((max(s(I & s.pos), s((s.full ^ I) & s.pos)) + min(s(I & s.neg), s((s.full ^ I) & s.neg))
                 for I in range(s.full + 1)), Rational(0))
    return value


# ========================================
# EXPORT
# ========================================

def _subsets(masks, d: int) -> List[List[int]]:
    return [list(mask_to_subset(m, d)) for m in sorted(masks)]


def signature_to_json(sig: FanSignature) -> Dict[str, Any]:
    if isinstance(sig, PolygonSig):
        return {"family": Family.POLYGON.value, "lower": sig.lower.to_json(), "upper": sig.upper.to_json()}
    if isinstance(sig, CubeSig):
        return {"family": Family.CUBE.value, "signs": list(sig.signs), "dominant": sig.dominant}
    if isinstance(sig, CrossSig):
        d = len(sig.signs)
        return {
            "family": Family.CROSS.value,
            "signs": list(sig.signs),
            "comparisons": [{"subset": list(mask_to_subset(I, d)), "sign": c}
                            for I, c in zip(range(1, 1 << d, 2), sig.comparisons)]
        }
    return {
        "family": Family.ROOT_A.value,
        "positiveSums": _subsets(sig.positive_sums(), sig.dim),
        "heavyPositive": _subsets(sig.heavy, sig.dim),
        "lightNegative": _subsets(sig.light, sig.dim)
    }
