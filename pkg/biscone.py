"""
PolyBisect Bisection Cone Module
Bisection cones B_{F,G} = {x : bis_{F,G}(0, x) nonempty}: ray descriptions from vertex
differences, the homogenization cross-check, linear transport, and closed-form
membership tests for polygons, cubes, cross-polytopes and type-A root polytopes.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

from config import MAX_SUBSET_DIM
from errors import BadFacet, DimMismatch, NotInHyperplane, UnsupportedFamily, ZeroVector
from exact_core import QMatrix, QVector, Rational, cross2, inverse, rank
from engines.lp_oracle import LinearConstraint, LinearSystem, cone_member_oracle, eq, feasible, ge
from performance_monitor import performance_monitor
from polytope import Family, UnitBall, facet_label

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Cone:
    """Polyhedral cone by generators and/or halfspaces (c.x >= 0) and equations (c.x = 0)."""
    dim: int
    generators: Tuple[QVector, ...] = ()
    halfspaces: Optional[Tuple[LinearConstraint, ...]] = None
    equations: Tuple[LinearConstraint, ...] = ()

    def __post_init__(self):
        for g in self.generators:
            if g.dim != self.dim:
                raise DimMismatch("generator dimension differs from cone dimension")
            if g.is_zero():
                raise ZeroVector("cone generators must be nonzero")

    def contains(self, x: QVector) -> bool:
        if self.halfspaces is not None:
            return all(c.holds(x) for c in self.halfspaces) and all(c.holds(x) for c in self.equations)
        return cone_member_oracle(list(self.generators), x)

    def span_rank(self) -> int:
        return rank(list(self.generators))


@dataclass(frozen=True, order=True)
class FacetPair:
    F: int
    G: int

    def swapped(self) -> 'FacetPair':
        return FacetPair(self.G, self.F)

    def labels(self, ball: UnitBall) -> Tuple[str, str]:
        return facet_label(ball, self.F), facet_label(ball, self.G)

    def to_json(self, ball: UnitBall) -> Dict[str, Any]:
        f, g = self.labels(ball)
        return {"F": f, "G": g, "indices": [self.F, self.G]}


# ========================================
# GENERAL DESCRIPTIONS
# ========================================

def bisection_cone_rays(ball: UnitBall, F: int, G: int) -> Cone:
    """cone{v - u : v in vert(F), u in vert(G)}, zero differences dropped."""
    seen = set()
    rays: List[QVector] = []
    for v in ball.facet_vertices(F):
        for u in ball.facet_vertices(G):
            diff = v - u
            if diff.is_zero() or diff in seen:
                continue
            seen.add(diff)
            rays.append(diff)
    return Cone(ball.dim, tuple(rays))


def homog_membership(ball: UnitBall, F: int, G: int, x: QVector) -> bool:
    """
    (x, 0) in homog(F) - homog(G): nonnegative weights on the lifted vertices
    (v, 1) of F and (-u, -1) of G summing to (x, 0).
    """
    if x.dim != ball.dim:
        raise DimMismatch(f"point of dim {x.dim} for ball of dim {ball.dim}")
    lifted = [v.extend(1) for v in ball.facet_vertices(F)]
    lifted += [(-u).extend(-1) for u in ball.facet_vertices(G)]
    k = len(lifted)
    constraints = [ge(QVector.unit(k, i)) for i in range(k)]
    target = x.extend(0)
    for coord in range(ball.dim + 1):
        constraints.append(eq(QVector(tuple(g[coord] for g in lifted)), target[coord]))
    return feasible(LinearSystem(k, tuple(constraints))).feasible


def apply_linear_iso(cone: Cone, M: QMatrix) -> Cone:
    """Image of the cone under an invertible linear map."""
    if M.n_rows != cone.dim or M.n_cols != cone.dim:
        raise DimMismatch("map does not match cone dimension")
    m_inv = inverse(M)
    generators = tuple(M.apply(g) for g in cone.generators)
    halfspaces = None
    # c.x >= 0 on the source becomes (M^-T c).y >= 0 on the image
    dual = m_inv.transpose()
    if cone.halfspaces is not None:
        halfspaces = tuple(LinearConstraint(dual.apply(c.coeffs), c.relation, c.rhs) for c in cone.halfspaces)
    equations = tuple(LinearConstraint(dual.apply(c.coeffs), c.relation, c.rhs) for c in cone.equations)
    return Cone(cone.dim, generators, halfspaces, equations)


def cone_to_json(cone: Cone, ball: Optional[UnitBall] = None, pair: Optional[FacetPair] = None) -> Dict[str, Any]:
    payload: Dict[str, Any] = {"generators": [g.to_strings() for g in cone.generators]}
    # rows c with c.x >= 0 and c.x = 0
    if cone.halfspaces is not None:
        payload["halfspaces"] = [c.coeffs.to_strings() for c in cone.halfspaces]
        payload["equations"] = [c.coeffs.to_strings() for c in cone.equations]
    if ball is not None and pair is not None:
        payload["facetPair"] = pair.to_json(ball)
    if ball is not None:
        payload["family"] = ball.family.value
    return payload


# ========================================
# SUBSET SUMS
# ========================================

class SubsetSums:
    """
    Sign supports and subset sums a(I) of a point, subsets as bitmasks.
    A full table of 2^d sums is built on request for enumeration loops.
    """

    def __init__(self, a: QVector, table: bool = False):
        self.a = a
        self.d = a.dim
        if self.d > MAX_SUBSET_DIM:
            raise BadFacet(f"subset indexing is limited to dimension {MAX_SUBSET_DIM}")
        self.full = (1 << self.d) - 1
        self.pos = sum(1 << k for k, c in enumerate(a) if c > 0)
        self.neg = sum(1 << k for k, c in enumerate(a) if c < 0)
        self.total = a.total()
        self._table: Optional[List[Rational]] = None
        if table:
            sums = [Fraction(0)] * (1 << self.d)
            for mask in range(1, 1 << self.d):
                low = mask & -mask
                sums[mask] = sums[mask ^ low] + a[low.bit_length() - 1]
            self._table = sums

    def __call__(self, mask: int) -> Rational:
        if self._table is not None:
            return self._table[mask]
        return sum((self.a[k] for k in range(self.d) if mask >> k & 1), Fraction(0))


# ========================================
# CLOSED FORMS
# ========================================

def _as_sign(sigma) -> int:
    if sigma in (1, '+'):
        return 1
    if sigma in (-1, '-'):
        return -1
    raise BadFacet(f"sign must be + or -, got {sigma!r}")


def polygon_cone_contains(ball: UnitBall, i: int, j: int, x: QVector) -> bool:
    """Membership in B_{i,j} for facets labelled 1..2n of a polygon."""
    if ball.family != Family.POLYGON:
        raise UnsupportedFamily("polygon closed form needs a polygon")
    count = len(ball.vertices)
    if not (1 <= i <= count and 1 <= j <= count):
        raise BadFacet(f"polygon facets are labelled 1..{count}")
    v = ball.vertices
    vi, vi1 = v[i - 1], v[i % count]
    if i == j:
        return cross2(vi1 - vi, x) == 0
    vj, vj1 = v[j - 1], v[j % count]
    g1, g2 = vi - vj, vi1 - vj1
    det = cross2(g1, g2)
    # x = alpha g1 + beta g2 with alpha, beta >= 0
    return cross2(x, g2) * det >= 0 and cross2(g1, x) * det >= 0


def cube_cone_contains(d: int, i: int, sigma1, j: int, sigma2, a: QVector) -> bool:
    """Membership in B_{F_i^s1, F_j^s2} of the cube, coordinates 1-based."""
    if a.dim != d:
        raise DimMismatch(f"site of dim {a.dim} for cube of dim {d}")
    s1, s2 = _as_sign(sigma1), _as_sign(sigma2)
    if not (1 <= i <= d and 1 <= j <= d):
        raise BadFacet(f"cube coordinates are 1..{d}")
    ai = a[i - 1]
    if i != j:
        return s1 * ai >= 0 and -s2 * a[j - 1] >= 0
    if s1 != s2:
        return all(s1 * ai >= abs(a[k]) for k in range(d) if k != i - 1)
    return ai == 0


def cross_cone_contains(d: int, I: int, J: int, a: QVector, sums: Optional[SubsetSums] = None) -> bool:
    """Membership in B_{F_I, F_J} of the cross-polytope; I, J any subsets."""
    if a.dim != d:
        raise DimMismatch(f"site of dim {a.dim} for cross-polytope of dim {d}")
    s = sums or SubsetSums(a)
    full = s.full
    if not (0 <= I <= full and 0 <= J <= full):
        raise BadFacet("subset mask outside [d]")
    Ic, Jc = full ^ I, full ^ J
    if I & Jc & s.neg or J & Ic & s.pos:
        return False
    aJ, aI = s(J), s(I)
    return aJ <= s.total - aJ and s.total - aI <= aI


def wasserstein_cone_contains(d: int, I: int, J: int, a: QVector, sums: Optional[SubsetSums] = None) -> bool:
    """
    Membership in B_{F_I, F_J} of the root polytope. The quantifiers over
    K subset of a region are settled by the extremal K: its negative (for
    lower bounds) or positive (for upper bounds) support.
    """
    if a.dim != d:
        raise DimMismatch(f"site of dim {a.dim} for root polytope of dim {d}")
    s = sums or SubsetSums(a)
    if s.total != 0:
        raise NotInHyperplane(f"coordinates of {a} sum to {s.total}, not 0")
    full = s.full
    for mask in (I, J):
        if not 0 < mask < full:
            raise BadFacet("root polytope facets are proper nonempty subsets")
    Ic, Jc = full ^ I, full ^ J
    both, neither = I & J, Ic & Jc
    if both and neither:
        return not (I & Jc & s.neg) and not (J & Ic & s.pos) and s(I) >= 0 and s(J) <= 0
    if neither:
        return (not (I & s.neg) and not (J & s.pos)
                and s(J) <= s(neither & s.neg) and s(neither & s.pos) <= s(I))
    if both:
        return (not (Jc & s.neg) and not (Ic & s.pos)
                and s(both & s.pos) <= s(Jc) and s(Ic) <= s(both & s.neg))
    return not (I & s.neg) and not (J & s.pos)


def closed_form_contains(ball: UnitBall, F: int, G: int, x: QVector,
                         sums: Optional[SubsetSums] = None) -> Optional[bool]:
    """Closed-form membership of x in B_{F,G}; None for general V-representations."""
    f, g = ball.facet(F).label, ball.facet(G).label
    family = ball.family
    if family == Family.POLYGON:
        return polygon_cone_contains(ball, f, g, x)
    if family == Family.CUBE:
        return cube_cone_contains(ball.dim, f[0], f[1], g[0], g[1], x)
    if family == Family.CROSS:
        return cross_cone_contains(ball.dim, f, g, x, sums)
    if family == Family.ROOT_A:
        return wasserstein_cone_contains(ball.dim, f, g, x, sums)
    return None


def cone_contains(ball: UnitBall, F: int, G: int, x: QVector) -> bool:
    """Closed form when the family has one, conical-hull LP otherwise."""
    verdict = closed_form_contains(ball, F, G, x)
    if verdict is not None:
        performance_monitor.update_metrics(closed_form_calls=1)
        return verdict
    return bisection_cone_rays(ball, F, G).contains(x)
