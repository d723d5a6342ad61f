"""
PolyBisect Polytope Module
Unit balls of polyhedral norms: the four closed-form families (centrally symmetric
polygons, cubes, cross-polytopes, type-A root polytopes) and general centrally
symmetric V-representations. Provides gauge evaluation and face-cone lookup.

Facet indexing conventions:
    Polygon        facet i = conv{v_i, v_{i+1}}, label i in 1..2n, index i-1
    Cube           label (i, sign) for i in 1..d, index 2(i-1) + (0 for +, 1 for -)
    CrossPolytope  label = bitmask of I (bit k-1 set iff k in I), index = mask
    RootPolytopeA  label = bitmask of proper nonempty I, index = mask - 1
    GeneralVRep    label = index in discovery (or input) order
"""
import itertools
import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, FrozenSet, Hashable, List, Optional, Sequence, Tuple, Union

from config import MAX_SUBSET_DIM, MAX_VREP_HULL_DIM, MAX_VREP_VERTICES
from errors import (BadFacet, BadOrientation, CapExceeded, DimMismatch, InvalidPolytope,
                    NoSolution, NotCentrallySymmetric, NotInHyperplane, Underdetermined,
                    ZeroSite, ZeroVector)
from exact_core import QMatrix, QVector, Rational, cross2, dot, rank, solve_linear

logger = logging.getLogger(__name__)


class Family(str, Enum):
    POLYGON = 'polygon'
    CUBE = 'cube'
    CROSS = 'l1'
    ROOT_A = 'wasserstein'
    VREP = 'vrep'


BITMASK_FAMILIES = (Family.CROSS, Family.ROOT_A)


@dataclass(frozen=True)
class Facet:
    """F = {x in P : z.x = b} with b > 0."""
    vertex_indices: FrozenSet[int]
    normal: QVector
    offset: Rational
    label: Hashable


@dataclass(frozen=True, eq=False)
class UnitBall:
    family: Family
    dim: int
    vertices: Tuple[QVector, ...]
    facets: Tuple[Facet, ...]
    sum_zero: bool = False
    name: str = ""
    opposites: Tuple[int, ...] = field(default=(), repr=False)
    label_index: Dict[Hashable, int] = field(default_factory=dict, repr=False)

    @property
    def n_facets(self) -> int:
        return len(self.facets)

    def facet(self, index: int) -> Facet:
        if not 0 <= index < len(self.facets):
            raise BadFacet(f"facet index {index} outside 0..{len(self.facets) - 1}")
        return self.facets[index]

    def opposite(self, index: int) -> int:
        """Index of -F."""
        self.facet(index)
        return self.opposites[index]

    def index_of(self, label: Hashable) -> int:
        try:
            return self.label_index[label]
        except KeyError:
            raise BadFacet(f"no facet labelled {label!r}")

    def lam(self, index: int, y: QVector) -> Rational:
        """Linear functional of the facet: (z.y)/b."""
        f = self.facet(index)
        return dot(f.normal, y) / f.offset

    def facet_vertices(self, index: int) -> List[QVector]:
        return [self.vertices[k] for k in sorted(self.facet(index).vertex_indices)]

    def label(self, index: int) -> str:
        return facet_label(self, index)


# ========================================
# SUBSET HELPERS
# ========================================

def mask_to_subset(mask: int, d: int) -> Tuple[int, ...]:
    """1-based sorted index tuple of a bitmask."""
    return tuple(k + 1 for k in range(d) if mask >> k & 1)


def subset_to_mask(subset: Sequence[int]) -> int:
    mask = 0
    for k in subset:
        mask |= 1 << (k - 1)
    return mask


def format_subset(mask: int, d: int) -> str:
    return "{" + ",".join(str(k) for k in mask_to_subset(mask, d)) + "}"


def facet_label(ball: UnitBall, index: int) -> str:
    label = ball.facet(index).label
    if ball.family == Family.POLYGON:
        return f"F{label}"
    if ball.family == Family.CUBE:
        i, sign = label
        return f"F{i}{'+' if sign > 0 else '-'}"
    if ball.family in BITMASK_FAMILIES:
        return "F" + format_subset(label, ball.dim)
    return f"F#{label}"


# ========================================
# FAMILY BUILDERS
# ========================================

def _check_subset_dim(d: int, family: str):
    if d < 2:
        raise InvalidPolytope(f"{family} needs dimension >= 2, got {d}")
    if d > MAX_SUBSET_DIM:
        raise CapExceeded(f"{family} dimension {d} exceeds cap {MAX_SUBSET_DIM}")


def _assemble(family: Family, dim: int, vertices: Sequence[QVector], facets: Sequence[Facet],
              name: str, sum_zero: bool = False) -> UnitBall:
    by_normal = {(f.normal, f.offset): k for k, f in enumerate(facets)}
    opposites = []
    for f in facets:
        partner = by_normal.get((-f.normal, f.offset))
        if partner is None:
            raise NotCentrallySymmetric(f"facet {f.label!r} has no opposite facet")
        opposites.append(partner)
    label_index = {f.label: k for k, f in enumerate(facets)}
    ball = UnitBall(family=family, dim=dim, vertices=tuple(vertices), facets=tuple(facets),
                    sum_zero=sum_zero, name=name, opposites=tuple(opposites),
                    label_index=label_index)
    logger.debug(f"Built {name}: {len(vertices)} vertices, {len(facets)} facets")
    return ball


def make_polygon(vertices: Sequence[QVector], name: str = "") -> UnitBall:
    """Centrally symmetric 2n-gon from its vertices in counter-clockwise order."""
    count = len(vertices)
    if count < 4 or count % 2:
        raise InvalidPolytope(f"polygon needs an even number >= 4 of vertices, got {count}")
    if any(v.dim != 2 for v in vertices):
        raise DimMismatch("polygon vertices must be planar")
    n = count // 2
    for i in range(n):
        if vertices[i + n] != -vertices[i]:
            raise NotCentrallySymmetric(f"v{i + n + 1} is not -v{i + 1}")

    turns = [cross2(vertices[(i + 1) % count] - vertices[i],
                    vertices[(i + 2) % count] - vertices[(i + 1) % count]) for i in range(count)]
    if all(t < 0 for t in turns):
        raise BadOrientation("polygon vertices are listed clockwise")
    if not all(t > 0 for t in turns):
        raise InvalidPolytope("polygon is not strictly convex")
    # winding once: v_2..v_n strictly inside the half-turn from v_1 to -v_1
    if any(cross2(vertices[0], vertices[k]) <= 0 for k in range(1, n)):
        raise BadOrientation("polygon vertices wind more than once around the origin")

    facets = []
    for i in range(count):
        v, w = vertices[i], vertices[(i + 1) % count]
        edge = w - v
        normal = QVector((edge[1], -edge[0]))
        facets.append(Facet(frozenset({i, (i + 1) % count}), normal, dot(normal, v), i + 1))
    return _assemble(Family.POLYGON, 2, vertices, facets, name or f"polygon({count})")


def make_cube(d: int) -> UnitBall:
    _check_subset_dim(d, "cube")
    vertices = [QVector(tuple(1 if m >> k & 1 else -1 for k in range(d))) for m in range(1 << d)]
    facets = []
    for i in range(d):
        for sign in (1, -1):
            members = frozenset(m for m in range(1 << d) if bool(m >> i & 1) == (sign > 0))
            facets.append(Facet(members, QVector.unit(d, i, sign), Fraction(1), (i + 1, sign)))
    return _assemble(Family.CUBE, d, vertices, facets, f"cube({d})")


def make_cross_polytope(d: int) -> UnitBall:
    _check_subset_dim(d, "cross-polytope")
    vertices = [QVector.unit(d, k) for k in range(d)] + [QVector.unit(d, k, -1) for k in range(d)]
    facets = []
    for mask in range(1 << d):
        members = frozenset(k if mask >> k & 1 else d + k for k in range(d))
        normal = QVector(tuple(1 if mask >> k & 1 else -1 for k in range(d)))
        facets.append(Facet(members, normal, Fraction(1), mask))
    return _assemble(Family.CROSS, d, vertices, facets, f"cross-polytope({d})")


def make_root_polytope(d: int) -> UnitBall:
    """conv{e_i - e_j}, kept in ambient R^d with the sum-zero constraint."""
    _check_subset_dim(d, "root polytope")
    pairs = [(i, j) for i in range(d) for j in range(d) if i != j]
    vertices = [QVector.unit(d, i) - QVector.unit(d, j) for i, j in pairs]
    facets = []
    for mask in range(1, (1 << d) - 1):
        size = bin(mask).count("1")
        # normals projected onto the hyperplane so that z_{I^c} = -z_I exactly
        normal = QVector(tuple(Fraction(mask >> k & 1) - Fraction(size, d) for k in range(d)))
        members = frozenset(p for p, (i, j) in enumerate(pairs) if mask >> i & 1 and not mask >> j & 1)
        facets.append(Facet(members, normal, Fraction(1), mask))
    return _assemble(Family.ROOT_A, d, vertices, facets, f"root-polytope({d})", sum_zero=True)


def _normal_through(points: Sequence[QVector]) -> Optional[QVector]:
    """z with z.p = 1 for all points, if unique."""
    try:
        return solve_linear(QMatrix(tuple(points)), QVector((Fraction(1),) * len(points)))
    except (NoSolution, Underdetermined):
        return None


def make_vrep(vertices: Sequence[QVector], facets: Optional[Sequence[Sequence[int]]] = None,
              name: str = "") -> UnitBall:
    """
    Centrally symmetric polytope from vertices and optionally its facet vertex
    lists. Without a facet list, facets are recovered by enumerating affinely
    independent vertex subsets whose hyperplane supports every vertex.
    """
    if not vertices:
        raise InvalidPolytope("no vertices")
    d = vertices[0].dim
    if any(v.dim != d for v in vertices):
        raise DimMismatch("vertices of different dimensions")
    if len(set(vertices)) != len(vertices):
        raise InvalidPolytope("duplicate vertices")
    vertex_set = set(vertices)
    for v in vertices:
        if -v not in vertex_set:
            raise NotCentrallySymmetric(f"vertex {v} has no antipode")

    normals: List[QVector] = []
    if facets is not None:
        for k, members in enumerate(facets):
            if not members or any(not 0 <= i < len(vertices) for i in members):
                raise InvalidPolytope(f"facet {k} references unknown vertices")
            z = _normal_through([vertices[i] for i in members])
            if z is None:
                raise InvalidPolytope(f"facet {k} does not span a unique hyperplane")
            for i, u in enumerate(vertices):
                value = dot(z, u)
                if value > 1 or (value == 1 and i not in members):
                    raise InvalidPolytope(f"facet {k} is not a facet of the vertex set")
            normals.append(z)
    else:
        if d > MAX_VREP_HULL_DIM:
            raise CapExceeded(f"facet recovery is limited to dimension {MAX_VREP_HULL_DIM}")
        if len(vertices) > MAX_VREP_VERTICES:
            raise CapExceeded(f"facet recovery is limited to {MAX_VREP_VERTICES} vertices")
        seen = set()
        for combo in itertools.combinations(range(len(vertices)), d):
            z = _normal_through([vertices[i] for i in combo])
            if z is None or z in seen:
                continue
            if all(dot(z, u) <= 1 for u in vertices):
                seen.add(z)
                normals.append(z)
        if not normals:
            raise InvalidPolytope("vertex set is not full-dimensional")

    built = []
    for k, z in enumerate(normals):
        members = frozenset(i for i, u in enumerate(vertices) if dot(z, u) == 1)
        built.append(Facet(members, z, Fraction(1), k))

    for i, v in enumerate(vertices):
        incident = [f.normal for f in built if i in f.vertex_indices]
        if rank(incident) < d:
            raise InvalidPolytope(f"point {v} is not a vertex")
    return _assemble(Family.VREP, d, vertices, built, name or f"vrep({len(vertices)})")


def make_ball(family: Union[Family, str], dim: Optional[int] = None,
              vertices: Optional[Sequence[QVector]] = None,
              facets: Optional[Sequence[Sequence[int]]] = None, name: str = "") -> UnitBall:
    family = Family(family)
    if family == Family.POLYGON:
        if vertices is None:
            raise InvalidPolytope("polygon needs a vertex list")
        return make_polygon(vertices, name)
    if family == Family.VREP:
        if vertices is None:
            raise InvalidPolytope("vrep needs a vertex list")
        return make_vrep(vertices, facets, name)
    if dim is None:
        raise InvalidPolytope(f"{family.value} needs a dimension")
    builders = {Family.CUBE: make_cube, Family.CROSS: make_cross_polytope,
                Family.ROOT_A: make_root_polytope}
    return builders[family](dim)


# ========================================
# GAUGE AND FACE CONES
# ========================================

def check_point(ball: UnitBall, x: QVector):
    if x.dim != ball.dim:
        raise DimMismatch(f"point of dim {x.dim} for ball of dim {ball.dim}")
    if ball.sum_zero and x.total() != 0:
        raise NotInHyperplane(f"coordinates of {x} sum to {x.total()}, not 0")


def facet_max_gauge(ball: UnitBall, x: QVector) -> Rational:
    check_point(ball, x)
    return max(ball.lam(k, x) for k in range(ball.n_facets))


def gauge(ball: UnitBall, x: QVector) -> Rational:
    """Minkowski functional of the ball, via family closed forms where they exist."""
    check_point(ball, x)
    if ball.family == Family.CUBE:
        return max(abs(c) for c in x)
    if ball.family == Family.CROSS:
        return sum((abs(c) for c in x), Fraction(0))
    if ball.family == Family.ROOT_A:
        return sum((abs(c) for c in x), Fraction(0)) / 2
    return facet_max_gauge(ball, x)


def face_cone_of(ball: UnitBall, x: QVector) -> FrozenSet[int]:
    """All facets F with x in C_F."""
    check_point(ball, x)
    if x.is_zero():
        raise ZeroVector("the zero vector lies in every face cone")
    values = [ball.lam(k, x) for k in range(ball.n_facets)]
    best = max(values)
    return frozenset(k for k, v in enumerate(values) if v == best)


def is_weak_general_position(ball: UnitBall, a: QVector) -> bool:
    check_point(ball, a)
    if a.is_zero():
        raise ZeroSite("site difference is zero")
    return all(dot(f.normal, a) != 0 for f in ball.facets)


def weak_general_violations(ball: UnitBall, a: QVector) -> List[str]:
    return [f"{facet_label(ball, k)}: z.a = 0" for k, f in enumerate(ball.facets)
            if dot(f.normal, a) == 0]
