"""
PolyBisect Export Module
Bisection cones of centrally symmetric 3-polytopes intersected with the polytope:
exact vertex enumeration of B_{F,G} ∩ P, cyclic face ordering, and OFF meshes with
a JSON index that keeps every coordinate exact.
"""
import itertools
import logging
from dataclasses import dataclass, field
from functools import cmp_to_key
from typing import Any, Dict, List, Optional, Sequence, Tuple

from config import OFF_SIGNIFICANT_DIGITS
from errors import DimMismatch, InvalidPolytope
from exact_core import QVector, Rational, compare_angles, cross3, dot, primitive_direction, rank
from engines.lp_oracle import LinearConstraint, eq, ge
from polytope import UnitBall, facet_label
from progress_tracking import ProgressTracker
from utils import rational_to_decimal

from biscone import Cone, FacetPair, bisection_cone_rays, cone_to_json

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Plane:
    """normal . x = rhs; `outward` orients the face when the plane bounds a 3-dimensional piece."""
    normal: QVector
    rhs: Rational
    outward: Optional[QVector] = None


@dataclass
class ConeMesh:
    pair: FacetPair
    cone: Cone
    vertices: List[QVector]
    faces: List[List[int]] = field(default_factory=list)

    def to_json(self, ball: UnitBall) -> Dict[str, Any]:
        return {
            **cone_to_json(self.cone, ball, self.pair),
            "vertices": [v.to_strings() for v in self.vertices],
            "faces": self.faces
        }


# ========================================
# CONE H-REPRESENTATION
# ========================================

def _primitive(v: QVector) -> QVector:
    return QVector.of(*primitive_direction(v))


def _supporting(candidates: Sequence[QVector], generators: Sequence[QVector]) -> List[QVector]:
    """Distinct primitive c among +-candidates with c.g >= 0 for every generator."""
    kept: List[QVector] = []
    for c in candidates:
        if c.is_zero():
            continue
        for oriented in (c, -c):
            p = _primitive(oriented)
            if p not in kept and all(dot(p, g) >= 0 for g in generators):
                kept.append(p)
    return kept


def cone_hrep_3d(cone: Cone) -> Cone:
    """Halfspaces c.x >= 0 and equations of a cone in R^3 given by generators."""
    if cone.dim != 3:
        raise DimMismatch("cone H-representation is implemented for dimension 3")
    gens = list(cone.generators)
    r = cone.span_rank() if gens else 0
    halfspaces: List[LinearConstraint] = []
    equations: List[LinearConstraint] = []
    if r == 0:
        equations = [eq(QVector.unit(3, k)) for k in range(3)]
    elif r == 3:
        candidates = [cross3(g, h) for g, h in itertools.combinations(gens, 2)]
        halfspaces = [ge(c) for c in _supporting(candidates, gens)]
    else:
        base = gens[0]
        if r == 2:
            other = next(g for g in gens if not cross3(base, g).is_zero())
            normals = [_primitive(cross3(base, other))]
        else:
            helper = next(QVector.unit(3, k) for k in range(3) if not cross3(base, QVector.unit(3, k)).is_zero())
            first = cross3(base, helper)
            normals = [_primitive(first), _primitive(cross3(base, first))]
        equations = [eq(m) for m in normals]
        # in-plane (or on-line) normals orthogonal to the equations
        candidates = [cross3(normals[0], g) for g in gens] if r == 2 else [base]
        halfspaces = [ge(c) for c in _supporting(candidates, gens)]
    return Cone(3, tuple(gens), tuple(halfspaces), tuple(equations))


# ========================================
# VERTEX ENUMERATION
# ========================================

def _planes(cone: Cone, ball: UnitBall) -> Tuple[List[Plane], List[Plane]]:
    """(face-carrying planes, equation planes) of cone ∩ P."""
    faces = [Plane(c.coeffs, c.rhs, -c.coeffs) for c in cone.halfspaces or ()]
    faces += [Plane(f.normal, f.offset, f.normal) for f in ball.facets]
    equations = [Plane(c.coeffs, c.rhs) for c in cone.equations]
    return faces, equations


def _inside(x: QVector, cone: Cone, ball: UnitBall) -> bool:
    return (cone.contains(x)
            and all(dot(f.normal, x) <= f.offset for f in ball.facets))


def _solve3(p: Plane, q: Plane, r: Plane) -> Optional[QVector]:
    qr, rp, pq = cross3(q.normal, r.normal), cross3(r.normal, p.normal), cross3(p.normal, q.normal)
    det = dot(p.normal, qr)
    if det == 0:
        return None
    return (qr * p.rhs + rp * q.rhs + pq * r.rhs) * (1 / det)


def cone_polytope_vertices(cone: Cone, ball: UnitBall) -> List[QVector]:
    """Vertices of the bounded set cone ∩ P, by solving every triple of bounding planes."""
    if cone.halfspaces is None:
        raise InvalidPolytope("vertex enumeration needs the cone's halfspaces")
    faces, equations = _planes(cone, ball)
    found = set()
    for p, q, r in itertools.combinations(faces + equations, 3):
        x = _solve3(p, q, r)
        if x is not None and x not in found and _inside(x, cone, ball):
            found.add(x)
    return sorted(found, key=lambda v: v.coords)


# ========================================
# FACES
# ========================================

def order_face(points: Sequence[QVector], normal: QVector) -> List[int]:
    """Indices of coplanar points in counter-clockwise order seen from the tip of `normal`."""
    centroid = sum(points[1:], points[0]) * Rational(1, len(points))
    u = points[0] - centroid
    w = cross3(normal, u)

    def planar(k: int) -> Tuple[Rational, Rational]:
        rel = points[k] - centroid
        return dot(rel, u), dot(rel, w)

    return sorted(range(len(points)), key=cmp_to_key(lambda i, j: compare_angles(planar(i), planar(j))))


def _is_polygon(points: Sequence[QVector]) -> bool:
    return len(points) >= 3 and rank([p - points[0] for p in points[1:]]) == 2


def mesh_faces(vertices: Sequence[QVector], cone: Cone, ball: UnitBall) -> List[List[int]]:
    faces, equations = _planes(cone, ball)
    if equations:
        if len(equations) == 1 and _is_polygon(vertices):
            order = order_face(vertices, equations[0].normal)
            return [order]
        return []
    result = []
    for plane in faces:
        on = [k for k, v in enumerate(vertices) if dot(plane.normal, v) == plane.rhs]
        pts = [vertices[k] for k in on]
        if _is_polygon(pts):
            result.append([on[k] for k in order_face(pts, plane.outward)])
    return result


def build_cone_mesh(ball: UnitBall, pair: FacetPair) -> ConeMesh:
    rays = bisection_cone_rays(ball, pair.F, pair.G)
    cone = cone_hrep_3d(rays)
    vertices = cone_polytope_vertices(cone, ball)
    return ConeMesh(pair, cone, vertices, mesh_faces(vertices, cone, ball))


def build_cone_meshes(ball: UnitBall, tracker: Optional[ProgressTracker] = None) -> List[ConeMesh]:
    """One mesh per ordered facet pair, in lexicographic index order."""
    if ball.dim != 3:
        raise DimMismatch(f"cone export needs a 3-polytope, got dimension {ball.dim}")
    meshes = []
    for F, G in itertools.product(range(ball.n_facets), repeat=2):
        meshes.append(build_cone_mesh(ball, FacetPair(F, G)))
        if tracker:
            tracker.advance(f"Cone {facet_label(ball, F)}/{facet_label(ball, G)}: "
                            f"{len(meshes[-1].vertices)} vertices")
    return meshes


# ========================================
# WRITERS
# ========================================

def meshes_to_off(meshes: Sequence[ConeMesh], digits: int = OFF_SIGNIFICANT_DIGITS) -> str:
    """All meshes in one OFF document; mesh k's vertices follow those of meshes 0..k-1."""
    n_vertices = sum(len(m.vertices) for m in meshes)
    n_faces = sum(len(m.faces) for m in meshes)
    lines = ["OFF", f"{n_vertices} {n_faces} 0"]
    for mesh in meshes:
        for v in mesh.vertices:
            lines.append(" ".join(rational_to_decimal(c, digits) for c in v))
    offset = 0
    for mesh in meshes:
        for face in mesh.faces:
            lines.append(" ".join(str(k) for k in [len(face)] + [i + offset for i in face]))
        offset += len(mesh.vertices)
    return "\n".join(lines) + "\n"


def meshes_to_index(ball: UnitBall, meshes: Sequence[ConeMesh]) -> Dict[str, Any]:
    entries = []
    offset = 0
    for mesh in meshes:
        entry = mesh.to_json(ball)
        entry["offVertexStart"] = offset
        entries.append(entry)
        offset += len(mesh.vertices)
    return {
        "polytope": ball.name,
        "dim": ball.dim,
        "vertices": [v.to_strings() for v in ball.vertices],
        "facets": [{"label": facet_label(ball, k), "vertexIndices": sorted(f.vertex_indices),
                    "normal": f.normal.to_strings()} for k, f in enumerate(ball.facets)],
        "cones": entries
    }
