"""
PolyBisect Polytope Input Module
Loading V-representations from JSON, rational polygon generators and the built-in
centrally symmetric 3-polytopes (the five parallelohedra).
"""
import itertools
import json
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import List, Optional, Sequence

import numpy as np

from config import MAX_POLYGON_HALF_VERTICES, PERTURBED_T_DENOMINATOR, PERTURBED_T_MAX_NUMERATOR
from errors import CapExceeded, InputFormatError, InvalidPolytope, SiteParseError
from exact_core import QVector, rat
from polytope import Family, UnitBall, make_polygon, make_vrep
from utils import parse_vector

# Set up logging
logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class VRepInput:
    dim: int
    vertices: List[QVector]
    facets: Optional[List[List[int]]] = None


# ========================================
# V-REPRESENTATION FILES
# ========================================

def parse_vrep(data: dict, source: str = "<input>") -> VRepInput:
    """
    {"dim": d, "vertices": [["p/q", ...], ...], "facets": optional [[indices], ...]}
    """
    if not isinstance(data, dict):
        raise InputFormatError(f"{source}: expected a JSON object")
    if "vertices" not in data:
        raise InputFormatError(f"{source}: missing 'vertices'")
    raw_vertices = data["vertices"]
    if not isinstance(raw_vertices, list) or not raw_vertices:
        raise InputFormatError(f"{source}: 'vertices' must be a nonempty list")
    try:
        vertices = [parse_vector(v) for v in raw_vertices]
    except (SiteParseError, TypeError) as e:
        raise InputFormatError(f"{source}: bad vertex coordinate ({e})")

    dim = data.get("dim", vertices[0].dim)
    if not isinstance(dim, int) or isinstance(dim, bool):
        raise InputFormatError(f"{source}: 'dim' must be an integer")
    if any(v.dim != dim for v in vertices):
        raise InputFormatError(f"{source}: every vertex must have {dim} coordinates")

    facets = data.get("facets")
    if facets is not None:
        if not isinstance(facets, list) or not all(
                isinstance(f, list) and all(isinstance(i, int) and not isinstance(i, bool) for i in f)
                for f in facets):
            raise InputFormatError(f"{source}: 'facets' must be a list of vertex index lists")
    return VRepInput(dim, vertices, facets)


def load_vrep_json(path: str) -> VRepInput:
    file_path = Path(path)
    if not file_path.is_file():
        raise InputFormatError(f"vertex file {path} does not exist")
    try:
        data = json.loads(file_path.read_text(encoding='utf-8'))
    except json.JSONDecodeError as e:
        raise InputFormatError(f"{path}: invalid JSON ({e.msg} at line {e.lineno})")
    vrep = parse_vrep(data, path)
    logger.info(f"Loaded {len(vrep.vertices)} vertices in dimension {vrep.dim} from {path}")
    return vrep


def load_ball(path: str, family: Family = Family.VREP) -> UnitBall:
    """A polygon (vertices counter-clockwise) or a general V-representation from a file."""
    vrep = load_vrep_json(path)
    name = Path(path).stem
    if family == Family.POLYGON:
        if vrep.dim != 2:
            raise InvalidPolytope(f"polygon file {path} is {vrep.dim}-dimensional")
        return make_polygon(vrep.vertices, name)
    return make_vrep(vrep.vertices, vrep.facets, name)


# ========================================
# POLYGON GENERATORS
# ========================================

def circle_point(t: Fraction) -> QVector:
    """Rational point of the unit circle at parameter t (angle 2 atan t)."""
    denom = 1 + t * t
    return QVector(((1 - t * t) / denom, 2 * t / denom))


def _polygon_from_parameters(params: Sequence[Fraction], name: str) -> UnitBall:
    half = [circle_point(t) for t in params]
    return make_polygon(half + [-v for v in half], name)


def _check_half_count(n: int):
    if n < 2:
        raise InvalidPolytope(f"a centrally symmetric 2n-gon needs n >= 2, got {n}")
    if n > MAX_POLYGON_HALF_VERTICES:
        raise CapExceeded(f"polygons are limited to n <= {MAX_POLYGON_HALF_VERTICES}")


def circle_polygon(n: int) -> UnitBall:
    """
    Near-regular 2n-gon with rational vertices on the unit circle; exact for n = 2
    (the square with vertices +-e_1, +-e_2).
    """
    _check_half_count(n)
    # floats only pick the parameters t; every vertex is computed exactly from t
    params = [Fraction(math.tan(k * math.pi / (2 * n))).limit_denominator(10 ** 6) for k in range(n)]
    return _polygon_from_parameters(params, f"circle-{2 * n}-gon")


def perturbed_polygon(n: int, rng: np.random.Generator) -> UnitBall:
    """2n-gon on the unit circle at random rational parameters t = k / 64, k <= 640."""
    _check_half_count(n)
    picks = rng.choice(PERTURBED_T_MAX_NUMERATOR + 1, size=n, replace=False)
    params = [Fraction(int(k), PERTURBED_T_DENOMINATOR) for k in sorted(picks)]
    return _polygon_from_parameters(params, f"perturbed-{2 * n}-gon")


def affine_regular_hexagon() -> UnitBall:
    half = [QVector.of(1, 0), QVector.of(1, 1), QVector.of(0, 1)]
    return make_polygon(half + [-v for v in half], "affine-regular-hexagon")


def perturbed_hexagon() -> UnitBall:
    """The affine-regular hexagon with v_3 moved to (-2/5, 6/5), so no main diagonal is parallel to an edge."""
    half = [QVector.of(1, 0), QVector.of(1, 1), QVector((rat(-2, 5), rat(6, 5)))]
    return make_polygon(half + [-v for v in half], "perturbed-hexagon")


def ngon(n: int, perturbed: bool = False, rng: Optional[np.random.Generator] = None) -> UnitBall:
    if perturbed:
        return perturbed_polygon(n, rng if rng is not None else np.random.default_rng())
    return circle_polygon(n)


# ========================================
# BUILT-IN SOLIDS
# ========================================

def _signed(*coords: int) -> List[QVector]:
    """All sign choices of the nonzero coordinates."""
    choices = [(c, -c) if c else (0,) for c in coords]
    return [QVector.of(*p) for p in itertools.product(*choices)]


def _permuted(*coords: int) -> List[QVector]:
    points = set()
    for perm in itertools.permutations(coords):
        points.update(_signed(*perm))
    return sorted(points, key=lambda v: v.coords)


def _solid_vertices(name: str) -> List[QVector]:
    if name == "cube":
        return _signed(1, 1, 1)
    if name == "rhombic-dodecahedron":
        return _signed(1, 1, 1) + _permuted(2, 0, 0)
    if name == "hexagonal-prism":
        hexagon = [(1, 0), (1, 1), (0, 1), (-1, 0), (-1, -1), (0, -1)]
        return [QVector.of(x, y, z) for z in (1, -1) for x, y in hexagon]
    if name == "truncated-octahedron":
        return _permuted(0, 1, 2)
    if name == "elongated-dodecahedron":
        return (_signed(1, 1, 2) + _signed(0, 0, 3) + _signed(2, 0, 1) + _signed(0, 2, 1))
    raise InputFormatError(f"unknown solid '{name}'; choose one of {', '.join(BUILTIN_SOLIDS)}")


BUILTIN_SOLIDS = ("cube", "rhombic-dodecahedron", "hexagonal-prism",
                  "truncated-octahedron", "elongated-dodecahedron")


def builtin_solid(name: str) -> UnitBall:
    """One of the five centrally symmetric 3-polytopes that tile space by translations."""
    return make_vrep(_solid_vertices(name), name=name)
