"""
Exact LP oracle: linear systems over rationals, feasibility with witnesses, and the
systems that decide bisector cell nonemptiness and cone membership.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from errors import DimMismatch, InvariantBreach
from exact_core import QVector, Rational, dot
from engines.simplex import get_simplex_engine
from performance_monitor import performance_monitor
from polytope import UnitBall, check_point

logger = logging.getLogger(__name__)


class Relation(str, Enum):
    LE = '<='
    EQ = '='
    GE = '>='


@dataclass(frozen=True)
class LinearConstraint:
    coeffs: QVector
    relation: Relation
    rhs: Rational

    def holds(self, x: QVector) -> bool:
        value = dot(self.coeffs, x)
        if self.relation == Relation.LE:
            return value <= self.rhs
        if self.relation == Relation.GE:
            return value >= self.rhs
        return value == self.rhs

    def __str__(self) -> str:
        terms = " + ".join(f"{c}*x{k + 1}" for k, c in enumerate(self.coeffs) if c != 0) or "0"
        return f"{terms} {self.relation.value} {self.rhs}"


@dataclass(frozen=True)
class LinearSystem:
    dim: int
    constraints: Tuple[LinearConstraint, ...] = ()

    def __post_init__(self):
        for c in self.constraints:
            if c.coeffs.dim != self.dim:
                raise DimMismatch(f"constraint of dim {c.coeffs.dim} in system of dim {self.dim}")

    def with_constraints(self, *extra: LinearConstraint) -> 'LinearSystem':
        return LinearSystem(self.dim, self.constraints + tuple(extra))

    def satisfied_by(self, x: QVector) -> bool:
        return all(c.holds(x) for c in self.constraints)


@dataclass(frozen=True)
class FeasibilityResult:
    feasible: bool
    witness: Optional[QVector] = None


def ge(coeffs: QVector, rhs=0) -> LinearConstraint:
    return LinearConstraint(coeffs, Relation.GE, Fraction(rhs))


def le(coeffs: QVector, rhs=0) -> LinearConstraint:
    return LinearConstraint(coeffs, Relation.LE, Fraction(rhs))


def eq(coeffs: QVector, rhs=0) -> LinearConstraint:
    return LinearConstraint(coeffs, Relation.EQ, Fraction(rhs))


def feasible(system: LinearSystem) -> FeasibilityResult:
    """Exact feasibility; the witness is re-verified before it is returned."""
    rows: List[Sequence[Fraction]] = []
    rhs: List[Fraction] = []
    # everything becomes `row . x <= rhs`; equalities as two inequalities
    for c in system.constraints:
        if c.relation in (Relation.LE, Relation.EQ):
            rows.append(c.coeffs.coords)
            rhs.append(c.rhs)
        if c.relation in (Relation.GE, Relation.EQ):
            rows.append((-c.coeffs).coords)
            rhs.append(-c.rhs)

    performance_monitor.update_metrics(lp_calls=1)
    point = get_simplex_engine().find_point(rows, rhs, system.dim)
    if point is None:
        return FeasibilityResult(False)
    witness = QVector(tuple(point))
    if not system.satisfied_by(witness):
        raise InvariantBreach(f"simplex witness {witness} violates its system")
    return FeasibilityResult(True, witness)


# ========================================
# BISECTOR CELL SYSTEMS
# ========================================

def _scaled_normal(ball: UnitBall, k: int) -> QVector:
    f = ball.facet(k)
    return f.normal * (1 / f.offset)


def face_cone_constraints(ball: UnitBall, F: int, shift: Optional[QVector] = None) -> List[Tuple[QVector, Rational]]:
    """
    Rows (c, r) meaning c.x >= r for x - shift in C_F:
    lambda_F(x - shift) >= lambda_F'(x - shift) for every other facet F'.
    """
    zf = _scaled_normal(ball, F)
    rows = []
    for k in range(ball.n_facets):
        if k == F:
            continue
        c = zf - _scaled_normal(ball, k)
        if c.is_zero():
            continue
        rows.append((c, dot(c, shift) if shift is not None else Fraction(0)))
    return rows


def _sum_zero_row(ball: UnitBall) -> List[LinearConstraint]:
    if not ball.sum_zero:
        return []
    return [eq(QVector((Fraction(1),) * ball.dim))]


def cell_system(ball: UnitBall, F: int, G: int, a: QVector) -> LinearSystem:
    """x in C_F, x - a in C_G, lambda_F(x) = lambda_G(x - a)."""
    check_point(ball, a)
    ball.facet(F)
    ball.facet(G)
    constraints = [ge(c, r) for c, r in face_cone_constraints(ball, F)]
    constraints += [ge(c, r) for c, r in face_cone_constraints(ball, G, shift=a)]
    zf, zg = _scaled_normal(ball, F), _scaled_normal(ball, G)
    constraints.append(eq(zf - zg, -dot(zg, a)))
    constraints += _sum_zero_row(ball)
    return LinearSystem(ball.dim, tuple(constraints))


def cell_nonempty_oracle(ball: UnitBall, F: int, G: int, a: QVector) -> bool:
    """bis_{F,G}(0, a) is nonempty."""
    result = feasible(cell_system(ball, F, G, a)).feasible
    logger.debug(f"LP cell ({F},{G}) at {a}: {result}")
    return result


def cell_interior_oracle(ball: UnitBall, F: int, G: int, a: QVector) -> bool:
    """
    The bisector hyperplane meets the interior of C_F and of a + C_G, i.e. the
    cell is (d-1)-dimensional (relative to the sum-zero hyperplane when present).

    Strict system A x > c, E x = e is solved through its homogenization
    A x - c s >= 1, E x = e s, s >= 1 in variables (x, s).
    """
    check_point(ball, a)
    if F == G:
        return False
    d = ball.dim
    rows = [(c, r) for c, r in face_cone_constraints(ball, F)]
    rows += face_cone_constraints(ball, G, shift=a)
    constraints = [ge(c.extend(-r), 1) for c, r in rows]
    zf, zg = _scaled_normal(ball, F), _scaled_normal(ball, G)
    constraints.append(eq((zf - zg).extend(dot(zg, a))))
    if ball.sum_zero:
        constraints.append(eq(QVector((Fraction(1),) * d).extend(0)))
    constraints.append(ge(QVector.unit(d + 1, d), 1))
    return feasible(LinearSystem(d + 1, tuple(constraints))).feasible


def cell_witness_lp(ball: UnitBall, F: int, G: int, a: QVector) -> Optional[QVector]:
    return feasible(cell_system(ball, F, G, a)).witness


def cone_member_oracle(generators: Sequence[QVector], x: QVector) -> bool:
    """x = sum lambda_i g_i with lambda >= 0."""
    if not generators:
        return x.is_zero()
    k = len(generators)
    for g in generators:
        if g.dim != x.dim:
            raise DimMismatch("generator and point dimensions differ")
    constraints = [ge(QVector.unit(k, i)) for i in range(k)]
    for coord in range(x.dim):
        row = QVector(tuple(g[coord] for g in generators))
        constraints.append(eq(row, x[coord]))
    return feasible(LinearSystem(k, tuple(constraints))).feasible
