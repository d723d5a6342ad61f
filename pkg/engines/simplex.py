"""
Exact phase-one simplex.

The tableau is kept integral with fraction-free (Bareiss) pivoting: every stored
entry equals the real tableau entry times the current basis determinant, so no
Fraction arithmetic happens inside the pivot loop. Bland's rule picks both the
entering and the leaving variable.
"""
import logging
import threading
from fractions import Fraction
from typing import List, Optional, Sequence

from errors import InvariantBreach
from exact_core import clear_denominators

logger = logging.getLogger(__name__)


class ExactSimplex:
    """Feasibility engine for systems `A x <= b` with free variables x."""

    def __init__(self, max_pivots: int = 100000):
        self.max_pivots = max_pivots
        self.lock = threading.Lock()
        self.total_solves = 0
        self.total_pivots = 0

    def find_point(self, rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction],
                   n_vars: int) -> Optional[List[Fraction]]:
        """
        Return some x with rows·x <= rhs, or None when infeasible.
        An empty system is feasible with x = 0.
        """
        m = len(rows)
        # columns: x+ (n), x- (n), slack (m), artificial (one per negative row)
        negative_rows = []
        integer_rows = []
        for coeffs, b in zip(rows, rhs):
            ints = clear_denominators(list(coeffs) + [b])
            a, bi = ints[:-1], ints[-1]
            if bi < 0:
                a, bi = [-x for x in a], -bi
                negative_rows.append(len(integer_rows))
            integer_rows.append((a, bi))

        n_art = len(negative_rows)
        width = 2 * n_vars + m + n_art
        art_col = {row: 2 * n_vars + m + k for k, row in enumerate(negative_rows)}

        tableau: List[List[int]] = []
        basis: List[int] = []
        for i, (a, bi) in enumerate(integer_rows):
            row = [0] * (width + 1)
            for j, coef in enumerate(a):
                row[j] = coef
                row[n_vars + j] = -coef
            if i in art_col:
                row[2 * n_vars + i] = -1
                row[art_col[i]] = 1
                basis.append(art_col[i])
            else:
                row[2 * n_vars + i] = 1
                basis.append(2 * n_vars + i)
            row[width] = bi
            tableau.append(row)

        # phase-one objective: minimise the sum of artificials (reduced-cost row)
        objective = [0] * (width + 1)
        for i in negative_rows:
            objective[art_col[i]] += 1
        for i in negative_rows:
            objective = [o - t for o, t in zip(objective, tableau[i])]

        det = 1
        pivots = 0
        while True:
            entering = next((j for j in range(width) if objective[j] < 0), None)
            if entering is None:
                break
            leaving = None
            for i in range(m):
                coef = tableau[i][entering]
                if coef <= 0:
                    continue
                if leaving is None:
                    leaving = i
                    continue
                best = tableau[leaving]
                lhs = tableau[i][width] * best[entering]
                rhs_cmp = best[width] * coef
                if lhs < rhs_cmp or (lhs == rhs_cmp and basis[i] < basis[leaving]):
                    leaving = i
            if leaving is None:
                # phase one is bounded below by zero
                raise InvariantBreach("unbounded phase-one objective")
            det = self._pivot(tableau, objective, leaving, entering, det)
            basis[leaving] = entering
            pivots += 1
            if pivots > self.max_pivots:
                raise InvariantBreach(f"simplex exceeded {self.max_pivots} pivots")

        with self.lock:
            self.total_solves += 1
            self.total_pivots += pivots

        # objective row holds -(sum of artificials) * det in its rhs
        if objective[width] != 0:
            logger.debug(f"Infeasible system after {pivots} pivots")
            return None

        values = [Fraction(0)] * width
        for i, var in enumerate(basis):
            values[var] = Fraction(tableau[i][width], det)
        point = [values[j] - values[n_vars + j] for j in range(n_vars)]
        logger.debug(f"Feasible system after {pivots} pivots")
        return point

    @staticmethod
    def _pivot(tableau: List[List[int]], objective: List[int], r: int, c: int, det: int) -> int:
        pivot_row = tableau[r]
        p = pivot_row[c]
        for i, row in enumerate(tableau):
            if i == r:
                continue
            factor = row[c]
            if factor == 0:
                if p != det:
                    for j in range(len(row)):
                        row[j] = _exact_div(p * row[j], det)
                continue
            for j in range(len(row)):
                row[j] = _exact_div(p * row[j] - factor * pivot_row[j], det)
        factor = objective[c]
        for j in range(len(objective)):
            objective[j] = _exact_div(p * objective[j] - factor * pivot_row[j], det)
        return p


def _exact_div(num: int, den: int) -> int:
    q, rem = divmod(num, den)
    if rem:
        raise InvariantBreach("fraction-free pivot produced a remainder")
    return q


# Global engine instance
_simplex_engine = None


def get_simplex_engine() -> ExactSimplex:
    """Get the global simplex engine instance"""
    global _simplex_engine
    if _simplex_engine is None:
        _simplex_engine = ExactSimplex()
    return _simplex_engine
