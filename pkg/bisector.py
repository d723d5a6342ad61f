"""
PolyBisect Bisector Service Module
Bisector-level computations for two sites 0 and a: enumeration of the nonempty
maximal cells bis_{F,G}(0, a), cell counts, equivalence of bisectors and
genericity reports.
"""
import itertools
import logging
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass, field
from typing import Any, Dict, FrozenSet, Iterator, List, Optional, Sequence, Tuple

from config import (CELL_WORKERS, MAX_PAIR_ENUM_DIM, PAIR_BATCH_SIZE,
                    PARALLEL_PAIR_THRESHOLD, PARALLEL_PROCESSING_ENABLED)
from errors import CapExceeded, InputFormatError, InvariantBreach, UnsupportedFamily, ZeroSite
from exact_core import QVector, cross2, format_rational
from engines.lp_oracle import cell_interior_oracle, cell_nonempty_oracle, cell_witness_lp
from performance_monitor import performance_monitor
from polytope import (BITMASK_FAMILIES, Family, UnitBall, check_point, format_subset,
                      is_weak_general_position, weak_general_violations)

from biscone import FacetPair, SubsetSums, closed_form_contains, wasserstein_cone_contains
from witness import closed_form_witness, verify_witness

# Set up logging
logger = logging.getLogger(__name__)

METHODS = ("auto", "closed", "lp")


@dataclass(frozen=True)
class CellSet:
    """Facet pairs (F, G) with bis_{F,G}(0, a) nonempty."""
    pairs: FrozenSet[FacetPair] = frozenset()

    def __len__(self) -> int:
        return len(self.pairs)

    def __contains__(self, pair: object) -> bool:
        return pair in self.pairs

    def __iter__(self) -> Iterator[FacetPair]:
        return iter(sorted(self.pairs))

    def swapped(self) -> 'CellSet':
        """The cell set of -a."""
        return CellSet(frozenset(p.swapped() for p in self.pairs))

    def diagonal(self) -> List[FacetPair]:
        return [p for p in self if p.F == p.G]

    def to_json(self, ball: UnitBall) -> List[Dict[str, Any]]:
        return [p.to_json(ball) for p in self]


@dataclass(frozen=True)
class GenericityReport:
    weak_general: bool
    general: Optional[bool]
    violations: Tuple[str, ...] = field(default=())

    def to_json(self) -> Dict[str, Any]:
        return {
            "weakGeneral": self.weak_general,
            "general": "unknown" if self.general is None else self.general,
            "violations": list(self.violations)
        }


def _require_site(ball: UnitBall, a: QVector):
    check_point(ball, a)
    if a.is_zero():
        raise ZeroSite("site difference is zero")


class BisectorService:
    """Enumerates bisector cells with closed forms where the family has them and the LP oracle otherwise."""

    def __init__(self, parallel: bool = PARALLEL_PROCESSING_ENABLED, workers: int = CELL_WORKERS):
        self.parallel = parallel
        self.workers = workers

    # ========================================
    # ENUMERATION
    # ========================================

    def enumerate_cells(self, ball: UnitBall, a: QVector, method: str = "auto") -> CellSet:
        _require_site(ball, a)
        if method not in METHODS:
            raise InputFormatError(f"unknown method {method!r}")
        if ball.family in BITMASK_FAMILIES and ball.dim > MAX_PAIR_ENUM_DIM:
            raise CapExceeded(f"pair enumeration for {ball.family.value} is limited to dimension {MAX_PAIR_ENUM_DIM}")

        has_closed_form = ball.family != Family.VREP
        if method == "closed" and not has_closed_form:
            raise UnsupportedFamily(f"no closed form for {ball.family.value}")
        use_lp = method == "lp" or not has_closed_form

        if use_lp:
            pairs = self._enumerate_lp(ball, a)
        elif ball.family == Family.CROSS:
            pairs = self._enumerate_cross(a)
        elif ball.family == Family.ROOT_A:
            pairs = self._enumerate_root(a)
        else:
            pairs = self._enumerate_closed(ball, a)

        cells = CellSet(frozenset(pairs))
        performance_monitor.update_metrics(cells_found=len(cells))
        logger.debug(f"{ball.name} at {a}: {len(cells)} cells ({'lp' if use_lp else 'closed'})")
        return cells

    def _enumerate_closed(self, ball: UnitBall, a: QVector) -> List[FacetPair]:
        n = ball.n_facets
        found = [FacetPair(F, G) for F in range(n) for G in range(n)
                 if closed_form_contains(ball, F, G, a)]
        performance_monitor.update_metrics(pairs_evaluated=n * n, closed_form_calls=n * n)
        return found

    def _enumerate_cross(self, a: QVector) -> List[FacetPair]:
        # conditions on I and on J separate once the sign tests are done bitwise
        s = SubsetSums(a, table=True)
        full = s.full
        rows = [I for I in range(full + 1) if s.total - s(I) <= s(I)]
        cols = [J for J in range(full + 1) if s(J) <= s.total - s(J)]
        found = [FacetPair(I, J) for I in rows for J in cols
                 if not (I & (full ^ J) & s.neg) and not (J & (full ^ I) & s.pos)]
        count = (full + 1) ** 2
        performance_monitor.update_metrics(pairs_evaluated=count, closed_form_calls=count)
        return found

    def _enumerate_root(self, a: QVector) -> List[FacetPair]:
        s = SubsetSums(a, table=True)
        d, masks = s.d, range(1, s.full)
        found = [FacetPair(I - 1, J - 1) for I in masks for J in masks
                 if wasserstein_cone_contains(d, I, J, a, s)]
        count = len(masks) ** 2
        performance_monitor.update_metrics(pairs_evaluated=count, closed_form_calls=count)
        return found

    def _enumerate_lp(self, ball: UnitBall, a: QVector) -> List[FacetPair]:
        pairs = [FacetPair(F, G) for F, G in itertools.product(range(ball.n_facets), repeat=2)]
        if not self.parallel or len(pairs) < PARALLEL_PAIR_THRESHOLD:
            return self._evaluate_batch(ball, a, pairs)

        batches = [pairs[k:k + PAIR_BATCH_SIZE] for k in range(0, len(pairs), PAIR_BATCH_SIZE)]
        performance_monitor.record_mode("parallel")
        found: List[FacetPair] = []
        with ThreadPoolExecutor(max_workers=self.workers) as executor:
            future_to_batch = {executor.submit(self._evaluate_batch, ball, a, batch): batch_idx
                               for batch_idx, batch in enumerate(batches)}
            for future in as_completed(future_to_batch):
                batch_idx = future_to_batch[future]
                try:
                    found.extend(future.result())
                except Exception as e:
                    logger.error(f"Batch {batch_idx} of {len(batches)} failed: {e}")
                    raise
        return found

    @staticmethod
    def _evaluate_batch(ball: UnitBall, a: QVector, batch: Sequence[FacetPair]) -> List[FacetPair]:
        found = [p for p in batch if cell_nonempty_oracle(ball, p.F, p.G, a)]
        performance_monitor.update_metrics(pairs_evaluated=len(batch))
        return found

    def cell_count(self, ball: UnitBall, a: QVector, method: str = "auto") -> int:
        return len(self.enumerate_cells(ball, a, method))

    def equivalent(self, ball: UnitBall, a: QVector, b: QVector, method: str = "auto") -> bool:
        """Both sites have the same set of nonempty cells."""
        _require_site(ball, a)
        _require_site(ball, b)
        return self.enumerate_cells(ball, a, method) == self.enumerate_cells(ball, b, method)

    # ========================================
    # CELLS
    # ========================================

    def cell_witness(self, ball: UnitBall, F: int, G: int, a: QVector) -> Optional[QVector]:
        """A point of bis_{F,G}(0, a), None when the cell is empty."""
        _require_site(ball, a)
        if ball.family in (Family.CUBE, Family.CROSS, Family.ROOT_A):
            x = closed_form_witness(ball, F, G, a)
            if x is not None and not verify_witness(ball, F, G, a, x):
                raise InvariantBreach(f"constructed point {x} is not in cell ({F}, {G}) of {a}")
            return x
        return cell_witness_lp(ball, F, G, a)

    def cell_is_full_dimensional(self, ball: UnitBall, F: int, G: int, a: QVector) -> bool:
        _require_site(ball, a)
        return cell_interior_oracle(ball, F, G, a)

    # ========================================
    # GENERICITY
    # ========================================

    def genericity(self, ball: UnitBall, a: QVector) -> GenericityReport:
        weak = is_weak_general_position(ball, a)
        violations = weak_general_violations(ball, a)
        checks = {
            Family.POLYGON: _polygon_violations,
            Family.CUBE: _cube_violations,
            Family.CROSS: _cross_violations,
            Family.ROOT_A: _root_violations,
        }
        check = checks.get(ball.family)
        if check is None:
            return GenericityReport(weak, None, tuple(violations))
        extra = check(ball, a)
        violations += [v for v in extra if v not in violations]
        return GenericityReport(weak, weak and not extra, tuple(violations))


# ========================================
# GENERAL POSITION TESTS
# ========================================

def _polygon_violations(ball: UnitBall, a: QVector) -> List[str]:
    v = ball.vertices
    return [f"a is parallel to v{i + 1} - v{j + 1}"
            for i, j in itertools.combinations(range(len(v)), 2)
            if cross2(v[i] - v[j], a) == 0]


def _cube_violations(ball: UnitBall, a: QVector) -> List[str]:
    found = [f"a_{i + 1} = 0" for i, c in enumerate(a) if c == 0]
    found += [f"|a_{i + 1}| = |a_{j + 1}| = {format_rational(abs(a[i]))}"
              for i, j in itertools.combinations(range(a.dim), 2)
              if a[i] != 0 and abs(a[i]) == abs(a[j])]
    return found


def _cross_violations(ball: UnitBall, a: QVector) -> List[str]:
    d = a.dim
    found = [f"a_{i + 1} = 0" for i, c in enumerate(a) if c == 0]
    s = SubsetSums(a, table=True)
    # one representative per complementary pair: the subset holding index 1
    for I in range(1, s.full + 1, 2):
        if s(I) == s(s.full ^ I):
            found.append(f"a{format_subset(I, d)} = a{format_subset(s.full ^ I, d)} = {format_rational(s(I))}")
    return found


def _root_violations(ball: UnitBall, a: QVector) -> List[str]:
    d = a.dim
    s = SubsetSums(a, table=True)
    found = [f"a{format_subset(I, d)} = 0" for I in range(1, s.full) if s(I) == 0]
    for support, name in ((s.pos, "positive"), (s.neg, "negative")):
        low = support & -support
        # X runs over subsets of the support containing its lowest index
        X = support
        while X:
            if X & low and X != support and s(X) == s(support ^ X):
                found.append(f"{name} support tie a{format_subset(X, d)} = a{format_subset(support ^ X, d)}")
            X = (X - 1) & support
    return found


# ========================================
# SERVICE FACTORY
# ========================================

def create_bisector_service(parallel: Optional[bool] = None) -> BisectorService:
    """
    Create and configure a bisector service instance.

    Returns:
        BisectorService: Configured service instance
    """
    return BisectorService(PARALLEL_PROCESSING_ENABLED if parallel is None else parallel)


_default_service = BisectorService()


def enumerate_cells(ball: UnitBall, a: QVector, method: str = "auto") -> CellSet:
    return _default_service.enumerate_cells(ball, a, method)


def cell_count(ball: UnitBall, a: QVector, method: str = "auto") -> int:
    return _default_service.cell_count(ball, a, method)


def equivalent(ball: UnitBall, a: QVector, b: QVector, method: str = "auto") -> bool:
    return _default_service.equivalent(ball, a, b, method)


def genericity(ball: UnitBall, a: QVector) -> GenericityReport:
    return _default_service.genericity(ball, a)


def cell_witness(ball: UnitBall, F: int, G: int, a: QVector) -> Optional[QVector]:
    return _default_service.cell_witness(ball, F, G, a)


def cell_is_full_dimensional(ball: UnitBall, F: int, G: int, a: QVector) -> bool:
    return _default_service.cell_is_full_dimensional(ball, F, G, a)
