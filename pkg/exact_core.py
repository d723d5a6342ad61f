"""
PolyBisect Exact Core Module
Rational scalars, immutable vectors and matrices, and small exact linear algebra.
Nothing in the package rounds: every coordinate is a reduced Fraction.
"""
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, List, Sequence, Tuple, Union

from errors import DimMismatch, NoSolution, SingularMap, Underdetermined, ZeroDenominator

logger = logging.getLogger(__name__)

Rational = Fraction
RationalLike = Union[int, Fraction]


def rat(num: int, den: int = 1) -> Rational:
    """Reduced rational num/den with positive denominator."""
    if den == 0:
        raise ZeroDenominator(f"zero denominator in {num}/{den}")
    return Fraction(num, den)


def to_rational(value: RationalLike) -> Rational:
    """Coerce an exact scalar; floats are refused so nothing is rounded silently."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"expected int or Fraction, got {type(value).__name__}")


@dataclass(frozen=True)
class QVector:
    """Immutable exact coordinate vector."""
    coords: Tuple[Rational, ...]

    def __post_init__(self):
        object.__setattr__(self, 'coords', tuple(to_rational(c) for c in self.coords))

    @classmethod
    def of(cls, *values: RationalLike) -> 'QVector':
        return cls(tuple(values))

    @classmethod
    def zero(cls, dim: int) -> 'QVector':
        return cls((Fraction(0),) * dim)

    @classmethod
    def unit(cls, dim: int, index: int, sign: int = 1) -> 'QVector':
        return cls(tuple(Fraction(sign) if k == index else Fraction(0) for k in range(dim)))

    @property
    def dim(self) -> int:
        return len(self.coords)

    def __len__(self) -> int:
        return len(self.coords)

    def __iter__(self) -> Iterator[Rational]:
        return iter(self.coords)

    def __getitem__(self, index: int) -> Rational:
        return self.coords[index]

    def _check(self, other: 'QVector'):
        if self.dim != other.dim:
            raise DimMismatch(f"dimension {self.dim} vs {other.dim}")

    def __add__(self, other: 'QVector') -> 'QVector':
        self._check(other)
        return QVector(tuple(x + y for x, y in zip(self.coords, other.coords)))

    def __sub__(self, other: 'QVector') -> 'QVector':
        self._check(other)
        return QVector(tuple(x - y for x, y in zip(self.coords, other.coords)))

    def __neg__(self) -> 'QVector':
        return QVector(tuple(-x for x in self.coords))

    def __mul__(self, scalar: RationalLike) -> 'QVector':
        t = to_rational(scalar)
        return QVector(tuple(t * x for x in self.coords))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.coords)

    def total(self) -> Rational:
        return sum(self.coords, Fraction(0))

    def extend(self, *values: RationalLike) -> 'QVector':
        return QVector(self.coords + tuple(values))

    def to_strings(self) -> List[str]:
        return [format_rational(x) for x in self.coords]

    def __str__(self) -> str:
        return "(" + ", ".join(self.to_strings()) + ")"


@dataclass(frozen=True)
class QMatrix:
    """Immutable rectangular exact matrix stored by rows."""
    rows: Tuple[QVector, ...]

    def __post_init__(self):
        rows = tuple(r if isinstance(r, QVector) else QVector(tuple(r)) for r in self.rows)
        if rows and any(r.dim != rows[0].dim for r in rows):
            raise DimMismatch("matrix rows have different lengths")
        object.__setattr__(self, 'rows', rows)

    @classmethod
    def from_lists(cls, rows: Iterable[Iterable[RationalLike]]) -> 'QMatrix':
        return cls(tuple(QVector(tuple(r)) for r in rows))

    @classmethod
    def identity(cls, n: int) -> 'QMatrix':
        return cls(tuple(QVector.unit(n, i) for i in range(n)))

    @classmethod
    def diagonal(cls, values: Sequence[RationalLike]) -> 'QMatrix':
        n = len(values)
        return cls(tuple(QVector.unit(n, i) * values[i] for i in range(n)))

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    @property
    def n_cols(self) -> int:
        return self.rows[0].dim if self.rows else 0

    def apply(self, v: QVector) -> QVector:
        if v.dim != self.n_cols:
            raise DimMismatch(f"matrix with {self.n_cols} columns applied to vector of dim {v.dim}")
        return QVector(tuple(dot(r, v) for r in self.rows))

    def transpose(self) -> 'QMatrix':
        return QMatrix(tuple(QVector(tuple(r[j] for r in self.rows)) for j in range(self.n_cols)))

    def __neg__(self) -> 'QMatrix':
        return QMatrix(tuple(-r for r in self.rows))


def dot(u: QVector, v: QVector) -> Rational:
    if u.dim != v.dim:
        raise DimMismatch(f"dot of dimension {u.dim} and {v.dim}")
    return sum((x * y for x, y in zip(u.coords, v.coords)), Fraction(0))


def format_rational(x: Rational) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def clear_denominators(values: Sequence[Rational]) -> List[int]:
    """Integer row proportional to `values` (positive factor)."""
    scale = 1
    for x in values:
        scale = math.lcm(scale, x.denominator)
    return [int(x * scale) for x in values]


def primitive_direction(v: QVector) -> Tuple[int, ...]:
    """Primitive integer vector spanning the same ray as v."""
    ints = clear_denominators(v.coords)
    g = 0
    for x in ints:
        g = math.gcd(g, x)
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)


def _fraction_free_echelon(rows: List[List[Rational]], n_pivot_cols: int) -> Tuple[List[List[Rational]], List[int], int]:
    """
    Bareiss-style elimination: each update divides by the previous pivot, so
    integer input stays integral. Returns (matrix, pivot columns, swap parity).
    """
    m = [list(r) for r in rows]
    pivots: List[int] = []
    prev = Fraction(1)
    swaps = 0
    r = 0
    for c in range(n_pivot_cols):
        if r == len(m):
            break
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        if p != r:
            m[r], m[p] = m[p], m[r]
            swaps += 1
        pivot = m[r][c]
        for i in range(r + 1, len(m)):
            factor = m[i][c]
            for j in range(c + 1, len(m[i])):
                m[i][j] = (pivot * m[i][j] - factor * m[r][j]) / prev
            m[i][c] = Fraction(0)
        prev = pivot
        pivots.append(c)
        r += 1
    return m, pivots, swaps


def solve_linear(A: QMatrix, b: QVector) -> QVector:
    """
    Exact solution of A x = b.

    Raises NoSolution for inconsistent systems and Underdetermined (with the
    rank) when the solution is not unique.
    """
    if b.dim != A.n_rows:
        raise DimMismatch(f"{A.n_rows} equations but right-hand side of dim {b.dim}")
    n = A.n_cols
    augmented = [[Fraction(x) for x in clear_denominators(list(row.coords) + [rhs])]
                 for row, rhs in zip(A.rows, b.coords)]
    m, pivots, _ = _fraction_free_echelon(augmented, n)

    for row in m[len(pivots):]:
        if row[n] != 0:
            raise NoSolution("inconsistent linear system")
    if len(pivots) < n:
        raise Underdetermined(f"rank {len(pivots)} < {n} unknowns", rank=len(pivots))

    x = [Fraction(0)] * n
    for r in range(n - 1, -1, -1):
        acc = m[r][n] - sum((m[r][j] * x[j] for j in range(r + 1, n)), Fraction(0))
        x[r] = acc / m[r][r]
    return QVector(tuple(x))


def rank(vectors: Sequence[QVector]) -> int:
    if not vectors:
        return 0
    _, pivots, _ = _fraction_free_echelon([list(v.coords) for v in vectors], vectors[0].dim)
    return len(pivots)


def determinant(M: QMatrix) -> Rational:
    if M.n_rows != M.n_cols:
        raise DimMismatch("determinant of a non-square matrix")
    n = M.n_rows
    if n == 0:
        return Fraction(1)
    m, pivots, swaps = _fraction_free_echelon([list(r.coords) for r in M.rows], n)
    if len(pivots) < n:
        return Fraction(0)
    det = m[n - 1][n - 1]
    return -det if swaps % 2 else det


def inverse(M: QMatrix) -> QMatrix:
    if M.n_rows != M.n_cols or determinant(M) == 0:
        raise SingularMap("matrix is not invertible")
    n = M.n_rows
    columns = [solve_linear(M, QVector.unit(n, k)) for k in range(n)]
    return QMatrix(tuple(columns)).transpose()


def cross2(u: QVector, v: QVector) -> Rational:
    """z-component of the planar cross product."""
    return u[0] * v[1] - u[1] * v[0]


def cross3(u: QVector, v: QVector) -> QVector:
    return QVector((u[1] * v[2] - u[2] * v[1],
                    u[2] * v[0] - u[0] * v[2],
                    u[0] * v[1] - u[1] * v[0]))


def _half_plane(x: Rational, y: Rational) -> int:
    return 0 if y > 0 or (y == 0 and x > 0) else 1


def compare_angles(u: Sequence[Rational], v: Sequence[Rational]) -> int:
    """
    Exact counter-clockwise order of planar directions starting at the positive
    x-axis, for use with functools.cmp_to_key.
    """
    hu, hv = _half_plane(u[0], u[1]), _half_plane(v[0], v[1])
    if hu != hv:
        return hu - hv
    turn = u[0] * v[1] - u[1] * v[0]
    return -1 if turn > 0 else (1 if turn < 0 else 0)
