"""Exact rational linear algebra over ``fractions.Fraction`` backed by sympy matrices."""

from collections.abc import Iterable, Sequence
from fractions import Fraction
from functools import reduce
from math import gcd, lcm

from sympy import Matrix, Rational

FractionRow = tuple[Fraction, ...]
FractionMatrix = tuple[FractionRow, ...]


def to_rational(value: Fraction | int) -> Rational:
    value = Fraction(value)
    return Rational(value.numerator, value.denominator)


def from_rational(value: Rational) -> Fraction:
    return Fraction(int(value.p), int(value.q))


def to_matrix(rows: Sequence[Sequence[Fraction | int]]) -> Matrix:
    return Matrix([[to_rational(v) for v in row] for row in rows])


def from_matrix(matrix: Matrix) -> FractionMatrix:
    return tuple(tuple(from_rational(matrix[i, j]) for j in range(matrix.cols)) for i in range(matrix.rows))


def det(rows: Sequence[Sequence[Fraction | int]]) -> Fraction:
    if not rows:
        return Fraction(1)
    return from_rational(to_matrix(rows).det(method="bareiss"))


def rank(rows: Sequence[Sequence[Fraction | int]]) -> int:
    if not rows:
        return 0
    return int(to_matrix(rows).rank())


def independent_rows(rows: Sequence[Sequence[Fraction | int]]) -> tuple[int, ...]:
    """Indices of a maximal linearly independent subset of ``rows``, greedily from the front."""
    if not rows:
        return ()
    _, pivots = to_matrix(rows).T.rref()
    return tuple(int(p) for p in pivots)


def nullspace(rows: Sequence[Sequence[Fraction | int]], ncols: int) -> list[FractionRow]:
    """Basis of {v : rows · v = 0}."""
    if not rows:
        return [tuple(Fraction(int(i == j)) for j in range(ncols)) for i in range(ncols)]
    return [tuple(from_rational(v) for v in column) for column in to_matrix(rows).nullspace()]


def inverse(rows: Sequence[Sequence[Fraction | int]]) -> FractionMatrix:
    return from_matrix(to_matrix(rows).inv())


def solve(rows: Sequence[Sequence[Fraction | int]], rhs: Sequence[Fraction | int]) -> FractionRow:
    """Solve ``rows · x = rhs`` for a square nonsingular system."""
    solution = to_matrix(rows).LUsolve(Matrix([to_rational(v) for v in rhs]))
    return tuple(from_rational(v) for v in solution)


def mat_vec(rows: Sequence[Sequence[Fraction | int]], vector: Sequence[Fraction | int]) -> FractionRow:
    return tuple(sum((Fraction(a) * b for a, b in zip(row, vector)), Fraction(0)) for row in rows)


def vec_mat(vector: Sequence[Fraction | int], rows: Sequence[Sequence[Fraction | int]]) -> FractionRow:
    ncols = len(rows[0]) if rows else 0
    return tuple(sum((Fraction(vector[i]) * rows[i][j] for i in range(len(rows))), Fraction(0)) for j in range(ncols))


def dot(u: Iterable[Fraction | int], v: Iterable[Fraction | int]) -> Fraction:
    return sum((Fraction(a) * b for a, b in zip(u, v)), Fraction(0))


def primitive_integer_vector(vector: Sequence[Fraction | int]) -> tuple[int, ...]:
    """Positive rescaling of a nonzero rational vector to coprime integers."""
    values = [Fraction(v) for v in vector]
    denominator = reduce(lcm, (v.denominator for v in values), 1)
    integers = [int(v * denominator) for v in values]
    content = reduce(gcd, (abs(v) for v in integers), 0)
    if content == 0:
        raise ValueError("zero vector has no primitive rescaling")
    return tuple(v // content for v in integers)
