"""Lattice enumeration kernels working on Gram matrices.

The exact kernels (``gram_lll``, ``short_vectors``, ``shortest_vectors``) take rational Gram matrices and never round:
integer ranges are derived with ``isqrt`` and every candidate is filtered by an exact evaluation of the form. The real
kernel (``real_enumerate``) runs at the caller's mpmath working precision and is used on log-unit lattices, where
results are candidates that callers confirm exactly.
"""

import logging
from collections.abc import Iterator, Sequence
from fractions import Fraction
from math import ceil, floor, isqrt
from typing import Optional

from mpmath import mp, mpf

from . import linalg

logger = logging.getLogger(__name__)

IntVector = tuple[int, ...]
HALF = Fraction(1, 2)


def sign_normalize(vector: Sequence[int]) -> IntVector:
    """Negate so that the first nonzero coordinate is positive."""
    for value in vector:
        if value:
            return tuple(vector) if value > 0 else tuple(-v for v in vector)
    return tuple(vector)


def quadratic_value(gram: Sequence[Sequence[Fraction]], vector: Sequence[int]) -> Fraction:
    return linalg.dot(vector, linalg.mat_vec(gram, vector))


def _congruence(basis: Sequence[Sequence[int]], gram: Sequence[Sequence[Fraction]]) -> linalg.FractionMatrix:
    """basis * gram * basis^T."""
    products = [linalg.vec_mat(row, gram) for row in basis]
    return tuple(tuple(linalg.dot(p, row) for row in basis) for p in products)


def _gram_schmidt(gram: Sequence[Sequence[Fraction]]) -> tuple[list[list[Fraction]], list[Fraction]]:
    n = len(gram)
    mu = [[Fraction(0)] * n for _ in range(n)]
    norms = [Fraction(0)] * n
    for i in range(n):
        for j in range(i):
            mu[i][j] = (gram[i][j] - sum((mu[j][k] * mu[i][k] * norms[k] for k in range(j)), Fraction(0))) / norms[j]
        norms[i] = gram[i][i] - sum((mu[i][k] ** 2 * norms[k] for k in range(i)), Fraction(0))
    return mu, norms


def gram_lll(
    gram: Sequence[Sequence[Fraction]], delta: Fraction = Fraction(3, 4)
) -> tuple[linalg.FractionMatrix, tuple[IntVector, ...]]:
    """LLL-reduce a positive definite Gram matrix exactly.

    Returns:
        (reduced, transform) with reduced = transform * gram * transform^T and transform unimodular.
    """
    n = len(gram)
    original = tuple(tuple(Fraction(v) for v in row) for row in gram)
    transform = [[int(i == j) for j in range(n)] for i in range(n)]
    current = original
    k = 1
    while k < n:
        for j in reversed(range(k)):
            mu, _ = _gram_schmidt(current)
            if abs(mu[k][j]) > HALF:
                r = floor(mu[k][j] + HALF)
                transform[k] = [a - r * b for a, b in zip(transform[k], transform[j])]
                current = _congruence(transform, original)
        mu, norms = _gram_schmidt(current)
        if norms[k] >= (delta - mu[k][k - 1] ** 2) * norms[k - 1]:
            k += 1
        else:
            transform[k], transform[k - 1] = transform[k - 1], transform[k]
            current = _congruence(transform, original)
            k = max(k - 1, 1)
    return current, tuple(tuple(row) for row in transform)


def ldl_decomposition(gram: Sequence[Sequence[Fraction]]) -> tuple[list[Fraction], list[list[Fraction]]]:
    """Completion of squares: x^T G x = sum_i d[i] * (x_i + sum_{j>i} u[i][j] x_j)^2."""
    n = len(gram)
    diagonal = [Fraction(0)] * n
    upper = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        diagonal[i] = Fraction(gram[i][i]) - sum((diagonal[k] * upper[k][i] ** 2 for k in range(i)), Fraction(0))
        if diagonal[i] <= 0:
            raise ValueError("Gram matrix is not positive definite")
        for j in range(i + 1, n):
            upper[i][j] = (
                Fraction(gram[i][j]) - sum((diagonal[k] * upper[k][i] * upper[k][j] for k in range(i)), Fraction(0))
            ) / diagonal[i]
    return diagonal, upper


def _integer_window(center: Fraction, radius_sq: Fraction) -> range:
    """A superset of the integers y with (y - center)^2 <= radius_sq."""
    reach = isqrt(max(ceil(radius_sq), 0)) + 1
    return range(floor(center) - reach, ceil(center) + reach + 1)


def _search(
    diagonal: list[Fraction], upper: list[list[Fraction]], bound: Fraction, shrink: bool
) -> Iterator[tuple[IntVector, Fraction]]:
    """Depth-first walk yielding (y, Q(y)) for nonzero y with Q(y) <= bound.

    With ``shrink`` the bound is lowered to every value yielded, so only candidates for the minimum survive.
    """
    n = len(diagonal)
    y = [0] * n
    state = {"bound": bound}

    def descend(i: int, used: Fraction) -> Iterator[tuple[IntVector, Fraction]]:
        center = -sum((upper[i][j] * y[j] for j in range(i + 1, n)), Fraction(0))
        for value in _integer_window(center, (state["bound"] - used) / diagonal[i]):
            total = used + diagonal[i] * (value - center) ** 2
            if total > state["bound"]:
                continue
            y[i] = value
            if i == 0:
                if any(y):
                    if shrink:
                        state["bound"] = total
                    yield tuple(y), total
            else:
                yield from descend(i - 1, total)
        y[i] = 0

    yield from descend(n - 1, Fraction(0))


def short_vectors(gram: Sequence[Sequence[Fraction]], bound: Fraction) -> list[tuple[IntVector, Fraction]]:
    """All nonzero integer x (up to sign) with x^T G x <= bound, sorted by (value, x)."""
    reduced, transform = gram_lll(gram)
    diagonal, upper = ldl_decomposition(reduced)
    found = {}
    for y, value in _search(diagonal, upper, Fraction(bound), shrink=False):
        x = sign_normalize(linalg.vec_mat(y, transform))
        found[tuple(int(v) for v in x)] = value
    return sorted(((x, v) for x, v in found.items()), key=lambda item: (item[1], item[0]))


def shortest_vectors(
    gram: Sequence[Sequence[Fraction]], seed_bound: Optional[Fraction] = None
) -> tuple[Fraction, list[IntVector]]:
    """Exact minimum of a positive definite integral-lattice form and all minimizers, sign-normalized and sorted."""
    reduced, transform = gram_lll(gram)
    diagonal, upper = ldl_decomposition(reduced)
    bound = min(reduced[i][i] for i in range(len(reduced)))
    if seed_bound is not None and seed_bound < bound:
        bound = Fraction(seed_bound)
    best = None
    minimizers: set[IntVector] = set()
    for y, value in _search(diagonal, upper, bound, shrink=True):
        if best is None or value < best:
            best = value
            minimizers = set()
        if value == best:
            minimizers.add(sign_normalize(tuple(int(v) for v in linalg.vec_mat(y, transform))))
    if best is None:
        # the seed undercut the minimum; the diagonal bound is always attained
        logger.debug("seed bound below the minimum; repeating with the reduced diagonal")
        return shortest_vectors(gram)
    return best, sorted(minimizers)


def real_cholesky(gram: Sequence[Sequence[mpf]]) -> tuple[list[mpf], list[list[mpf]]]:
    n = len(gram)
    diagonal = [mpf(0)] * n
    upper = [[mpf(0)] * n for _ in range(n)]
    for i in range(n):
        diagonal[i] = gram[i][i] - mp.fsum(diagonal[k] * upper[k][i] ** 2 for k in range(i))
        if diagonal[i] <= 0:
            raise ValueError("Gram matrix is not positive definite at working precision")
        for j in range(i + 1, n):
            upper[i][j] = (gram[i][j] - mp.fsum(diagonal[k] * upper[k][i] * upper[k][j] for k in range(i))) / diagonal[
                i
            ]
    return diagonal, upper


def real_enumerate(
    gram: Sequence[Sequence[mpf]], bound: mpf, center: Optional[Sequence[mpf]] = None, include_zero: bool = False
) -> list[tuple[IntVector, mpf]]:
    """All integer y with (y - center)^T G (y - center) <= bound at working precision, sorted by (value, y).

    The bound is widened by a relative 2^-(prec/2) so that ties decided by rounding are kept.
    """
    n = len(gram)
    if n == 0:
        return [((), mpf(0))] if include_zero else []
    diagonal, upper = real_cholesky(gram)
    center = [mpf(0)] * n if center is None else list(center)
    slack = bound * (1 + mpf(2) ** (-(mp.prec // 2))) + mpf(2) ** (-(mp.prec // 2))
    y = [0] * n
    results: list[tuple[IntVector, mpf]] = []

    def descend(i: int, used: mpf) -> None:
        shift = center[i] - mp.fsum(upper[i][j] * (y[j] - center[j]) for j in range(i + 1, n))
        reach = mp.sqrt(max(slack - used, mpf(0)) / diagonal[i])
        for value in range(int(mp.floor(shift - reach)), int(mp.ceil(shift + reach)) + 1):
            total = used + diagonal[i] * (value - shift) ** 2
            if total > slack:
                continue
            y[i] = value
            if i == 0:
                if include_zero or any(y):
                    results.append((tuple(y), total))
            else:
                descend(i - 1, total)
        y[i] = 0

    descend(n - 1, mpf(0))
    return sorted(results, key=lambda item: (item[1], item[0]))
