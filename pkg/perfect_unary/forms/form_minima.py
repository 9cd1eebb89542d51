"""Trace forms Tr(a x^2) of unary forms and their minima."""

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from mpmath import mpf

from . import linalg
from .bound_engine import lem2_minimum_bound
from .enumeration import IntVector, quadratic_value, shortest_vectors, sign_normalize
from .errors import NotTotallyPositiveError, ZeroElementError
from .field_core import FieldElement, NumberField
from .unit_lattice import LogUnitLattice, reduce_by_units

logger = logging.getLogger(__name__)

BRUTE_FORCE_BOX = 10


@dataclass(frozen=True)
class TraceGram:
    entries: linalg.FractionMatrix
    form_element: FieldElement
    positive_definite: bool

    def value(self, x: IntVector) -> Fraction:
        return quadratic_value(self.entries, x)

    def determinant(self) -> Fraction:
        return linalg.det(self.entries)


@dataclass(frozen=True)
class MinimaRecord:
    """mu(a) and the minimal vectors, one per sign pair with the first nonzero coordinate positive."""

    minimum: Fraction
    vectors: tuple[IntVector, ...]

    def elements(self, field: NumberField) -> list[FieldElement]:
        return [field.element(x) for x in self.vectors]


def _leading_minors_positive(entries: linalg.FractionMatrix) -> bool:
    return all(linalg.det([row[:k] for row in entries[:k]]) > 0 for k in range(1, len(entries) + 1))


def trace_gram(field: NumberField, a: FieldElement) -> TraceGram:
    """G_ij = Tr(a omega_i omega_j)."""
    if a.is_zero():
        raise ZeroElementError("the zero form has no trace Gram matrix")
    n = field.degree
    cube = field.trace_cube
    entries = tuple(
        tuple(sum((a.coords[k] * cube[k][i][j] for k in range(n) if a.coords[k]), Fraction(0)) for j in range(n))
        for i in range(n)
    )
    return TraceGram(entries=entries, form_element=a, positive_definite=_leading_minors_positive(entries))


def _seed_bound(field: NumberField, a: FieldElement) -> Fraction:
    bound = lem2_minimum_bound(field.degree, field.discriminant, a.norm())
    return Fraction(float(bound)) * Fraction(1_000_001, 1_000_000)


def _transport(vectors: list[IntVector], unit: FieldElement) -> tuple[IntVector, ...]:
    field = unit.field
    moved = set()
    for y in vectors:
        x = field.element(y) * unit
        moved.add(sign_normalize(tuple(int(c) for c in x.coords)))
    return tuple(sorted(moved))


def minimum_and_vectors(
    field: NumberField, a: FieldElement, lattice: Optional[LogUnitLattice] = None
) -> MinimaRecord:
    """Exact mu(a) and M(a).

    When a log-unit lattice is given the form is first unit-reduced to a' = a u^2, which keeps the enumeration
    small, and the minimal vectors y of a' are carried back as x = u y.
    """
    if not field.is_totally_positive(a):
        raise NotTotallyPositiveError(f"{a} is not totally positive")
    unit = None
    if lattice is not None and lattice.rank > 0:
        a, unit = reduce_by_units(a, lattice)
    gram = trace_gram(field, a)
    minimum, vectors = shortest_vectors(gram.entries, _seed_bound(field, a))
    logger.debug(f"mu = {minimum} with {len(vectors)} minimal vectors")
    if unit is None or unit == field.one():
        return MinimaRecord(minimum=minimum, vectors=tuple(vectors))
    return MinimaRecord(minimum=minimum, vectors=_transport(vectors, unit))


def scaled_minimum(
    field: NumberField, a: FieldElement, scale: Fraction, lattice: Optional[LogUnitLattice] = None
) -> tuple[IntVector, ...]:
    """Check mu(scale * a) = scale * mu(a) with identical minimal vectors; returns the common vectors."""
    scale = Fraction(scale)
    if scale <= 0:
        raise ValueError("scaling factor must be positive")
    base = minimum_and_vectors(field, a, lattice)
    scaled = minimum_and_vectors(field, a * scale, lattice)
    if scaled.minimum != scale * base.minimum or scaled.vectors != base.vectors:
        raise ValueError(f"scaling by {scale} does not act linearly on the minimum of {a}")
    return base.vectors


def brute_force_minimum(field: NumberField, a: FieldElement, box: int = BRUTE_FORCE_BOX) -> MinimaRecord:
    """mu and M restricted to integral coordinates in [-box, box]^n."""
    gram = trace_gram(field, a)
    best: Optional[Fraction] = None
    vectors: list[IntVector] = []
    for x in itertools.product(range(-box, box + 1), repeat=field.degree):
        if not any(x) or sign_normalize(x) != x:
            continue
        value = gram.value(x)
        if best is None or value < best:
            best, vectors = value, [x]
        elif value == best:
            vectors.append(x)
    return MinimaRecord(minimum=best, vectors=tuple(sorted(vectors)))


def within_box(record: MinimaRecord, box: int = BRUTE_FORCE_BOX) -> bool:
    return all(abs(c) <= box for x in record.vectors for c in x)


def invariant(record: MinimaRecord, a: FieldElement) -> tuple[int, Fraction]:
    """(|M|, mu^n / Nm(a)): unchanged under scaling and unit-square equivalence."""
    return len(record.vectors), record.minimum ** a.field.degree / a.norm()


def max_abs_norm(field: NumberField, record: MinimaRecord) -> Fraction:
    return max(abs(field.element(x).norm()) for x in record.vectors)


def mu_product(field: NumberField, a: FieldElement, lattice: Optional[LogUnitLattice] = None) -> Fraction:
    """mu(a) * mu(a^-1)."""
    return minimum_and_vectors(field, a, lattice).minimum * minimum_and_vectors(field, a.inverse(), lattice).minimum


def as_real(value: Fraction) -> mpf:
    return mpf(value.numerator) / value.denominator
