"""The log-unit lattice of a totally real field: regulator, successive minima, reduction by unit squares."""

import itertools
import logging
from collections.abc import Sequence
from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction
from math import isqrt
from typing import NamedTuple, Optional

from mpmath import mp, mpf

from . import linalg
from .bound_engine import gamma_blichfeldt, lambda1_lower
from .enumeration import real_enumerate
from .errors import (
    DependentUnitsError,
    DomainTooSmallError,
    NotAUnitError,
    NotTotallyPositiveError,
    WrongUnitCountError,
    ZeroElementError,
)
from .field_core import FieldElement, NumberField

logger = logging.getLogger(__name__)

MAX_CONTINUED_FRACTION_STEPS = 100_000


def log_embedding(x: FieldElement, bits: Optional[int] = None) -> tuple[mpf, ...]:
    """(log|sigma_1(x)|, ..., log|sigma_n(x)|), accurate to the field's working precision whatever the size of x."""
    if x.is_zero():
        raise ZeroElementError("Log is undefined at 0")
    return x.field.log_abs_embeddings(x, bits)


def _normalize_unit(unit: FieldElement) -> FieldElement:
    """Pick the one of +-u^(+-1) whose largest embedding exceeds 1."""
    field = unit.field
    if log_embedding(unit)[-1] < 0:
        unit = unit.inverse()
    return -unit if field.embedding_signs(unit)[-1] < 0 else unit


def fundamental_unit_quadratic(field: NumberField) -> FieldElement:
    """Fundamental unit of a quadratic order from the continued fraction of its basis generator.

    With omega the larger root of X^2 - t X + m (t, m the trace and norm of omega_2), the convergents p/q of omega
    are scanned in order; the first with |Nm(p - q omega_2)| = 1 is the fundamental unit up to sign and inversion.
    """
    if field.degree != 2:
        raise WrongUnitCountError("continued-fraction units are only available for quadratic fields")
    generator = field.basis_element(1)
    t, m = int(generator.trace()), int(generator.norm())
    discriminant = t * t - 4 * m
    root = isqrt(discriminant)
    p_prev, p = 0, 1
    q_prev, q = 1, 0
    numerator, denominator = t, 2
    for step in range(MAX_CONTINUED_FRACTION_STEPS):
        if denominator > 0:
            partial = (numerator + root) // denominator
        else:
            partial = (numerator + root + 1) // denominator
        p_prev, p = p, partial * p + p_prev
        q_prev, q = q, partial * q + q_prev
        if abs(p * p - t * p * q + m * q * q) == 1:
            logger.debug(f"unit found after {step + 1} continued fraction steps")
            return _normalize_unit(field.element([p, -q]))
        numerator = partial * denominator - numerator
        denominator = (discriminant - numerator * numerator) // denominator
    raise WrongUnitCountError(f"no unit within {MAX_CONTINUED_FRACTION_STEPS} continued fraction steps")


class MinkowskiCheck(NamedTuple):
    passed: bool
    product: mpf
    bound: mpf
    sharper_bound: mpf
    sharper_passed: bool


class Lambda1Check(NamedTuple):
    passed: bool
    lambda1: mpf
    lower: mpf


@dataclass(frozen=True)
class LogUnitLattice:
    field: NumberField = dataclass_field(repr=False)
    units: tuple[FieldElement, ...]
    log_basis: tuple[tuple[mpf, ...], ...]
    regulator: mpf
    successive_minima: tuple[mpf, ...]
    frame_minima: tuple[mpf, ...]
    minors: tuple[mpf, ...] = dataclass_field(repr=False, default=())

    @property
    def rank(self) -> int:
        return len(self.units)

    @property
    def precision_bits(self) -> int:
        return self.field.precision_bits

    def unit_power(self, exponents: Sequence[int]) -> FieldElement:
        result = self.field.one()
        for unit, exponent in zip(self.units, exponents):
            if exponent:
                result = result * unit**exponent
        return result

    def gram(self) -> list[list[mpf]]:
        return _gram(self.log_basis)

    def row_sums(self) -> tuple[mpf, ...]:
        with mp.workprec(self.precision_bits):
            return tuple(mp.fsum(row) for row in self.log_basis)


def _gram(rows: Sequence[Sequence[mpf]]) -> list[list[mpf]]:
    return [[mp.fsum(a * b for a, b in zip(u, v)) for v in rows] for u in rows]


def _successive_minima(rows: Sequence[Sequence[mpf]]) -> tuple[mpf, ...]:
    """Greedy independent selection among all lattice vectors no longer than the longest basis vector."""
    rank = len(rows)
    if rank == 0:
        return ()
    gram = _gram(rows)
    bound = max(gram[i][i] for i in range(rank))
    chosen: list[tuple[int, ...]] = []
    minima: list[mpf] = []
    for exponents, value in real_enumerate(gram, bound):
        if linalg.rank([*chosen, exponents]) > len(chosen):
            chosen.append(exponents)
            minima.append(mp.sqrt(value))
            if len(chosen) == rank:
                break
    return tuple(minima)


def build_log_lattice(field: NumberField, units: Optional[Sequence[FieldElement]] = None) -> LogUnitLattice:
    """Validate the units and compute Log rows, regulator and successive minima."""
    n = field.degree
    if units is None:
        if n == 1:
            units = []
        elif n == 2:
            units = [fundamental_unit_quadratic(field)]
        else:
            raise WrongUnitCountError(f"a degree {n} field needs {n - 1} fundamental units in its description")
    units = tuple(units)
    if len(units) != n - 1:
        raise WrongUnitCountError(f"expected {n - 1} units, got {len(units)}")
    for unit in units:
        if not unit.is_integral() or abs(unit.norm()) != 1:
            raise NotAUnitError(f"{unit} is not a unit (norm {unit.norm()})")
    bits = field.precision_bits
    with mp.workprec(bits):
        log_basis = tuple(log_embedding(unit) for unit in units)
        floor = mpf(2) ** (-(bits // 2))
        for row in log_basis:
            if abs(mp.fsum(row)) > floor:
                raise NotAUnitError("Log row does not lie in the trace-zero hyperplane")
        d = n - 1
        if d == 0:
            minors = (mpf(1),)
        else:
            minors = tuple(
                abs(mp.det(mp.matrix([[row[k] for k in range(n) if k != dropped] for row in log_basis])))
                for dropped in reversed(range(n))
            )
        regulator = minors[0]
        if regulator < floor:
            raise DependentUnitsError(f"regulator {mp.nstr(regulator, 5)} is below the precision floor")
        if any(abs(minor - regulator) > floor * max(1, regulator) for minor in minors):
            logger.warning("log minors disagree beyond working precision")
        frame = tuple(row[:-1] for row in log_basis)
        lattice = LogUnitLattice(
            field=field,
            units=units,
            log_basis=log_basis,
            regulator=regulator,
            successive_minima=_successive_minima(log_basis),
            frame_minima=_successive_minima(frame),
            minors=minors,
        )
    logger.debug(f"log-unit lattice of rank {d} with regulator {mp.nstr(regulator, 12)}")
    return lattice


def covering_radius_upper(lattice: LogUnitLattice) -> mpf:
    """Upper bound on the covering radius, measured in the rank-(n-1) frame where the determinant is R_K."""
    d = lattice.rank
    if d == 0:
        return mpf(0)
    with mp.workprec(lattice.precision_bits):
        factor = mp.sqrt(d) / 2
        by_minima = factor * lattice.frame_minima[-1]
        if d <= 10:
            return min(factor * lattice.regulator ** (mpf(1) / d), by_minima)
        return by_minima


def minkowski_check(lattice: LogUnitLattice) -> MinkowskiCheck:
    """prod(lambda_i) against gamma_d^d * R_K (weak form) and gamma_d^(d/2) * R_K (sharper)."""
    d = lattice.rank
    with mp.workprec(lattice.precision_bits):
        if d == 0:
            one = mpf(1)
            return MinkowskiCheck(True, one, one, one, True)
        product = mp.fprod(lattice.frame_minima)
        gamma = gamma_blichfeldt(d)
        bound = gamma**d * lattice.regulator
        sharper = gamma ** (mpf(d) / 2) * lattice.regulator
        tolerance = mpf(2) ** (-(lattice.precision_bits // 2))
        result = MinkowskiCheck(product <= bound + tolerance, product, bound, sharper, product <= sharper + tolerance)
    if not result.sharper_passed:
        logger.info(f"sharper Minkowski form fails: {mp.nstr(product, 8)} > {mp.nstr(sharper, 8)}")
    return result


def lambda1_check(lattice: LogUnitLattice) -> Lambda1Check:
    n = lattice.field.degree
    if n < 12:
        raise DomainTooSmallError("the lambda_1 lower bound is only checked for n >= 12")
    lower = lambda1_lower(n)
    lambda1 = lattice.successive_minima[0]
    return Lambda1Check(lambda1 >= lower, lambda1, lower)


def _projected_log(x: FieldElement, bits: int) -> list[mpf]:
    logs = log_embedding(x, bits)
    mean = mp.fsum(logs) / len(logs)
    return [value - mean for value in logs]


def _exponent_center(lattice: LogUnitLattice, target: Sequence[mpf]) -> tuple[list[list[mpf]], list[mpf]]:
    """Gram 4 L L^T of 2*Lambda and the real exponents minimising |2 e L - target|."""
    gram = [[4 * value for value in row] for row in lattice.gram()]
    rhs = [2 * mp.fsum(a * b for a, b in zip(row, target)) for row in lattice.log_basis]
    center = mp.lu_solve(mp.matrix(gram), mp.matrix(rhs))
    return gram, [center[i] for i in range(lattice.rank)]


def _closest_exponents(lattice: LogUnitLattice, target: Sequence[mpf]) -> tuple[int, ...]:
    gram, center = _exponent_center(lattice, target)
    rounded = [int(mp.nint(c)) for c in center]
    babai = mp.fsum(
        (rounded[i] - center[i]) * gram[i][j] * (rounded[j] - center[j])
        for i in range(lattice.rank)
        for j in range(lattice.rank)
    )
    candidates = real_enumerate(gram, babai, center=center, include_zero=True)
    return candidates[0][0] if candidates else tuple(rounded)


def _trace_key(x: FieldElement) -> tuple[Fraction, tuple[Fraction, ...]]:
    return x.trace(), x.coords


def reduce_by_units(a: FieldElement, lattice: LogUnitLattice) -> tuple[FieldElement, FieldElement]:
    """Return (a * u^2, u) with u near the closest point of 2*Lambda_K to -Log(a), then refined exactly.

    The refinement moves to the exact trace minimum of the exponent box of radius 1 and repeats until the centre of
    the box is its own minimum.
    """
    field = a.field
    if not field.is_totally_positive(a):
        raise NotTotallyPositiveError(f"{a} is not totally positive")
    if lattice.rank == 0:
        return a, field.one()
    with mp.workprec(lattice.precision_bits):
        target = [-value for value in _projected_log(a, lattice.precision_bits)]
        exponents = _closest_exponents(lattice, target)
    best_exponents = tuple(exponents)
    unit = lattice.unit_power(best_exponents)
    best = a * unit * unit
    box = list(itertools.product((-1, 0, 1), repeat=lattice.rank))
    while True:
        moved = False
        center_exponents = best_exponents
        for step in box:
            if not any(step):
                continue
            candidate_exponents = tuple(e + s for e, s in zip(center_exponents, step))
            candidate_unit = lattice.unit_power(candidate_exponents)
            candidate = a * candidate_unit * candidate_unit
            if _trace_key(candidate) < _trace_key(best):
                best, best_exponents, unit = candidate, candidate_exponents, candidate_unit
                moved = True
        if not moved:
            break
    return best, unit


def unit_equivalence_witness(
    a: FieldElement, b: FieldElement, lattice: LogUnitLattice
) -> Optional[tuple[Fraction, FieldElement]]:
    """(lam, u) with b = lam * a * u^2 exactly, or None when a and b are not homothetic up to unit squares."""
    field = a.field
    if a.is_zero() or b.is_zero():
        return None
    ratio = b / a
    if not field.is_totally_positive(ratio):
        return None
    if lattice.rank == 0:
        return ratio.coords[0], field.one()
    with mp.workprec(lattice.precision_bits):
        _, center = _exponent_center(lattice, _projected_log(ratio, lattice.precision_bits))
        rounded = tuple(int(mp.nint(c)) for c in center)
    steps = sorted(itertools.product((-1, 0, 1), repeat=lattice.rank), key=lambda s: (sum(map(abs, s)), s))
    for step in steps:
        unit = lattice.unit_power([e + s for e, s in zip(rounded, step)])
        quotient = ratio / (unit * unit)
        if quotient.coords[0] > 0 and not any(quotient.coords[1:]):
            return quotient.coords[0], unit
    return None
