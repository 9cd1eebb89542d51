"""Property suites tying enumerations, minima and unit lattices to the closed-form bounds.

Each suite returns a ``CheckOutcome`` whose status is ``pass``, ``fail`` or ``skipped``.
"""

import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, Optional

import numpy as np
from mpmath import mp, mpf

from . import bound_engine
from .enumeration import sign_normalize
from .field_core import FieldElement, NumberField
from .form_minima import (
    MinimaRecord,
    as_real,
    brute_force_minimum,
    minimum_and_vectors,
    within_box,
)
from .unit_lattice import LogUnitLattice, minkowski_check, reduce_by_units
from .voronoi_enum import EnumerationReport, PerfectClass, interior_disjointness_check, is_perfect

logger = logging.getLogger(__name__)

Status = Literal["pass", "fail", "skipped"]
SAMPLE_COORDINATE_RANGE = 3
ORACLE_MAX_DEGREE = 3


@dataclass(frozen=True)
class CheckOutcome:
    status: Status
    detail: str = ""
    checked: int = 0

    @classmethod
    def from_failures(cls, failures: Sequence[str], checked: int) -> "CheckOutcome":
        if failures:
            for failure in failures[:5]:
                logger.error(failure)
            return cls("fail", f"{len(failures)} of {checked} failed: {failures[0]}", checked)
        return cls("pass", "", checked)

    @classmethod
    def skipped(cls, reason: str) -> "CheckOutcome":
        return cls("skipped", reason, 0)


def sample_totally_positive(
    field: NumberField, rng: np.random.Generator, count: int, lattice: Optional[LogUnitLattice] = None
) -> list[FieldElement]:
    """Sums of n + 1 squares of small random integers of K, unit-reduced when a lattice is given."""
    samples = []
    while len(samples) < count:
        total = field.zero()
        for _ in range(field.degree + 1):
            coords = rng.integers(-SAMPLE_COORDINATE_RANGE, SAMPLE_COORDINATE_RANGE + 1, size=field.degree)
            x = field.element([int(c) for c in coords])
            total = total + x * x
        if total.is_zero():
            continue
        if lattice is not None:
            total, _ = reduce_by_units(total, lattice)
        samples.append(total)
    return samples


def check_unit_invariance(
    field: NumberField,
    lattice: LogUnitLattice,
    samples: Sequence[FieldElement],
    rng: np.random.Generator,
    trials: int = 20,
) -> CheckOutcome:
    """mu(a u^2) = mu(a) and M(a u^2) = M(a) u^-1 for random unit powers u."""
    if lattice.rank == 0:
        return CheckOutcome.skipped("no units of infinite order")
    failures = []
    for trial in range(trials):
        a = samples[trial % len(samples)]
        exponents = [0] * lattice.rank
        while not any(exponents):
            exponents = [int(e) for e in rng.integers(-2, 3, size=lattice.rank)]
        unit = lattice.unit_power(exponents)
        base = minimum_and_vectors(field, a)
        moved = minimum_and_vectors(field, a * unit * unit)
        inverse = unit.inverse()
        expected = sorted(
            {sign_normalize(tuple(int(c) for c in (field.element(x) * inverse).coords)) for x in base.vectors}
        )
        if moved.minimum != base.minimum or list(moved.vectors) != expected:
            failures.append(f"unit invariance fails for a = {a}, exponents {exponents}")
    return CheckOutcome.from_failures(failures, trials)


def check_mu_product(
    field: NumberField, samples: Sequence[FieldElement], lattice: Optional[LogUnitLattice] = None
) -> CheckOutcome:
    bound = bound_engine.lem2_product_bound(field.degree, field.discriminant)
    failures = []
    with mp.workdps(bound_engine.BOUND_DPS):
        for a in samples:
            product = (
                minimum_and_vectors(field, a, lattice).minimum
                * minimum_and_vectors(field, a.inverse(), lattice).minimum
            )
            if as_real(product) > bound:
                failures.append(f"mu(a) mu(a^-1) = {product} exceeds {mp.nstr(bound, 12)} at a = {a}")
    return CheckOutcome.from_failures(failures, len(samples))


def check_minimum_bound(field: NumberField, samples: Sequence[FieldElement]) -> CheckOutcome:
    failures = []
    with mp.workdps(bound_engine.BOUND_DPS):
        for a in samples:
            mu = minimum_and_vectors(field, a).minimum
            bound = bound_engine.lem2_minimum_bound(field.degree, field.discriminant, a.norm())
            if as_real(mu) > bound:
                failures.append(f"mu = {mu} exceeds {mp.nstr(bound, 12)} at a = {a}")
    return CheckOutcome.from_failures(failures, len(samples))


def check_norm_bound(field: NumberField, records: Iterable[MinimaRecord]) -> CheckOutcome:
    """|Nm(x)| <= the A-reducibility bound for every observed minimal vector."""
    bound = bound_engine.a_reducibility_bound(field.degree, field.discriminant)
    failures = []
    checked = 0
    with mp.workdps(bound_engine.BOUND_DPS):
        for record in records:
            for x in record.vectors:
                checked += 1
                value = abs(field.element(x).norm())
                if as_real(value) > bound:
                    failures.append(f"|Nm({x})| = {value} exceeds {mp.nstr(bound, 12)}")
    return CheckOutcome.from_failures(failures, checked)


def check_trace_bound(
    field: NumberField, classes: Sequence[PerfectClass], lattice: LogUnitLattice, eta: mpf, theta: mpf
) -> CheckOutcome:
    """After normalising mu = 1 and unit-reducing a^-1, minimal vectors satisfy the Tr(x^2) bound."""
    bound = bound_engine.lem2_trace_bound(field.degree, field.discriminant, eta, theta)
    failures = []
    checked = 0
    with mp.workdps(bound_engine.BOUND_DPS):
        for pc in classes:
            normalized = pc.representative / pc.minima.minimum
            reduced_inverse, _ = reduce_by_units(normalized.inverse(), lattice)
            form = reduced_inverse.inverse()
            for x in minimum_and_vectors(field, form).vectors:
                checked += 1
                value = (field.element(x) ** 2).trace()
                if as_real(value) > bound:
                    failures.append(f"Tr(x^2) = {value} exceeds {mp.nstr(bound, 12)} in class {pc.key.decode()}")
    return CheckOutcome.from_failures(failures, checked)


def check_perfection(field: NumberField, classes: Sequence[PerfectClass]) -> CheckOutcome:
    failures = []
    for pc in classes:
        certificate = is_perfect(field, pc.representative)
        if not certificate.perfect or certificate.determinant == 0:
            failures.append(f"class {pc.key.decode()} has rank {certificate.rank}")
    return CheckOutcome.from_failures(failures, len(classes))


def check_mu_normalization(classes: Sequence[PerfectClass]) -> CheckOutcome:
    """With a scaled to mu = 1, every ray x^2 of V(a) has Tr(a x^2) = 1."""
    failures = []
    checked = 0
    for pc in classes:
        normalized = pc.representative / pc.minima.minimum
        for ray in pc.square_rays:
            checked += 1
            if (normalized * pc.field.element(ray)).trace() != 1:
                failures.append(f"ray {ray} of class {pc.key.decode()} is off the mu = 1 slice")
    return CheckOutcome.from_failures(failures, checked)


def check_involution(report: EnumerationReport) -> CheckOutcome:
    verdicts = [crossing for crossing in report.crossings if crossing.involution is not None]
    if not verdicts:
        return CheckOutcome.skipped("no reverse crossings were computed")
    failures = [
        f"reverse crossing of facet {c.facet} of {c.source.decode()} misses the source class"
        for c in verdicts
        if not c.involution
    ]
    return CheckOutcome.from_failures(failures, len(verdicts))


def check_disjointness(classes: Sequence[PerfectClass], lattice: Optional[LogUnitLattice]) -> CheckOutcome:
    if interior_disjointness_check(classes, lattice):
        return CheckOutcome("pass", "", len(classes))
    return CheckOutcome("fail", "a barycenter lies inside another Voronoi cone", len(classes))


def check_class_count(
    n_k: int,
    field: NumberField,
    regulator: mpf,
    a_value: Optional[Fraction],
    unit_reducible: bool,
    eta_variant: bound_engine.EtaVariant = "abstract",
) -> CheckOutcome:
    """n_K against both theorems under both exponent variants."""
    reducibility = "unit" if unit_reducible else (a_value if a_value is not None else "derive")
    failures = []
    for theorem in (1, 2):
        for variant in ("stated", "proof"):
            bound = bound_engine.class_count_bound(
                field.degree, field.discriminant, regulator, reducibility, theorem, variant, eta_variant
            )
            if n_k > bound:
                failures.append(f"n_K = {n_k} exceeds theorem {theorem} ({variant}) bound {mp.nstr(bound, 12)}")
    return CheckOutcome.from_failures(failures, 4)


def check_minkowski(lattice: LogUnitLattice) -> CheckOutcome:
    result = minkowski_check(lattice)
    if result.passed:
        return CheckOutcome("pass", f"sharper form {'holds' if result.sharper_passed else 'fails'}", 1)
    return CheckOutcome("fail", f"product {mp.nstr(result.product, 12)} > {mp.nstr(result.bound, 12)}", 1)


def check_shortest_vector_oracle(field: NumberField, samples: Sequence[FieldElement]) -> CheckOutcome:
    """Fincke-Pohst against brute force over the coordinate box on small fields."""
    if field.degree > ORACLE_MAX_DEGREE:
        return CheckOutcome.skipped(f"brute force is limited to degree <= {ORACLE_MAX_DEGREE}")
    failures = []
    checked = 0
    for a in samples:
        record = minimum_and_vectors(field, a)
        if not within_box(record):
            logger.debug(f"minimal vectors of {a} leave the oracle box; sample skipped")
            continue
        checked += 1
        oracle = brute_force_minimum(field, a)
        if oracle != record:
            failures.append(f"enumeration {record} differs from brute force {oracle} at a = {a}")
    if not checked:
        return CheckOutcome.skipped("no sample fits the oracle box")
    return CheckOutcome.from_failures(failures, checked)


def check_hermite_dominance(max_n: int = 8) -> CheckOutcome:
    failures = []
    known = bound_engine.hermite_constants_known()
    with mp.workdps(bound_engine.BOUND_DPS):
        margin = mpf(10) ** -15
        for n in range(2, max_n + 1):
            if bound_engine.gamma_blichfeldt(n) - known[n] <= margin:
                failures.append(f"Blichfeldt bound does not dominate gamma_{n}")
    return CheckOutcome.from_failures(failures, max_n - 1)


def check_gamma_forms(max_k: int = 64) -> CheckOutcome:
    worst = bound_engine.gamma_cross_check(max_k)
    with mp.workdps(bound_engine.BOUND_DPS):
        if worst > mpf(10) ** -30:
            return CheckOutcome("fail", f"relative gap {mp.nstr(worst, 5)}", max_k)
    return CheckOutcome("pass", "", max_k)
