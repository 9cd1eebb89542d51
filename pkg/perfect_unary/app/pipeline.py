"""Field loading, report assembly and the verification pipeline shared by the commands."""

import logging
from fractions import Fraction
from collections.abc import Sequence
from typing import Optional, Union

import numpy as np
from mpmath import mp

from ..forms import bound_engine, checks
from ..forms.errors import LimitExceededError
from ..forms.field_core import NumberField, load_field_description, quadratic_field
from ..forms.form_minima import minimum_and_vectors
from ..forms.unit_lattice import LogUnitLattice, build_log_lattice, covering_radius_upper
from ..forms.voronoi_enum import EnumerationReport, enumerate_perfect_classes
from .config import RunConfig
from .schemas import (
    CheckResult,
    EnumerationModel,
    FieldReport,
    RunReport,
    VerificationRecord,
    element_coords,
    rational,
)

logger = logging.getLogger(__name__)


def load_field(config: RunConfig, quadratic: Optional[int] = None) -> tuple[NumberField, LogUnitLattice]:
    quadratic = config.quadratic if quadratic is None else quadratic
    if quadratic is not None:
        field = quadratic_field(quadratic, config.precision_bits, config.max_precision_bits)
        units = None
    else:
        config.require_field_source()
        field, units = load_field_description(
            config.field_path, config.precision_bits, config.max_precision_bits
        )
    return field, build_log_lattice(field, units)


def field_report(field: NumberField, lattice: LogUnitLattice) -> FieldReport:
    return FieldReport(
        degree=field.degree,
        min_poly=list(field.min_poly),
        polynomial=field.describe(),
        discriminant=field.discriminant,
        order_discriminant_only=field.order_discriminant_only,
        integral_basis=[[rational(v) for v in row] for row in field.integral_basis],
        units=[element_coords(u) for u in lattice.units],
        regulator=float(lattice.regulator),
        successive_minima=[float(v) for v in lattice.successive_minima],
        frame_minima=[float(v) for v in lattice.frame_minima],
        covering_radius_upper=float(covering_radius_upper(lattice)),
        embeddings=[[float(v) for v in field.embeddings(field.basis_element(i))] for i in range(field.degree)],
    )


def bound_report(
    field: NumberField, lattice: LogUnitLattice, config: RunConfig, a_value: Optional[Fraction] = None
) -> bound_engine.BoundReport:
    return bound_engine.build_bound_report(
        field.degree,
        field.discriminant,
        lattice.regulator,
        a_value=a_value,
        unit_reducible=config.assume_unit_reducible,
        exponent_variant=config.exponent_variant,
        eta_variant=config.eta_variant,
    )


def run_enumeration(
    field: NumberField, lattice: LogUnitLattice, config: RunConfig
) -> tuple[EnumerationReport, bool]:
    """Enumerate classes; returns (report, limit_hit) with the partial report when a limit stops the search."""
    try:
        return (
            enumerate_perfect_classes(field, lattice, max_classes=config.max_classes, timeout=config.timeout),
            False,
        )
    except LimitExceededError as err:
        logger.warning(f"enumeration stopped: {err}")
        return err.report, True


def verify_field(
    field: NumberField,
    lattice: LogUnitLattice,
    config: RunConfig,
    oracles: bool = False,
    seed: Optional[Union[int, Sequence[int]]] = None,
) -> tuple[RunReport, bool]:
    """Enumerate, evaluate the bounds with the empirical A and run every property suite."""
    report, limit_hit = run_enumeration(field, lattice, config)
    rng = np.random.default_rng(config.seed if seed is None else seed)
    samples = checks.sample_totally_positive(field, rng, config.samples, lattice)
    sample_records = [minimum_and_vectors(field, a) for a in samples]
    records = [pc.minima for pc in report.classes] + sample_records
    empirical_a = max(
        (abs(field.element(x).norm()) for record in records for x in record.vectors), default=Fraction(1)
    )
    bounds = bound_report(field, lattice, config, a_value=empirical_a)
    unit_reducible = config.assume_unit_reducible or field.degree == 1
    eta = bound_engine.eta_K(field.degree, lattice.regulator, unit_reducible, config.eta_variant)
    theta = mp.mpf(0) if unit_reducible else bound_engine.theta_K(max(empirical_a, Fraction(1)), field.degree)

    suites = {
        "closure": _closure_outcome(report, limit_hit),
        "perfection": checks.check_perfection(field, report.classes),
        "involution": checks.check_involution(report),
        "mu_normalization": checks.check_mu_normalization(report.classes),
        "unit_invariance": checks.check_unit_invariance(field, lattice, samples, rng, config.unit_trials),
        "mu_product": checks.check_mu_product(field, samples, lattice),
        "minimum_bound": checks.check_minimum_bound(field, samples),
        "trace_bound": checks.check_trace_bound(field, report.classes, lattice, eta, theta),
        "norm_bound": checks.check_norm_bound(field, records),
        "interior_disjointness": checks.check_disjointness(report.classes, lattice),
        "class_count": checks.check_class_count(
            report.n_K, field, lattice.regulator, empirical_a, unit_reducible, config.eta_variant
        ),
        "minkowski": checks.check_minkowski(lattice),
    }
    if oracles:
        suites["shortest_vector_oracle"] = checks.check_shortest_vector_oracle(field, samples[: config.oracle_samples])
        suites["hermite_dominance"] = checks.check_hermite_dominance()
        suites["gamma_forms"] = checks.check_gamma_forms()

    record = VerificationRecord(
        n=field.degree,
        delta=abs(field.discriminant),
        regulator=float(lattice.regulator),
        n_K=report.n_K,
        closure_complete=report.closure_complete,
        thm1_stated=bounds.thm1_stated,
        thm1_proof=bounds.thm1_proof,
        thm2_stated=bounds.thm2_stated,
        thm2_proof=bounds.thm2_proof,
        empirical_a=rational(empirical_a),
        a_bound=bounds.a_bound,
        abstract_display=bounds.abstract_display,
        suites={name: CheckResult.from_outcome(outcome) for name, outcome in suites.items()},
    )
    run = RunReport(
        field=field_report(field, lattice),
        bounds=bounds,
        enumeration=EnumerationModel.from_report(report),
        checks=record,
    )
    return run, limit_hit


def _closure_outcome(report: EnumerationReport, limit_hit: bool) -> checks.CheckOutcome:
    if limit_hit:
        return checks.CheckOutcome.skipped("a limit stopped the enumeration")
    if report.closure_complete:
        return checks.CheckOutcome("pass", "", report.n_K)
    return checks.CheckOutcome("fail", f"{len(report.anomalies)} unresolved facets", report.n_K)


def exit_status(record: Optional[VerificationRecord], limit_hit: bool) -> int:
    if record is not None and record.failed:
        return 4
    return 3 if limit_hit else 0
