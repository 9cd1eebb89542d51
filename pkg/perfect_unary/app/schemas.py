"""Serialisable report models; exact rationals travel as "p/q" strings."""

from fractions import Fraction
from typing import Annotated, Literal, Optional

from pydantic import BaseModel, Field

from ..forms.bound_engine import BoundReport
from ..forms.checks import CheckOutcome
from ..forms.field_core import FieldElement
from ..forms.voronoi_enum import EnumerationReport, PerfectClass


def rational(value: Fraction) -> str:
    return str(Fraction(value))


def element_coords(x: FieldElement) -> list[str]:
    return [rational(c) for c in x.coords]


class FieldReport(BaseModel):
    degree: int
    min_poly: list[int]
    polynomial: str
    discriminant: int
    order_discriminant_only: bool = False
    integral_basis: Annotated[list[list[str]], Field(description="Rows omega_i over the power basis")]
    units: list[list[str]]
    regulator: float
    successive_minima: list[float]
    frame_minima: list[float]
    covering_radius_upper: float
    embeddings: Annotated[list[list[float]], Field(description="sigma_1..sigma_n of every basis element")]


class FacetModel(BaseModel):
    normal: list[int]
    functional: list[str]
    vectors: list[list[int]]
    neighbor: Optional[str] = None


class ClassModel(BaseModel):
    key: str
    representative: list[str]
    minimum: str
    minimal_vectors: list[list[int]]
    spanning_subset: list[int]
    facets: list[FacetModel]

    @classmethod
    def from_class(cls, pc: PerfectClass) -> "ClassModel":
        return cls(
            key=pc.key.decode(),
            representative=element_coords(pc.representative),
            minimum=rational(pc.minima.minimum),
            minimal_vectors=[list(x) for x in pc.minima.vectors],
            spanning_subset=list(pc.spanning_subset),
            facets=[
                FacetModel(
                    normal=list(facet.normal),
                    functional=element_coords(facet.functional),
                    vectors=[list(x) for x in facet.vectors],
                    neighbor=None if pc.neighbors.get(i) is None else pc.neighbors[i].decode(),
                )
                for i, facet in enumerate(pc.facets)
            ],
        )


class EnumerationModel(BaseModel):
    n_K: int
    closure_complete: bool
    limit_exceeded: bool = False
    keys: list[str]
    classes: list[ClassModel]
    forms_visited: int
    facets_crossed: int
    walks: int
    anomalies: list[str]
    involution_failures: int

    @classmethod
    def from_report(cls, report: EnumerationReport) -> "EnumerationModel":
        return cls(
            n_K=report.n_K,
            closure_complete=report.closure_complete,
            limit_exceeded=report.limit_exceeded,
            keys=[key.decode() for key in report.keys],
            classes=[ClassModel.from_class(pc) for pc in report.classes],
            forms_visited=report.forms_visited,
            facets_crossed=report.facets_crossed,
            walks=report.walks,
            anomalies=list(report.anomalies),
            involution_failures=report.involution_failures,
        )


class CheckResult(BaseModel):
    status: Literal["pass", "fail", "skipped"]
    detail: str = ""
    checked: int = 0

    @classmethod
    def from_outcome(cls, outcome: CheckOutcome) -> "CheckResult":
        return cls(status=outcome.status, detail=outcome.detail, checked=outcome.checked)


class VerificationRecord(BaseModel):
    n: int
    delta: int
    regulator: float
    n_K: Optional[int] = None
    closure_complete: bool = False
    thm1_stated: float
    thm1_proof: float
    thm2_stated: float
    thm2_proof: float
    empirical_a: Optional[str] = None
    a_bound: float
    abstract_display: Optional[float] = None
    suites: dict[str, CheckResult]

    @property
    def failed(self) -> list[str]:
        return [name for name, result in self.suites.items() if result.status == "fail"]


class RunReport(BaseModel):
    field: FieldReport
    bounds: Optional[BoundReport] = None
    enumeration: Optional[EnumerationModel] = None
    checks: Optional[VerificationRecord] = None


SWEEP_COLUMNS = (
    "d",
    "delta",
    "regulator",
    "n_K",
    "closure_complete",
    "thm1_stated",
    "thm1_proof",
    "thm2_stated",
    "thm2_proof",
    "empirical_a",
    "a_bound",
    "status",
    "error",
)

SWEEP_SUITES = (
    "closure",
    "perfection",
    "involution",
    "mu_normalization",
    "unit_invariance",
    "mu_product",
    "minimum_bound",
    "trace_bound",
    "norm_bound",
    "interior_disjointness",
    "class_count",
    "minkowski",
)
