"""Perfect unary forms: perfection tests, Voronoi cones, the neighbour walk and enumeration of homothety classes."""

import itertools
import logging
import time
from collections import deque
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction
from typing import Optional

from . import linalg
from .enumeration import IntVector, sign_normalize
from .errors import (
    DegenerateDirectionError,
    LimitExceededError,
    NotFullDimensionalError,
    UnboundedDirectionError,
)
from .field_core import FieldElement, NumberField
from .form_minima import MinimaRecord, invariant, max_abs_norm, minimum_and_vectors, trace_gram
from .polyhedral import cone_facets, is_strictly_inside
from .unit_lattice import LogUnitLattice, reduce_by_units, unit_equivalence_witness

logger = logging.getLogger(__name__)

MAX_WALK_STEPS = 256
CANONICAL_BOX = 2


@dataclass(frozen=True)
class PerfectionCertificate:
    perfect: bool
    rank: int
    spanning_subset: tuple[int, ...]
    determinant: Fraction
    minima: MinimaRecord


@dataclass(frozen=True)
class Facet:
    """A facet of V(a): integer normal phi on ray coordinates and the functional c with Tr(c y) = phi . y."""

    normal: IntVector
    functional: FieldElement
    incident: frozenset[int]
    vectors: tuple[IntVector, ...]


@dataclass
class PerfectClass:
    key: bytes
    representative: FieldElement
    minima: MinimaRecord
    square_rays: tuple[tuple[Fraction, ...], ...]
    spanning_subset: tuple[int, ...]
    facets: tuple[Facet, ...] = ()
    neighbors: dict[int, Optional[bytes]] = dataclass_field(default_factory=dict)

    @property
    def field(self) -> NumberField:
        return self.representative.field


@dataclass(frozen=True)
class WalkResult:
    step: Fraction
    form: FieldElement
    minima: MinimaRecord


@dataclass(frozen=True)
class FacetCrossing:
    source: bytes
    facet: int
    target: Optional[bytes]
    involution: Optional[bool]


@dataclass
class EnumerationReport:
    classes: list[PerfectClass]
    closure_complete: bool
    forms_visited: int = 0
    facets_crossed: int = 0
    walks: int = 0
    crossings: list[FacetCrossing] = dataclass_field(default_factory=list)
    anomalies: list[str] = dataclass_field(default_factory=list)
    limit_exceeded: bool = False

    @property
    def n_K(self) -> int:
        return len(self.classes)

    @property
    def keys(self) -> list[bytes]:
        return [pc.key for pc in self.classes]

    @property
    def involution_failures(self) -> int:
        return sum(1 for crossing in self.crossings if crossing.involution is False)

    def empirical_a(self) -> Fraction:
        """Largest |Nm(x)| over the minimal vectors of every class (norms are unit invariant)."""
        if not self.classes:
            return Fraction(1)
        return max(max_abs_norm(pc.field, pc.minima) for pc in self.classes)


def square_rays(field: NumberField, vectors: Sequence[IntVector]) -> tuple[tuple[Fraction, ...], ...]:
    return tuple((field.element(x) ** 2).coords for x in vectors)


def is_perfect(field: NumberField, a: FieldElement, lattice: Optional[LogUnitLattice] = None) -> PerfectionCertificate:
    """Perfection of a: the squares of its minimal vectors span K over Q."""
    minima = minimum_and_vectors(field, a, lattice)
    rays = square_rays(field, minima.vectors)
    subset = linalg.independent_rows(rays)
    perfect = len(subset) == field.degree
    determinant = linalg.det([rays[i] for i in subset]) if perfect else Fraction(0)
    return PerfectionCertificate(perfect, len(subset), subset if perfect else (), determinant, minima)


def _facets_of_rays(
    field: NumberField, rays: Sequence[Sequence[Fraction]], vectors: Sequence[IntVector]
) -> tuple[Facet, ...]:
    if field.degree == 1:
        return ()
    facets = []
    for cone_facet in cone_facets(rays):
        functional = field.element(linalg.mat_vec(field.trace_matrix_inverse, cone_facet.normal))
        facets.append(
            Facet(
                normal=cone_facet.normal,
                functional=functional,
                incident=cone_facet.incident,
                vectors=tuple(vectors[i] for i in sorted(cone_facet.incident)),
            )
        )
    return tuple(facets)


def compute_facets(pc: PerfectClass) -> tuple[Facet, ...]:
    """Exact facets of V(a); empty for n = 1 where V(a) is the whole positive half-line."""
    if linalg.rank(pc.square_rays) < pc.field.degree:
        raise NotFullDimensionalError("square rays do not span K")
    return _facets_of_rays(pc.field, pc.square_rays, pc.minima.vectors)


def _primitive(field: NumberField, b: FieldElement) -> tuple[FieldElement, Fraction]:
    coords = linalg.primitive_integer_vector(b.coords)
    pivot = next(i for i, c in enumerate(b.coords) if c)
    return field.element(coords), coords[pivot] / b.coords[pivot]


def walk(
    field: NumberField,
    a: FieldElement,
    mu: Fraction,
    direction: FieldElement,
    lattice: Optional[LogUnitLattice] = None,
) -> WalkResult:
    """Move along a + t c to the exact first t* > 0 where a new vector reaches the minimum mu.

    The direction must keep Tr(c x^2) >= 0 on the minimal vectors of a. A bracket with mu(a + u c) < mu is found by
    doubling and halving, then u is lowered to min (Tr(a y^2) - mu) / -Tr(c y^2) over the minimal vectors y of
    a + u c until the minimum equals mu again. Returns the primitive integral multiple of a + t* c.
    """
    if direction.is_zero():
        raise DegenerateDirectionError("zero direction")
    if field.is_totally_positive(direction):
        raise DegenerateDirectionError("a totally positive direction never lowers the minimum")
    a_gram = trace_gram(field, a)
    c_gram = trace_gram(field, direction)
    lower, upper, step = Fraction(0), None, Fraction(1)
    for _ in range(MAX_WALK_STEPS):
        b = a + direction * step
        if field.is_totally_positive(b):
            record = minimum_and_vectors(field, b, lattice)
            if record.minimum < mu:
                break
            lower = step
        else:
            upper = step
        step = 2 * lower if upper is None else (lower + upper) / 2
    else:
        raise UnboundedDirectionError(f"no new minimal vector along {direction} within {MAX_WALK_STEPS} steps")
    while True:
        step = min((a_gram.value(y) - mu) / -c_gram.value(y) for y in record.vectors)
        b = a + direction * step
        record = minimum_and_vectors(field, b, lattice)
        if record.minimum == mu:
            break
    form, scale = _primitive(field, b)
    return WalkResult(step, form, MinimaRecord(record.minimum * scale, record.vectors))


def initial_perfect_form(field: NumberField, lattice: Optional[LogUnitLattice] = None) -> FieldElement:
    """Rank-raising walk from a = 1; each step adds a minimal vector whose square leaves the current span."""
    a = field.one()
    minima = minimum_and_vectors(field, a, lattice)
    for _ in range(field.degree):
        rays = square_rays(field, minima.vectors)
        rank = linalg.rank(rays)
        if rank == field.degree:
            return a
        kernel = linalg.nullspace(rays, field.degree)
        for phi, sign in itertools.product(kernel, (1, -1)):
            direction = field.element(linalg.mat_vec(field.trace_matrix_inverse, phi)) * sign
            try:
                result = walk(field, a, minima.minimum, direction, lattice)
            except (DegenerateDirectionError, UnboundedDirectionError) as err:
                logger.debug(f"rank-raising direction rejected: {err}")
                continue
            a, minima = result.form, result.minima
            logger.debug(f"rank raised from {rank} with {len(minima.vectors)} minimal vectors")
            break
        else:
            raise DegenerateDirectionError("no kernel direction raises the rank")
    if linalg.rank(square_rays(field, minima.vectors)) != field.degree:
        raise DegenerateDirectionError("rank-raising walk did not reach a perfect form")
    return a


def _trace_order(x: FieldElement) -> tuple[Fraction, tuple[Fraction, ...]]:
    return x.trace(), x.coords


def canonical_form(field: NumberField, a: FieldElement, lattice: Optional[LogUnitLattice] = None) -> FieldElement:
    """Primitive integral, unit-reduced representative, minimal by (trace, coordinates) in its exponent box."""
    a = field.element(linalg.primitive_integer_vector(a.coords))
    if lattice is None or lattice.rank == 0:
        return a
    a, _ = reduce_by_units(a, lattice)
    squares = []
    for exponents in itertools.product(range(-CANONICAL_BOX, CANONICAL_BOX + 1), repeat=lattice.rank):
        if any(exponents):
            unit = lattice.unit_power(exponents)
            squares.append(unit * unit)
    while True:
        best = min((a * square for square in squares), key=_trace_order)
        if _trace_order(best) >= _trace_order(a):
            return a
        a = best


def canonical_key(field: NumberField, a: FieldElement, lattice: Optional[LogUnitLattice] = None) -> bytes:
    return encode_key(canonical_form(field, a, lattice))


def encode_key(a: FieldElement) -> bytes:
    return ",".join(str(int(c)) for c in a.coords).encode("ascii")


def neighbor(
    field: NumberField, pc: PerfectClass, facet: Facet, lattice: Optional[LogUnitLattice] = None
) -> WalkResult:
    """The perfect form across ``facet``; its minimal vectors contain the facet's vectors."""
    result = walk(field, pc.representative, pc.minima.minimum, facet.functional, lattice)
    missing = set(facet.vectors) - set(result.minima.vectors)
    if missing:
        raise UnboundedDirectionError(f"facet vectors {sorted(missing)} are not minimal at the neighbour")
    return result


def build_class(field: NumberField, a: FieldElement, lattice: Optional[LogUnitLattice] = None) -> PerfectClass:
    """Canonicalize a perfect form and attach its rays and facets."""
    representative = canonical_form(field, a, lattice)
    certificate = is_perfect(field, representative, lattice)
    if not certificate.perfect:
        raise NotFullDimensionalError(f"{representative} is not perfect (rank {certificate.rank})")
    pc = PerfectClass(
        key=encode_key(representative),
        representative=representative,
        minima=certificate.minima,
        square_rays=square_rays(field, certificate.minima.vectors),
        spanning_subset=certificate.spanning_subset,
    )
    pc.facets = compute_facets(pc)
    return pc


class _ClassRegistry:
    """Classes by canonical key, with witness matching among classes sharing an invariant."""

    def __init__(self, lattice: Optional[LogUnitLattice]):
        self.lattice = lattice
        self.classes: dict[bytes, PerfectClass] = {}
        self.by_invariant: dict[tuple[int, Fraction], list[bytes]] = {}

    def match(self, pc: PerfectClass) -> Optional[bytes]:
        if pc.key in self.classes:
            return pc.key
        if self.lattice is None:
            return None
        for key in self.by_invariant.get(invariant(pc.minima, pc.representative), []):
            if unit_equivalence_witness(self.classes[key].representative, pc.representative, self.lattice):
                logger.info(f"key collision resolved by witness: {pc.key!r} ~ {key!r}")
                return key
        return None

    def add(self, pc: PerfectClass) -> None:
        self.classes[pc.key] = pc
        self.by_invariant.setdefault(invariant(pc.minima, pc.representative), []).append(pc.key)


def _same_class(
    field: NumberField, a: FieldElement, b: FieldElement, key: bytes, lattice: Optional[LogUnitLattice]
) -> bool:
    if canonical_key(field, b, lattice) == key:
        return True
    return lattice is not None and unit_equivalence_witness(a, b, lattice) is not None


def _reverse_crossing(
    field: NumberField, source: PerfectClass, facet: Facet, result: WalkResult, lattice: Optional[LogUnitLattice]
) -> bool:
    """From the neighbour, -c must be a facet normal whose walk returns to the source class."""
    reverse = -facet.functional
    normal = linalg.primitive_integer_vector(linalg.mat_vec(field.trace_matrix, reverse.coords))
    rays = square_rays(field, result.minima.vectors)
    if normal not in {f.normal for f in _facets_of_rays(field, rays, result.minima.vectors)}:
        return False
    back = walk(field, result.form, result.minima.minimum, reverse, lattice)
    return _same_class(field, source.representative, back.form, source.key, lattice)


def _report(registry: _ClassRegistry, complete: bool, stats: dict, limit: bool = False) -> EnumerationReport:
    return EnumerationReport(
        classes=[registry.classes[key] for key in sorted(registry.classes)],
        closure_complete=complete,
        forms_visited=stats["forms_visited"],
        facets_crossed=stats["facets_crossed"],
        walks=stats["walks"],
        crossings=stats["crossings"],
        anomalies=stats["anomalies"],
        limit_exceeded=limit,
    )


def enumerate_perfect_classes(
    field: NumberField,
    lattice: Optional[LogUnitLattice] = None,
    max_classes: int = 200,
    timeout: Optional[float] = None,
    check_involution: bool = True,
    clock: Callable[[], float] = time.monotonic,
) -> EnumerationReport:
    """Breadth-first closure of the neighbour graph starting from the rank-raising walk.

    Raises:
        LimitExceededError: when ``max_classes`` or ``timeout`` is hit; ``err.report`` is the partial report.
    """
    started = clock()
    registry = _ClassRegistry(lattice)
    stats = {"forms_visited": 0, "facets_crossed": 0, "walks": 0, "crossings": [], "anomalies": []}

    def check_limits(adding: bool = False) -> None:
        if timeout is not None and clock() - started > timeout:
            raise LimitExceededError(f"timeout of {timeout}s exceeded", _report(registry, False, stats, True))
        if adding and len(registry.classes) >= max_classes:
            raise LimitExceededError(f"more than {max_classes} classes", _report(registry, False, stats, True))

    seed = build_class(field, initial_perfect_form(field, lattice), lattice)
    registry.add(seed)
    frontier = deque([seed.key])
    unresolved = 0
    while frontier:
        check_limits()
        pc = registry.classes[frontier.popleft()]
        stats["forms_visited"] += 1
        for index, facet in enumerate(pc.facets):
            check_limits()
            try:
                result = neighbor(field, pc, facet, lattice)
            except UnboundedDirectionError as err:
                message = f"class {pc.key.decode()} facet {index}: {err}"
                logger.warning(f"anomaly: {message}")
                stats["anomalies"].append(message)
                pc.neighbors[index] = None
                stats["crossings"].append(FacetCrossing(pc.key, index, None, None))
                unresolved += 1
                continue
            stats["walks"] += 1
            stats["facets_crossed"] += 1
            candidate = build_class(field, result.form, lattice)
            key = registry.match(candidate)
            if key is None:
                check_limits(adding=True)
                registry.add(candidate)
                frontier.append(candidate.key)
                key = candidate.key
                logger.info(f"class {len(registry.classes)}: {key.decode()} (mu = {candidate.minima.minimum})")
            pc.neighbors[index] = key
            involution = None
            if check_involution:
                stats["walks"] += 1
                involution = _reverse_crossing(field, pc, facet, result, lattice)
                if not involution:
                    logger.error(f"neighbour involution fails at class {pc.key.decode()} facet {index}")
            stats["crossings"].append(FacetCrossing(pc.key, index, key, involution))
    report = _report(registry, unresolved == 0, stats)
    logger.info(f"{report.n_K} classes, {report.facets_crossed} facets crossed, closure {report.closure_complete}")
    return report


def interior_disjointness_check(
    classes: Sequence[PerfectClass], lattice: Optional[LogUnitLattice] = None, unit_box: int = 1
) -> bool:
    """No barycenter of one cone lies in the interior of another.

    Every class representative is tested against the other representatives and, given a lattice, against the unit
    translates V(b u^2) of every class for exponents in a box of radius ``unit_box``. Membership in an interior is
    exact: the cones are full-dimensional, so interior points are those with every facet normal strictly positive.
    """
    if not classes:
        return True
    field = classes[0].field
    cones = []
    for pc in classes:
        cones.append((pc.key, (), pc.facets))
        if lattice is None or lattice.rank == 0:
            continue
        for exponents in itertools.product(range(-unit_box, unit_box + 1), repeat=lattice.rank):
            if not any(exponents):
                continue
            inverse = lattice.unit_power(exponents).inverse()
            moved = sorted(
                {sign_normalize(tuple(int(c) for c in (field.element(x) * inverse).coords)) for x in pc.minima.vectors}
            )
            cones.append((pc.key, exponents, _facets_of_rays(field, square_rays(field, moved), moved)))
    passed = True
    for pc in classes:
        total = [sum(column, Fraction(0)) for column in zip(*pc.square_rays)]
        barycenter = [value / (len(pc.square_rays) * pc.minima.minimum) for value in total]
        for key, exponents, facets in cones:
            if key == pc.key and not exponents:
                if facets and not is_strictly_inside(barycenter, facets):
                    logger.error(f"barycenter of {pc.key.decode()} is not interior to its own cone")
                    passed = False
                continue
            if facets and is_strictly_inside(barycenter, facets):
                logger.error(f"cone of {pc.key.decode()} meets {key.decode()} translated by {exponents}")
                passed = False
    return passed
