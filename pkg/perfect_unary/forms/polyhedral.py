"""Exact facet enumeration for polyhedral cones given by generating rays (double description over the rationals)."""

import logging
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .errors import NotFullDimensionalError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ConeFacet:
    """An inward normal (primitive integers) and the indices of the generating rays it vanishes on."""

    normal: tuple[int, ...]
    incident: frozenset[int]


@dataclass
class _Generator:
    vector: tuple[int, ...]
    zeros: frozenset[int]


def _evaluate(constraint: Sequence[Fraction], vector: Sequence[int]) -> Fraction:
    return linalg.dot(constraint, vector)


def _adjacent(p: _Generator, q: _Generator, generators: list[_Generator], dimension: int) -> bool:
    common = p.zeros & q.zeros
    if len(common) < dimension - 2:
        return False
    return not any(g is not p and g is not q and common <= g.zeros for g in generators)


def cone_facets(rays: Sequence[Sequence[Fraction]]) -> list[ConeFacet]:
    """Inward facet normals of cone(rays), sorted.

    The facets are the extreme rays of the dual cone {phi : r . phi >= 0 for every ray r}. The dual is built
    constraint by constraint starting from the simplicial cone of n independent rays; when a constraint cuts the
    current generators into positive and negative parts, each combinatorially adjacent pair contributes
    (r . p) q - (r . q) p.
    """
    rays = [tuple(Fraction(v) for v in ray) for ray in rays]
    if not rays:
        raise NotFullDimensionalError("a cone needs at least one ray")
    dimension = len(rays[0])
    basis = linalg.independent_rows(rays)
    if len(basis) < dimension:
        raise NotFullDimensionalError(f"rays span a {len(basis)}-dimensional space, need {dimension}")
    inverse = linalg.inverse([rays[i] for i in basis])
    generators = []
    for j in range(dimension):
        column = linalg.primitive_integer_vector([inverse[i][j] for i in range(dimension)])
        zeros = frozenset(basis[i] for i in range(dimension) if i != j)
        generators.append(_Generator(column, zeros))
    processed = set(basis)
    for index, ray in enumerate(rays):
        if index in processed:
            continue
        positive, zero, negative = [], [], []
        for generator in generators:
            value = _evaluate(ray, generator.vector)
            if value > 0:
                positive.append((generator, value))
            elif value == 0:
                zero.append(generator)
            else:
                negative.append((generator, value))
        updated = [g for g, _ in positive]
        updated.extend(_Generator(g.vector, g.zeros | {index}) for g in zero)
        for p, p_value in positive:
            for q, q_value in negative:
                if not _adjacent(p, q, generators, dimension):
                    continue
                combined = [p_value * b - q_value * a for a, b in zip(p.vector, q.vector)]
                updated.append(_Generator(linalg.primitive_integer_vector(combined), (p.zeros & q.zeros) | {index}))
        generators = updated
        processed.add(index)
        logger.debug(f"ray {index}: {len(generators)} dual generators")
    facets = {}
    for generator in generators:
        incident = frozenset(i for i, ray in enumerate(rays) if _evaluate(ray, generator.vector) == 0)
        facets[generator.vector] = ConeFacet(generator.vector, incident)
    return sorted(facets.values(), key=lambda facet: facet.normal)


def is_strictly_inside(point: Sequence[Fraction], facets: Sequence[ConeFacet]) -> bool:
    """True when the point lies in the interior of the cone with these facets."""
    return all(linalg.dot(facet.normal, point) > 0 for facet in facets)
