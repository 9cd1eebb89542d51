import itertools
import unittest
from fractions import Fraction

from fixtures import quadratic
from perfect_unary.forms.errors import DegenerateDirectionError, LimitExceededError
from perfect_unary.forms.unit_lattice import unit_equivalence_witness
from perfect_unary.forms.voronoi_enum import (
    build_class,
    canonical_key,
    enumerate_perfect_classes,
    initial_perfect_form,
    interior_disjointness_check,
    is_perfect,
    neighbor,
    walk,
)


# ruff: noqa
class TestPerfection(unittest.TestCase):
    def setUp(self):
        self.field, self.lattice = quadratic(2)

    def test_one_is_not_perfect(self):
        certificate = is_perfect(self.field, self.field.one())
        self.assertFalse(certificate.perfect)
        self.assertEqual(certificate.rank, 1)

    def test_two_minus_sqrt2_is_perfect(self):
        certificate = is_perfect(self.field, self.field.element([2, -1]))
        self.assertTrue(certificate.perfect)
        self.assertEqual(certificate.spanning_subset, (0, 1))
        self.assertEqual(certificate.determinant, 2)


class TestWalk(unittest.TestCase):
    def setUp(self):
        self.field, self.lattice = quadratic(2)
        self.direction = self.field.element([0, Fraction(1, 4)])

    def test_walk_from_one(self):
        result = walk(self.field, self.field.one(), Fraction(2), self.direction)
        self.assertEqual(result.step, 2)
        self.assertEqual(result.form, self.field.element([2, 1]))
        self.assertEqual(result.minima.minimum, 4)
        self.assertEqual(result.minima.vectors, ((1, -1), (1, 0)))

    def test_walk_with_lattice_agrees(self):
        result = walk(self.field, self.field.one(), Fraction(2), self.direction, self.lattice)
        self.assertEqual(result.form, self.field.element([2, 1]))

    def test_degenerate_directions(self):
        with self.assertRaises(DegenerateDirectionError):
            walk(self.field, self.field.one(), Fraction(2), self.field.zero())
        with self.assertRaises(DegenerateDirectionError):
            walk(self.field, self.field.one(), Fraction(2), self.field.one())

    def test_initial_perfect_form(self):
        self.assertEqual(initial_perfect_form(self.field), self.field.element([2, 1]))
        self.assertEqual(initial_perfect_form(self.field, self.lattice), self.field.element([2, 1]))


class TestClasses(unittest.TestCase):
    def setUp(self):
        self.field, self.lattice = quadratic(2)
        self.pc = build_class(self.field, self.field.element([2, 1]), self.lattice)

    def test_canonical_representative(self):
        self.assertEqual(self.pc.key, b"2,-1")
        self.assertEqual(self.pc.representative, self.field.element([2, -1]))
        scaled = self.field.element([2, 1]) * self.lattice.unit_power([3]) ** 2 * 7
        self.assertEqual(canonical_key(self.field, scaled, self.lattice), b"2,-1")

    def test_facets(self):
        self.assertEqual([f.normal for f in self.pc.facets], [(0, 1), (2, -3)])
        self.assertEqual(self.pc.facets[0].functional, self.field.element([0, Fraction(1, 4)]))
        self.assertEqual(self.pc.facets[0].vectors, ((1, 0),))
        self.assertEqual(self.pc.facets[1].vectors, ((1, 1),))

    def test_neighbor_returns_to_the_same_class(self):
        for facet in self.pc.facets:
            result = neighbor(self.field, self.pc, facet, self.lattice)
            self.assertTrue(set(facet.vectors) <= set(result.minima.vectors))
            self.assertEqual(canonical_key(self.field, result.form, self.lattice), self.pc.key)


class TestEnumeration(unittest.TestCase):
    def test_sqrt2_has_one_class(self):
        field, lattice = quadratic(2)
        report = enumerate_perfect_classes(field, lattice)
        self.assertTrue(report.closure_complete)
        self.assertEqual(report.keys, [b"2,-1"])
        self.assertEqual(report.involution_failures, 0)
        self.assertEqual(report.facets_crossed, 2)
        self.assertEqual(report.empirical_a(), 1)
        self.assertTrue(interior_disjointness_check(report.classes, lattice))

    def test_closure_on_small_fields(self):
        for d in (3, 5, 13):
            field, lattice = quadratic(d)
            with self.subTest(d=d):
                report = enumerate_perfect_classes(field, lattice)
                self.assertTrue(report.closure_complete)
                self.assertGreaterEqual(report.n_K, 1)
                self.assertEqual(report.involution_failures, 0)
                self.assertEqual(report.anomalies, [])
                self.assertEqual(report.keys, sorted(report.keys))
                self.assertTrue(interior_disjointness_check(report.classes, lattice))

    def test_repeatable(self):
        field, lattice = quadratic(5)
        first = enumerate_perfect_classes(field, lattice)
        second = enumerate_perfect_classes(field, lattice)
        self.assertEqual(first.keys, second.keys)

    def test_timeout_keeps_partial_report(self):
        field, lattice = quadratic(2)
        ticks = itertools.count(0, 100)
        with self.assertRaises(LimitExceededError) as context:
            enumerate_perfect_classes(field, lattice, timeout=1, clock=lambda: next(ticks))
        report = context.exception.report
        self.assertTrue(report.limit_exceeded)
        self.assertFalse(report.closure_complete)
        self.assertEqual(report.n_K, 1)


class TestSeveralClasses(unittest.TestCase):
    def _enumerate(self, d):
        field, lattice = quadratic(d)
        return field, lattice, enumerate_perfect_classes(field, lattice)

    def test_closure_and_involution(self):
        for d in (6, 7, 10):
            with self.subTest(d=d):
                _, lattice, report = self._enumerate(d)
                self.assertTrue(report.closure_complete)
                self.assertEqual(report.involution_failures, 0)
                self.assertEqual(report.anomalies, [])
                self.assertTrue(interior_disjointness_check(report.classes, lattice))

    def test_class_counts(self):
        for d, count in ((6, 2), (7, 2), (19, 4), (22, 4)):
            with self.subTest(d=d):
                self.assertEqual(self._enumerate(d)[2].n_K, count)

    def test_neighbours_link_distinct_classes(self):
        for d in (19, 22):
            with self.subTest(d=d):
                _, lattice, report = self._enumerate(d)
                keys = set(report.keys)
                links = [
                    (pc.key, target) for pc in report.classes for target in pc.neighbors.values()
                ]
                self.assertTrue(all(target in keys for _, target in links))
                self.assertTrue(any(source != target for source, target in links))
                self.assertEqual({target for _, target in links}, keys)
                self.assertTrue(interior_disjointness_check(report.classes, lattice))

    def test_distinct_classes_have_no_witness(self):
        _, lattice, report = self._enumerate(22)
        for first, second in itertools.combinations(report.classes, 2):
            with self.subTest(first=first.key, second=second.key):
                self.assertIsNone(unit_equivalence_witness(first.representative, second.representative, lattice))
        for pc in report.classes:
            moved = pc.representative * lattice.unit_power([2]) ** 2 * 3
            self.assertEqual(canonical_key(pc.field, moved, lattice), pc.key)


if __name__ == "__main__":
    unittest.main()
