import unittest
from fractions import Fraction

import numpy as np

from fixtures import cubic, quadratic
from perfect_unary.forms import bound_engine, checks
from perfect_unary.forms.field_core import make_field
from perfect_unary.forms.form_minima import minimum_and_vectors
from perfect_unary.forms.unit_lattice import build_log_lattice
from perfect_unary.forms.voronoi_enum import EnumerationReport, enumerate_perfect_classes


# ruff: noqa
class TestSampledSuites(unittest.TestCase):
    def setUp(self):
        self.field, self.lattice = quadratic(2)
        self.rng = np.random.default_rng(7)
        self.samples = checks.sample_totally_positive(self.field, self.rng, 8, self.lattice)

    def test_samples_are_totally_positive(self):
        self.assertEqual(len(self.samples), 8)
        self.assertTrue(all(self.field.is_totally_positive(a) for a in self.samples))

    def test_sampling_is_seeded(self):
        again = checks.sample_totally_positive(self.field, np.random.default_rng(7), 8, self.lattice)
        self.assertEqual(again, self.samples)

    def test_sampled_bound_suites(self):
        self.assertEqual(checks.check_mu_product(self.field, self.samples, self.lattice).status, "pass")
        self.assertEqual(checks.check_minimum_bound(self.field, self.samples).status, "pass")
        records = [minimum_and_vectors(self.field, a) for a in self.samples]
        self.assertEqual(checks.check_norm_bound(self.field, records).status, "pass")

    def test_unit_invariance(self):
        outcome = checks.check_unit_invariance(self.field, self.lattice, self.samples, self.rng, trials=4)
        self.assertEqual(outcome.status, "pass")
        self.assertEqual(outcome.checked, 4)

    def test_unit_invariance_without_units(self):
        field = make_field([0, 1])
        lattice = build_log_lattice(field)
        samples = checks.sample_totally_positive(field, self.rng, 2)
        self.assertEqual(checks.check_unit_invariance(field, lattice, samples, self.rng).status, "skipped")

    def test_shortest_vector_oracle(self):
        outcome = checks.check_shortest_vector_oracle(self.field, self.samples[:4])
        self.assertNotEqual(outcome.status, "fail")


class TestClassSuites(unittest.TestCase):
    def setUp(self):
        self.field, self.lattice = quadratic(2)
        self.report = enumerate_perfect_classes(self.field, self.lattice)

    def test_structure(self):
        self.assertEqual(checks.check_perfection(self.field, self.report.classes).status, "pass")
        self.assertEqual(checks.check_mu_normalization(self.report.classes).status, "pass")
        self.assertEqual(checks.check_involution(self.report).status, "pass")
        self.assertEqual(checks.check_disjointness(self.report.classes, self.lattice).status, "pass")

    def test_trace_bound(self):
        eta = bound_engine.eta_K(2, self.lattice.regulator, False)
        outcome = checks.check_trace_bound(self.field, self.report.classes, self.lattice, eta, 0)
        self.assertEqual(outcome.status, "pass")

    def test_class_count(self):
        outcome = checks.check_class_count(
            self.report.n_K, self.field, self.lattice.regulator, self.report.empirical_a(), False
        )
        self.assertEqual(outcome.status, "pass")
        self.assertEqual(outcome.checked, 4)


class TestOutcomes(unittest.TestCase):
    def test_from_failures(self):
        self.assertEqual(checks.CheckOutcome.from_failures([], 3).status, "pass")
        outcome = checks.CheckOutcome.from_failures(["broken"], 3)
        self.assertEqual(outcome.status, "fail")
        self.assertIn("broken", outcome.detail)

    def test_involution_without_crossings(self):
        report = EnumerationReport(classes=[], closure_complete=True)
        self.assertEqual(checks.check_involution(report).status, "skipped")

    def test_constant_oracles(self):
        self.assertEqual(checks.check_hermite_dominance().status, "pass")
        self.assertEqual(checks.check_gamma_forms().status, "pass")

    def test_minkowski(self):
        self.assertEqual(checks.check_minkowski(quadratic(5)[1]).status, "pass")
        self.assertEqual(checks.check_minkowski(cubic()[1]).status, "pass")


if __name__ == "__main__":
    unittest.main()
