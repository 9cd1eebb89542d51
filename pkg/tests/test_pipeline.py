import unittest
from fractions import Fraction

from fixtures import quadratic
from perfect_unary.app.config import get_run_config
from perfect_unary.app.pipeline import bound_report, exit_status, field_report, load_field, verify_field
from perfect_unary.app.schemas import CheckResult, RunReport, VerificationRecord


# ruff: noqa
class TestFieldReports(unittest.TestCase):
    def setUp(self):
        self.config = get_run_config({"quadratic": 2})
        self.field, self.lattice = load_field(self.config)

    def test_field_report(self):
        report = field_report(self.field, self.lattice)
        self.assertEqual(report.degree, 2)
        self.assertEqual(report.discriminant, 8)
        self.assertEqual(report.units, [["1", "1"]])
        self.assertAlmostEqual(report.regulator, 0.8813735870, places=9)
        self.assertEqual(len(report.embeddings), 2)

    def test_golden_field(self):
        field, lattice = load_field(self.config, quadratic=5)
        self.assertEqual(field_report(field, lattice).integral_basis, [["1", "0"], ["1/2", "1/2"]])

    def test_bound_report_derives_a(self):
        report = bound_report(self.field, self.lattice, self.config)
        self.assertEqual(report.a_source, "derived")
        self.assertAlmostEqual(report.rho, 1.3836, places=3)


class TestVerification(unittest.TestCase):
    def setUp(self):
        self.config = get_run_config({"quadratic": 2, "samples": 6, "oracle_samples": 3, "unit_trials": 3})
        field, lattice = quadratic(2)
        self.report, self.limit_hit = verify_field(field, lattice, self.config, oracles=True)

    def test_all_suites_pass(self):
        record = self.report.checks
        self.assertFalse(self.limit_hit)
        self.assertEqual(record.failed, [])
        self.assertEqual(record.n_K, 1)
        self.assertTrue(record.closure_complete)
        self.assertIn("shortest_vector_oracle", record.suites)
        self.assertLessEqual(record.n_K, record.thm1_stated)
        self.assertEqual(exit_status(record, self.limit_hit), 0)

    def test_empirical_a_within_bound(self):
        record = self.report.checks
        self.assertLessEqual(float(Fraction(record.empirical_a)), record.a_bound)

    def test_json_round_trip(self):
        self.assertEqual(RunReport.model_validate_json(self.report.model_dump_json()), self.report)


class TestExitStatus(unittest.TestCase):
    def setUp(self):
        self.record = VerificationRecord(
            n=2,
            delta=8,
            regulator=0.88,
            thm1_stated=21.0,
            thm1_proof=21.0,
            thm2_stated=30.0,
            thm2_proof=40.0,
            a_bound=1.8,
            suites={"closure": CheckResult(status="pass"), "trace_bound": CheckResult(status="skipped")},
        )

    def test_codes(self):
        self.assertEqual(exit_status(self.record, False), 0)
        self.assertEqual(exit_status(self.record, True), 3)
        self.record.suites["norm_bound"] = CheckResult(status="fail", detail="1 of 1 failed")
        self.assertEqual(exit_status(self.record, True), 4)
        self.assertEqual(exit_status(None, True), 3)


if __name__ == "__main__":
    unittest.main()
