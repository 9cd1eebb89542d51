import os
import unittest
from pathlib import Path
from unittest import mock

from pydantic import ValidationError

from perfect_unary.app.config import DEFAULT_CONFIG, ENVIRONMENT_KEYS, get_run_config
from perfect_unary.forms.errors import ConfigurationError


# ruff: noqa
class TestRunConfig(unittest.TestCase):
    def setUp(self):
        self.environment = mock.patch.dict(os.environ, {}, clear=False)
        self.environment.start()
        for name in ENVIRONMENT_KEYS:
            os.environ.pop(name, None)

    def tearDown(self):
        self.environment.stop()

    def test_defaults(self):
        config = get_run_config({"quadratic": 2})
        self.assertEqual(config.precision_bits, DEFAULT_CONFIG["precision_bits"])
        self.assertEqual(config.exponent_variant, "proof")
        self.assertEqual(config.eta_variant, "abstract")
        self.assertEqual(config.seed, 7)

    def test_environment_then_overrides(self):
        os.environ["PERFECT_UNARY_MAX_CLASSES"] = "5"
        os.environ["PERFECT_UNARY_SEED"] = "11"
        config = get_run_config({"quadratic": 3, "seed": 13, "max_classes": None})
        self.assertEqual(config.max_classes, 5)
        self.assertEqual(config.seed, 13)

    def test_quadratic_must_be_squarefree(self):
        with self.assertRaises(ValidationError):
            get_run_config({"quadratic": 4})
        with self.assertRaises(ValidationError):
            get_run_config({"quadratic": 1})

    def test_precision_range(self):
        with self.assertRaises(ValidationError):
            get_run_config({"quadratic": 2, "precision_bits": 32})
        with self.assertRaises(ValidationError):
            get_run_config({"quadratic": 2, "precision_bits": 8192})

    def test_escalation_cap(self):
        self.assertEqual(get_run_config({"quadratic": 2}).max_precision_bits, 4096)
        with self.assertRaises(ValidationError):
            get_run_config({"quadratic": 2, "max_precision_bits": 8192})

    def test_single_field_source(self):
        with self.assertRaises(ValidationError):
            get_run_config({"quadratic": 2, "field_path": Path("field.json")})
        with self.assertRaises(ConfigurationError):
            get_run_config({}).require_field_source()


if __name__ == "__main__":
    unittest.main()
