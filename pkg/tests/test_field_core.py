import json
import tempfile
import unittest
from fractions import Fraction
from pathlib import Path

import numpy as np
from mpmath import mp
from sympy import Poly, Symbol

from fixtures import CUBIC_49, cubic, quadratic
from perfect_unary.forms.errors import (
    BasisNotUnimodularError,
    FieldInputError,
    InvalidPolynomialError,
    NotTotallyRealError,
    PrecisionExhaustedError,
    ReduciblePolynomialError,
    ZeroElementError,
)
from perfect_unary.forms.field_core import (
    NumberField,
    is_squarefree,
    load_field_description,
    make_field,
    norm,
    squarefree_part,
    to_mpf,
    trace,
)


# ruff: noqa
class TestQuadraticField(unittest.TestCase):
    def setUp(self):
        self.field, _ = quadratic(2)
        self.sqrt2 = self.field.basis_element(1)

    def test_discriminant_and_basis(self):
        self.assertEqual(self.field.degree, 2)
        self.assertEqual(self.field.discriminant, 8)
        self.assertEqual(self.field.trace_matrix, ((2, 0), (0, 4)))

    def test_trace_and_norm(self):
        one_plus = self.field.element([1, 1])
        self.assertEqual(trace(one_plus), 2)
        self.assertEqual(norm(one_plus), -1)
        self.assertEqual(trace(self.sqrt2), 0)
        self.assertEqual(self.field.element([3, 2]).norm(), 1)

    def test_arithmetic(self):
        self.assertEqual(self.sqrt2 * self.sqrt2, self.field.scalar(2))
        self.assertEqual(self.field.element([1, 1]).inverse(), self.field.element([-1, 1]))
        self.assertEqual(self.field.element([1, 1]) ** -2, self.field.element([3, -2]))
        self.assertEqual(self.field.one() / 2, self.field.element([Fraction(1, 2), 0]))
        with self.assertRaises(ZeroElementError):
            self.field.zero().inverse()

    def test_charpoly(self):
        x = Symbol("x")
        self.assertEqual(self.field.charpoly(self.sqrt2), Poly(x**2 - 2, x))

    def test_embeddings_are_ascending(self):
        low, high = self.field.embeddings(self.sqrt2)
        self.assertAlmostEqual(float(low), -1.41421356237, places=10)
        self.assertAlmostEqual(float(high), 1.41421356237, places=10)
        self.assertEqual(self.field.embedding_signs(self.sqrt2), (-1, 1))

    def test_total_positivity(self):
        self.assertTrue(self.field.is_totally_positive(self.field.element([2, 1])))
        self.assertTrue(self.field.is_totally_positive(self.field.element([2, -1])))
        self.assertFalse(self.field.is_totally_positive(self.field.element([1, 1])))
        with self.assertRaises(ZeroElementError):
            self.field.is_totally_positive(self.field.zero())

    def test_golden_basis(self):
        field, _ = quadratic(5)
        omega = field.basis_element(1)
        self.assertEqual(field.discriminant, 5)
        self.assertEqual(field.integral_basis[1], (Fraction(1, 2), Fraction(1, 2)))
        self.assertEqual(omega * omega, omega + 1)

    def test_discriminants(self):
        self.assertEqual(quadratic(3)[0].discriminant, 12)
        self.assertEqual(quadratic(13)[0].discriminant, 13)

    def test_power_coordinates(self):
        field, _ = quadratic(5)
        omega = field.basis_element(1)
        self.assertEqual(field.power_coords(omega), (Fraction(1, 2), Fraction(1, 2)))
        self.assertEqual(field.from_power_coords([Fraction(1, 2), Fraction(1, 2)]), omega)


class TestEmbeddingProperties(unittest.TestCase):
    def setUp(self):
        self.rng = np.random.default_rng(23)
        self.fields = [quadratic(5)[0], quadratic(6)[0], cubic()[0]]

    def _elements(self, field, count=100):
        elements = []
        while len(elements) < count:
            x = field.element([int(c) for c in self.rng.integers(-20, 21, size=field.degree)])
            if not x.is_zero():
                elements.append(x)
        return elements

    def test_trace_and_norm_match_embeddings(self):
        for field in self.fields:
            tolerance = mp.mpf(2) ** -(field.precision_bits // 2)
            for x in self._elements(field):
                with self.subTest(field=field, x=x), mp.workprec(field.precision_bits):
                    values = field.embeddings(x)
                    expected_trace, expected_norm = to_mpf(trace(x)), to_mpf(norm(x))
                    self.assertLess(abs(mp.fsum(values) - expected_trace), tolerance * max(1, abs(expected_trace)))
                    self.assertLess(abs(mp.fprod(values) - expected_norm), tolerance * max(1, abs(expected_norm)))

    def test_positivity_agrees_with_inverse(self):
        for field in self.fields:
            for x in self._elements(field):
                with self.subTest(field=field, x=x):
                    self.assertEqual(field.is_totally_positive(x), field.is_totally_positive(x.inverse()))

    def test_trace_and_norm_ignore_the_basis(self):
        golden, _ = quadratic(5)
        power = make_field([-5, 0, 1], [[1, 0], [0, 1]])
        self.assertEqual(power.discriminant, 20)
        for _ in range(100):
            coords = [Fraction(int(c), 2) for c in self.rng.integers(-30, 31, size=2)]
            x, y = golden.from_power_coords(coords), power.from_power_coords(coords)
            with self.subTest(coords=coords):
                self.assertEqual(x.trace(), y.trace())
                self.assertEqual(x.norm(), y.norm())
                self.assertEqual((x * x).trace(), (y * y).trace())


class TestPrecisionEscalation(unittest.TestCase):
    def setUp(self):
        # 665857 - 470832 sqrt(2) is about 7.5e-7
        self.small = (665857, -470832)

    def test_signs_after_doubling(self):
        field = make_field([-2, 0, 1], precision_bits=4)
        self.assertEqual(field.embedding_signs(field.element(self.small)), (1, 1))

    def test_exhaustion_and_sturm_fallback(self):
        field = make_field([-2, 0, 1], precision_bits=4, max_precision_bits=8)
        x = field.element(self.small)
        with self.assertRaises(PrecisionExhaustedError):
            field.embedding_signs(x)
        self.assertTrue(field.is_totally_positive(x))


class TestMakeField(unittest.TestCase):
    def test_rejects_bad_polynomials(self):
        with self.assertRaises(ReduciblePolynomialError):
            make_field([-4, 0, 1])
        with self.assertRaises(NotTotallyRealError):
            make_field([1, 0, 1])
        with self.assertRaises(InvalidPolynomialError):
            make_field([1, 2])
        with self.assertRaises(InvalidPolynomialError):
            make_field([1])

    def test_rejects_non_integral_basis(self):
        with self.assertRaises(BasisNotUnimodularError):
            make_field([-5, 0, 1], [[1, 0], [0, Fraction(1, 3)]])
        with self.assertRaises(BasisNotUnimodularError):
            make_field([-5, 0, 1], [[1, 0], [2, 0]])

    def test_cubic_without_basis_uses_equation_order(self):
        field = make_field([1, -2, -1, 1])
        self.assertTrue(field.order_discriminant_only)
        self.assertEqual(field.discriminant, 49)

    def test_squarefree_helpers(self):
        self.assertEqual(squarefree_part(12), (3, 2))
        self.assertEqual(squarefree_part(8), (2, 2))
        self.assertTrue(is_squarefree(15))
        self.assertFalse(is_squarefree(12))


class TestFieldDescription(unittest.TestCase):
    def setUp(self):
        self.directory = tempfile.TemporaryDirectory()
        self.path = Path(self.directory.name)

    def tearDown(self):
        self.directory.cleanup()

    def test_cubic_fixture(self):
        field, units = load_field_description(CUBIC_49)
        self.assertIsInstance(field, NumberField)
        self.assertEqual(field.degree, 3)
        self.assertEqual(field.discriminant, 49)
        self.assertFalse(field.order_discriminant_only)
        self.assertEqual(len(units), 2)
        self.assertTrue(all(abs(u.norm()) == 1 for u in units))
        self.assertEqual(cubic()[0].discriminant, 49)

    def test_parse_error_carries_line(self):
        bad = self.path / "bad.json"
        bad.write_text('{\n  "min_poly": [1, -2, -1, 1],\n  "integral_basis": [\n}\n', encoding="utf-8")
        with self.assertRaises(FieldInputError) as context:
            load_field_description(bad)
        self.assertEqual(context.exception.line, 4)

    def test_schema_error(self):
        bad = self.path / "schema.json"
        bad.write_text(json.dumps({"min_poly": "x^2 - 2"}), encoding="utf-8")
        with self.assertRaises(FieldInputError):
            load_field_description(bad)

    def test_missing_file(self):
        with self.assertRaises(FieldInputError):
            load_field_description(self.path / "missing.json")


if __name__ == "__main__":
    unittest.main()
