import unittest
from fractions import Fraction

from fixtures import cubic, quadratic
from perfect_unary.forms.errors import NotTotallyPositiveError, ZeroElementError
from perfect_unary.forms.form_minima import (
    brute_force_minimum,
    invariant,
    minimum_and_vectors,
    mu_product,
    scaled_minimum,
    trace_gram,
    within_box,
)


# ruff: noqa
class TestTraceGram(unittest.TestCase):
    def setUp(self):
        self.field, self.lattice = quadratic(2)
        self.form = self.field.element([2, -1])

    def test_gram_of_one(self):
        gram = trace_gram(self.field, self.field.one())
        self.assertEqual(gram.entries, ((2, 0), (0, 4)))
        self.assertTrue(gram.positive_definite)
        self.assertEqual(gram.determinant(), self.field.discriminant)

    def test_gram_of_two_minus_sqrt2(self):
        gram = trace_gram(self.field, self.form)
        self.assertEqual(gram.entries, ((4, -4), (-4, 8)))
        self.assertEqual(gram.value((1, 1)), 4)
        self.assertEqual(gram.determinant(), self.form.norm() * self.field.discriminant)

    def test_indefinite_gram(self):
        self.assertFalse(trace_gram(self.field, self.field.basis_element(1)).positive_definite)
        with self.assertRaises(ZeroElementError):
            trace_gram(self.field, self.field.zero())


class TestMinima(unittest.TestCase):
    def setUp(self):
        self.field, self.lattice = quadratic(2)
        self.form = self.field.element([2, -1])

    def test_minimum_of_one(self):
        record = minimum_and_vectors(self.field, self.field.one())
        self.assertEqual(record.minimum, 2)
        self.assertEqual(record.vectors, ((1, 0),))

    def test_minimum_of_two_minus_sqrt2(self):
        record = minimum_and_vectors(self.field, self.form)
        self.assertEqual(record.minimum, 4)
        self.assertEqual(record.vectors, ((1, 0), (1, 1)))
        self.assertEqual(record, brute_force_minimum(self.field, self.form))
        self.assertTrue(within_box(record))

    def test_unit_reduced_minima_are_transported(self):
        moved = self.form * self.lattice.unit_power([1]) ** 2
        self.assertEqual(moved, self.field.element([2, 1]))
        record = minimum_and_vectors(self.field, moved, self.lattice)
        self.assertEqual(record.minimum, 4)
        self.assertEqual(record.vectors, ((1, -1), (1, 0)))
        far = self.form * self.lattice.unit_power([5]) ** 2
        self.assertEqual(minimum_and_vectors(self.field, far, self.lattice), minimum_and_vectors(self.field, far))

    def test_rejects_indefinite_forms(self):
        with self.assertRaises(NotTotallyPositiveError):
            minimum_and_vectors(self.field, self.field.basis_element(1))

    def test_scaling(self):
        self.assertEqual(scaled_minimum(self.field, self.form, Fraction(3, 2)), ((1, 0), (1, 1)))
        with self.assertRaises(ValueError):
            scaled_minimum(self.field, self.form, 0)

    def test_invariant(self):
        record = minimum_and_vectors(self.field, self.form)
        self.assertEqual(invariant(record, self.form), (2, 8))
        moved = self.form * self.lattice.unit_power([2]) ** 2 * 5
        self.assertEqual(invariant(minimum_and_vectors(self.field, moved), moved), (2, 8))

    def test_mu_product(self):
        self.assertEqual(mu_product(self.field, self.field.one()), 4)
        self.assertEqual(mu_product(self.field, self.form, self.lattice), 8)

    def test_brute_force_on_other_fields(self):
        for d in (3, 5, 13):
            field, _ = quadratic(d)
            a = field.element([3, 1])
            if not field.is_totally_positive(a):
                a = a * a
            with self.subTest(d=d):
                self.assertEqual(minimum_and_vectors(field, a), brute_force_minimum(field, a))

    def test_cubic_minimum(self):
        field, lattice = cubic()
        record = minimum_and_vectors(field, field.one(), lattice)
        self.assertEqual(record.minimum, 3)
        self.assertEqual(record, brute_force_minimum(field, field.one(), box=2))


if __name__ == "__main__":
    unittest.main()
