import unittest
from fractions import Fraction

from mpmath import mpf

from perfect_unary.forms import linalg
from perfect_unary.forms.enumeration import (
    gram_lll,
    ldl_decomposition,
    real_enumerate,
    short_vectors,
    shortest_vectors,
    sign_normalize,
)


# ruff: noqa
class TestExactEnumeration(unittest.TestCase):
    def setUp(self):
        self.trace_form = [[Fraction(2), Fraction(0)], [Fraction(0), Fraction(4)]]
        self.skewed = [[Fraction(4), Fraction(-4)], [Fraction(-4), Fraction(8)]]

    def test_sign_normalize(self):
        self.assertEqual(sign_normalize((0, -1, 2)), (0, 1, -2))
        self.assertEqual(sign_normalize((3, -1)), (3, -1))

    def test_gram_lll(self):
        gram = [[Fraction(5), Fraction(7)], [Fraction(7), Fraction(10)]]
        reduced, transform = gram_lll(gram)
        self.assertEqual(abs(linalg.det(transform)), 1)
        for i, row in enumerate(transform):
            for j, other in enumerate(transform):
                self.assertEqual(reduced[i][j], linalg.dot(linalg.vec_mat(row, gram), other))
        self.assertEqual(reduced[0][0], 1)

    def test_ldl_rejects_indefinite(self):
        with self.assertRaises(ValueError):
            ldl_decomposition([[Fraction(1), Fraction(2)], [Fraction(2), Fraction(1)]])

    def test_shortest_vectors(self):
        self.assertEqual(shortest_vectors(self.trace_form), (2, [(1, 0)]))
        self.assertEqual(shortest_vectors(self.skewed), (4, [(1, 0), (1, 1)]))

    def test_seed_below_minimum_is_recovered(self):
        self.assertEqual(shortest_vectors(self.skewed, Fraction(1)), (4, [(1, 0), (1, 1)]))

    def test_short_vectors(self):
        found = short_vectors(self.trace_form, Fraction(4))
        self.assertEqual(found, [((1, 0), 2), ((0, 1), 4)])
        values = [value for _, value in short_vectors(self.skewed, Fraction(8))]
        self.assertEqual(values, sorted(values))
        self.assertIn(((2, 1), 8), short_vectors(self.skewed, Fraction(8)))


class TestRealEnumeration(unittest.TestCase):
    def test_unit_square(self):
        gram = [[mpf(1), mpf(0)], [mpf(0), mpf(1)]]
        found = real_enumerate(gram, mpf(1))
        self.assertEqual(sorted(x for x, _ in found), [(-1, 0), (0, -1), (0, 1), (1, 0)])
        with_zero = real_enumerate(gram, mpf(1), include_zero=True)
        self.assertEqual(with_zero[0][0], (0, 0))

    def test_centered(self):
        found = real_enumerate([[mpf(1)]], mpf("0.3"), center=[mpf("2.4")], include_zero=True)
        self.assertEqual([x for x, _ in found], [(2,)])


if __name__ == "__main__":
    unittest.main()
