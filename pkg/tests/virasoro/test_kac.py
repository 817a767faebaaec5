import math
import unittest

from weldkit.errors import DomainError
from weldkit.virasoro.kac import MINUS, OUTSIDE, PLUS, kac_membership, kac_table, kac_value


class TestKacTable(unittest.TestCase):

    def test_first_entries(self):
        gamma = math.sqrt(2)
        self.assertEqual(0, kac_value(MINUS, 1, 1, gamma))
        self.assertAlmostEqual(gamma + 4 / gamma, kac_value(PLUS, 1, 1, gamma), delta=1e-15)

    def test_table_size(self):
        table = kac_table(1.0, 2, 3)
        self.assertEqual(12, len(table))
        self.assertEqual({MINUS, PLUS}, {e.sign for e in table})

    def test_tables_are_separated(self):
        for entry in kac_table(1.3, 4, 4):
            if entry.sign == MINUS:
                self.assertLessEqual(entry.value, 0)
            else:
                self.assertGreater(entry.value, 0)

    def test_unknown_sign(self):
        self.assertRaises(ValueError, kac_value, 'zero', 1, 1, 1.0)

    def test_gamma_positive(self):
        self.assertRaises(DomainError, kac_table, 0, 1, 1)


class TestKacMembership(unittest.TestCase):

    def test_zero(self):
        self.assertEqual((MINUS, 1, 1), tuple(kac_membership(0, math.sqrt(2))))

    def test_twice_background_charge(self):
        gamma = math.sqrt(2)
        self.assertEqual((PLUS, 1, 1), tuple(kac_membership(gamma + 4 / gamma, gamma)))

    def test_witness(self):
        gamma = math.sqrt(2)
        self.assertEqual((MINUS, 2, 1), tuple(kac_membership(-gamma / 2, gamma)))
        self.assertEqual((PLUS, 3, 2), tuple(kac_membership(kac_value(PLUS, 3, 2, 1.3), 1.3)))

    def test_complex_values_are_outside(self):
        gamma = math.sqrt(2)
        Q = gamma / 2 + 2 / gamma
        self.assertEqual(OUTSIDE, kac_membership(Q + 0.1j, gamma).kind)

    def test_background_charge_is_outside(self):
        gamma = math.sqrt(2)
        self.assertEqual(OUTSIDE, kac_membership(gamma / 2 + 2 / gamma, gamma).kind)

    def test_tolerance(self):
        gamma = math.sqrt(2)
        self.assertEqual(OUTSIDE, kac_membership(1e-6, gamma).kind)
        self.assertEqual(MINUS, kac_membership(1e-6, gamma, tol=1e-5).kind)
