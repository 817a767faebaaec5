import math
import unittest

from weldkit.core.constants import constants_from_kappa, constants_from_gamma
from weldkit.errors import DomainError


class TestConstants(unittest.TestCase):

    def test_kappa_four(self):
        c = constants_from_kappa(4)
        self.assertAlmostEqual(2, c.gamma, delta=1e-15)
        self.assertAlmostEqual(2, c.Q, delta=1e-15)
        self.assertAlmostEqual(25, c.c_L, delta=1e-12)
        self.assertAlmostEqual(1, c.c_m, delta=1e-12)

    def test_kappa_eight_thirds_has_vanishing_matter_charge(self):
        c = constants_from_kappa(8 / 3)
        self.assertAlmostEqual(0, c.c_m, delta=1e-12)

    def test_kappa_two(self):
        c = constants_from_kappa(2)
        self.assertAlmostEqual(math.sqrt(2), c.gamma, delta=1e-15)
        self.assertAlmostEqual(3 / math.sqrt(2), c.Q, delta=1e-14)
        self.assertAlmostEqual(28, c.c_L, delta=1e-12)
        self.assertAlmostEqual(-2, c.c_m, delta=1e-12)

    def test_central_charges_add_up(self):
        for kappa in [0.1, 0.5, 1, 2, 3, 4]:
            c = constants_from_kappa(kappa)
            self.assertAlmostEqual(26, c.c_L + c.c_m, delta=1e-10)
            self.assertAlmostEqual(c.gamma / 2 + 2 / c.gamma, c.Q, delta=1e-12)

    def test_from_gamma(self):
        c = constants_from_gamma(1)
        self.assertAlmostEqual(1, c.kappa)
        self.assertAlmostEqual(2.5, c.Q)

    def test_out_of_range_kappa(self):
        self.assertRaises(DomainError, constants_from_kappa, 0)
        self.assertRaises(DomainError, constants_from_kappa, 4.5)
        self.assertRaises(ValueError, constants_from_kappa, -1)


if __name__ == '__main__':
    unittest.main()
