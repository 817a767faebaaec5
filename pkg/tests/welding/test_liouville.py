import unittest

import numpy as np

from weldkit.beltrami.spec import laurent_beltrami
from weldkit.beltrami.transforms import iota_pullback
from weldkit.core.constants import constants_from_kappa
from weldkit.errors import DomainError, ResolutionError
from weldkit.welding.liouville import curve_liouville_action, radon_nikodym_first_order, vw_residual
from weldkit.welding.zipper import riemann_maps_of_curve
from tests.welding.fixtures import circle, quadratic_curve, quadratic_interior_triple, unit_triple

Q = constants_from_kappa(2.0).Q


def zero(p):
    return np.zeros(np.shape(p))


def two_re(p):
    return 2 * np.real(p)


class TestCurveAction(unittest.TestCase):

    def test_zero_field(self):
        self.assertEqual(0.0, curve_liouville_action(unit_triple(), zero, Q))

    def test_constant(self):
        action = curve_liouville_action(unit_triple(), lambda p: np.full(np.shape(p), 0.7), Q)
        self.assertAlmostEqual(4 * Q * 0.7, action, delta=1e-12)

    def test_linear_field_on_circle(self):
        self.assertAlmostEqual(4.0, curve_liouville_action(unit_triple(), two_re, Q), delta=1e-12)

    def test_unresolved_field(self):
        with self.assertRaises(ResolutionError):
            curve_liouville_action(unit_triple(), lambda p: np.cos(120 * np.angle(p)), Q)


class TestViklundWang(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.quadratic = riemann_maps_of_curve(quadratic_curve(0.1))

    def test_circle(self):
        w = riemann_maps_of_curve(circle(1.5, 1024), 256)

        def field(p):
            return np.real(0.4 * p) + 0.2 * np.imag(p ** 3) / 1.5 ** 3 + 0.1

        self.assertLess(vw_residual(w, field, Q), 1e-8)

    def test_linear_field(self):
        self.assertLess(vw_residual(self.quadratic, two_re, Q), 1e-5)

    def test_zero_field(self):
        self.assertLess(vw_residual(self.quadratic, zero, Q), 1e-5)


class TestRadonNikodym(unittest.TestCase):

    def setUp(self):
        self.mu = iota_pullback(laurent_beltrami(2))

    def test_zero_field_on_circle(self):
        self.assertAlmostEqual(1.0, radon_nikodym_first_order(unit_triple(), zero, self.mu, 0.01, Q), delta=1e-12)

    def test_single_mode(self):
        phi1 = 0.3 + 0.2j
        t = 0.01 - 0.02j
        value = radon_nikodym_first_order(unit_triple(), lambda p: 2 * np.real(phi1 * p), self.mu, t, Q)
        self.assertAlmostEqual(1 - 2 * np.real(t * phi1 ** 2), value, delta=1e-9)

    def test_schwarzian_part(self):
        # for a zero field only -(1/12) S f remains, and S f pairs to 6 a^2 with the pulled back mu_2
        value = radon_nikodym_first_order(quadratic_interior_triple(0.1), zero, self.mu, 0.1, Q)
        self.assertAlmostEqual(1 + 2 * 0.1 * 0.06 / 12, value, delta=1e-9)

    def test_outside_disc(self):
        with self.assertRaises(DomainError):
            radon_nikodym_first_order(unit_triple(), zero, laurent_beltrami(2), 0.01, Q)
