import unittest

import numpy as np

from weldkit.beltrami.spec import laurent_beltrami
from weldkit.beltrami.transforms import iota_pullback
from weldkit.core.constants import constants_from_kappa
from weldkit.core.quadrature import integrate_annulus
from weldkit.core.series import PowerSeriesMap
from weldkit.errors import ConfigurationError, DomainError
from weldkit.welding.energies import LEFT, RIGHT, exterior_area_integral, interior_area_integral, omega, \
    welding_energies, welding_pairings
from weldkit.welding.homeo import CircleHomeo, ComposedLift
from weldkit.welding.zipper import riemann_maps_of_curve, zipper_weld
from tests.welding.fixtures import circle, quadratic_curve, quadratic_interior_triple, unit_triple


def pre_schwarzian_squared(m: PowerSeriesMap):
    def integrand(z):
        d = m.derivs(z, 2, check=False)
        return np.abs(d[2] / d[1]) ** 2

    return integrand


class TestWeldingEnergies(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.quadratic = riemann_maps_of_curve(quadratic_curve(0.05))

    def test_circle(self):
        k, s1 = welding_energies(riemann_maps_of_curve(circle(1.5, 512), 256))
        self.assertAlmostEqual(0.0, k, delta=1e-10)
        self.assertAlmostEqual(0.0, s1, delta=1e-10)

    def test_unit_triple(self):
        self.assertEqual((0.0, 0.0), welding_energies(unit_triple()))

    def test_interior_closed_form(self):
        # f''/f' = 0.1 / (1 + 0.1 z)
        self.assertAlmostEqual(-np.pi * np.log(0.99), interior_area_integral(self.quadratic.f), delta=1e-10)

    def test_quadrature_cross_check(self):
        f, g = self.quadratic.f, self.quadratic.g
        inner = integrate_annulus(pre_schwarzian_squared(f), 0.0, 1.0, tol=1e-10).value
        outer = integrate_annulus(pre_schwarzian_squared(g), 1.0, np.inf, tol=1e-10).value
        self.assertAlmostEqual(inner.real, interior_area_integral(f), delta=1e-9)
        self.assertAlmostEqual(outer.real, exterior_area_integral(g), delta=1e-9)

    def test_positive_for_non_circle(self):
        _, s1 = welding_energies(self.quadratic)
        self.assertGreater(s1, 1e-3)

    def test_welded_triple_agrees(self):
        k, s1 = welding_energies(self.quadratic)
        k_w, s1_w = welding_energies(zipper_weld(self.quadratic.h, 1024))
        self.assertAlmostEqual(k, k_w, delta=1e-8)
        self.assertAlmostEqual(s1, s1_w, delta=1e-8)

    def test_rotation_invariance(self):
        k, s1 = welding_energies(self.quadratic)
        for alpha in (0.3, 1.9, -2.4):
            rotation = CircleHomeo.rotation(alpha, 64)
            for h in (ComposedLift(rotation, self.quadratic.h), ComposedLift(self.quadratic.h, rotation)):
                k_r, s1_r = welding_energies(zipper_weld(h, 512))
                self.assertAlmostEqual(k, k_r, delta=1e-8)
                self.assertAlmostEqual(s1, s1_r, delta=1e-8)

    def test_divergent_series(self):
        coeffs = np.zeros(101, dtype=complex)
        coeffs[1] = 1
        coeffs[100] = 0.004
        f = PowerSeriesMap(coeffs, tail_tol=None)
        with self.assertLogs('weldkit.welding.energies', level='WARNING'):
            self.assertEqual(np.inf, interior_area_integral(f))


class TestOmega(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.constants = constants_from_kappa(2.0)
        cls.a = riemann_maps_of_curve(quadratic_curve(0.05))
        cls.b = riemann_maps_of_curve(quadratic_curve(0.12))

    def test_self(self):
        self.assertEqual(0.0, omega(self.a, self.a, self.constants))

    def test_antisymmetry(self):
        self.assertAlmostEqual(omega(self.a, self.b, self.constants), -omega(self.b, self.a, self.constants),
                               delta=1e-12)
        self.assertNotAlmostEqual(0.0, omega(self.a, self.b, self.constants), delta=1e-6)

    def test_left_rotation(self):
        rotated = zipper_weld(ComposedLift(CircleHomeo.rotation(0.8, 64), self.a.h), 512)
        self.assertAlmostEqual(0.0, omega(rotated, self.a, self.constants), delta=1e-7)


class TestPairings(unittest.TestCase):

    def test_circle(self):
        theta, varpi = welding_pairings(unit_triple(), iota_pullback(laurent_beltrami(2)), RIGHT)
        self.assertAlmostEqual(0, theta, delta=1e-12)
        self.assertAlmostEqual(0, varpi, delta=1e-12)

    def test_quadratic_map(self):
        # only the constant terms -6a^2 of S f and -a^2 of f'^2/f^2 - 1/z^2 pair with the pulled back mu_2
        theta, varpi = welding_pairings(quadratic_interior_triple(0.1), iota_pullback(laurent_beltrami(2)), RIGHT)
        self.assertAlmostEqual(-0.06, theta, delta=1e-8)
        self.assertAlmostEqual(-0.01, varpi, delta=1e-8)

    def test_exterior_map(self):
        w = riemann_maps_of_curve(quadratic_curve(0.05))
        theta, varpi = welding_pairings(w, laurent_beltrami(2, 0.5), LEFT)
        self.assertTrue(np.isfinite(theta) and np.isfinite(varpi))
        self.assertGreater(abs(theta), 0)

    def test_wrong_side(self):
        with self.assertRaises(DomainError):
            welding_pairings(unit_triple(), laurent_beltrami(2), RIGHT)
        with self.assertRaises(DomainError):
            welding_pairings(unit_triple(), iota_pullback(laurent_beltrami(2)), LEFT)
        with self.assertRaises(ConfigurationError):
            welding_pairings(unit_triple(), laurent_beltrami(2), 'up')
