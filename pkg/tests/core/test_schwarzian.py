import unittest

import numpy as np

from weldkit.core.schwarzian import schwarzian
from weldkit.core.series import PowerSeriesMap, series_compose_invert
from weldkit.errors import SingularMapError


class TestSchwarzian(unittest.TestCase):

    def test_identity(self):
        pre, s = schwarzian(PowerSeriesMap.identity(), 0.3 - 0.1j)
        self.assertEqual(0, pre)
        self.assertEqual(0, s)

    def test_mobius_point(self):
        _, s = schwarzian(PowerSeriesMap.mobius(0.3 + 0.2j), 0.3)
        self.assertAlmostEqual(0, s, delta=1e-12)

    def test_mobius_annihilation_on_grid(self):
        f = PowerSeriesMap.mobius(0.5)
        z = 0.5 * np.exp(2j * np.pi * np.arange(64) / 64)
        _, s = schwarzian(f, z)
        self.assertLess(np.max(np.abs(s)), 1e-12)

    def test_constant_second_derivative(self):
        pre, s = schwarzian(PowerSeriesMap.normalized([0.5]), 0)
        self.assertAlmostEqual(1, pre, delta=1e-15)
        self.assertAlmostEqual(-1.5, s, delta=1e-15)

    def test_chain_rule(self):
        f = PowerSeriesMap.normalized([0.1])
        g = PowerSeriesMap.normalized([0.2, 0.05j])
        fg = series_compose_invert(f, g)

        z = 0.3 * np.exp(2j * np.pi * np.arange(8) / 8)
        _, s_fg = schwarzian(fg, z)
        _, s_f = schwarzian(f, g(z))
        _, s_g = schwarzian(g, z)
        dg = g.derivs(z, 1)[1]
        np.testing.assert_allclose(s_f * dg ** 2 + s_g, s_fg, atol=1e-12)

    def test_vanishing_derivative(self):
        f = PowerSeriesMap.normalized([0.5])
        self.assertRaises(SingularMapError, schwarzian, f, -1)


if __name__ == '__main__':
    unittest.main()
