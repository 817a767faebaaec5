import unittest

import numpy as np

from weldkit.errors import DegenerateMeasureError, DomainError, ResolutionError
from weldkit.fields.action import TrigLift
from weldkit.fields.circle import NEUMANN_DOT, sample_field
from weldkit.fields.gmc import GmcMeasure, gmc_measure
from weldkit.welding.homeo import CircleHomeo, ComposedLift, InverseLift, homeo_from_measures, invert_homeo, \
    pushforward_defect


def sine_homeo(n: int = 512) -> CircleHomeo:
    theta = 2 * np.pi * np.arange(n) / n
    return CircleHomeo.uniform(theta + 0.2 * np.sin(theta))


def uniform_measure(n: int = 256, log_scale: float = 0.0) -> GmcMeasure:
    weights = np.ones(n)
    grid = 2 * np.pi * np.arange(n) / n
    return GmcMeasure(1.0, grid, weights, np.concatenate([[0.0], np.cumsum(weights)]), log_scale)


class TestCircleHomeo(unittest.TestCase):

    def test_rotation(self):
        h = CircleHomeo.rotation(0.3, 64)
        x = np.array([0.0, 1.0, 6.0, 7.5, -2.0])
        np.testing.assert_allclose(x + 0.3, h(x), atol=1e-13)
        np.testing.assert_allclose(x - 0.3, invert_homeo(h)(x), atol=1e-13)

    def test_periodicity(self):
        h = sine_homeo()
        x = np.linspace(0, 2 * np.pi, 11)
        np.testing.assert_allclose(h(x) + 2 * np.pi, h(x + 2 * np.pi), atol=1e-12)

    def test_derivative(self):
        h = sine_homeo(4096)
        x = np.linspace(0.1, 6.0, 13)
        np.testing.assert_allclose(1 + 0.2 * np.cos(x), h.derivative(x), atol=1e-5)

    def test_invert_twice(self):
        h = sine_homeo()
        x = np.random.default_rng(3).uniform(0, 2 * np.pi, 200)
        np.testing.assert_allclose(h(x), invert_homeo(invert_homeo(h))(x), atol=1e-10)

    def test_inverse_at_nodes(self):
        h = sine_homeo()
        np.testing.assert_allclose(h.grid, h.inverse(h.values), atol=1e-12)

    def test_rotated_right(self):
        h = sine_homeo(1024)
        x = np.linspace(0, 2 * np.pi, 17)
        np.testing.assert_allclose(h(x + 0.5), h.rotated_right(0.5)(x), atol=1e-9)

    def test_rotated_left(self):
        h = sine_homeo()
        x = np.linspace(0, 2 * np.pi, 17)
        np.testing.assert_allclose(h(x) - 1.0, h.rotated_left(-1.0)(x), atol=1e-12)

    def test_not_increasing(self):
        grid = 2 * np.pi * np.arange(8) / 8
        with self.assertRaises(DomainError):
            CircleHomeo(grid, -grid)
        with self.assertRaises(DomainError):
            CircleHomeo(grid[::-1], grid)

    def test_mismatched_arrays(self):
        with self.assertRaises(ResolutionError):
            CircleHomeo(np.arange(4), np.arange(5))


class TestLifts(unittest.TestCase):

    def test_composition(self):
        theta = 2 * np.pi * np.arange(128) / 128
        a = TrigLift.from_samples(0.1 * np.sin(theta))
        b = CircleHomeo.rotation(0.4, 64)
        composed = ComposedLift(a, b)
        x = np.array([0.2, 2.0])
        np.testing.assert_allclose(a(x + 0.4), composed(x), atol=1e-13)
        np.testing.assert_allclose(a.derivative(x + 0.4), composed.derivative(x), atol=1e-12)
        np.testing.assert_allclose(x, composed.inverse(composed(x)), atol=1e-12)

    def test_inverse_lift(self):
        theta = 2 * np.pi * np.arange(128) / 128
        a = TrigLift.from_samples(0.1 * np.sin(theta))
        inv = invert_homeo(a)
        self.assertIsInstance(inv, InverseLift)
        x = np.array([0.2, 2.0])
        np.testing.assert_allclose(x, inv(a(x)), atol=1e-13)
        np.testing.assert_allclose(1 / a.derivative(x), inv.derivative(a(x)), atol=1e-12)
        self.assertIs(a, invert_homeo(inv))


class TestHomeoFromMeasures(unittest.TestCase):

    def test_uniform_gives_rotation(self):
        h = homeo_from_measures(uniform_measure(), uniform_measure(), 0.7)
        np.testing.assert_allclose(h.grid - 0.7, h.values, atol=1e-12)
        self.assertAlmostEqual(-0.7, float(h(0.0)), delta=1e-12)

    def test_scaling_ignored(self):
        a = homeo_from_measures(uniform_measure(), uniform_measure(), 0.2)
        b = homeo_from_measures(uniform_measure(log_scale=3.0), uniform_measure(), 0.2)
        np.testing.assert_allclose(a.values, b.values, atol=1e-12)

    def test_random_pair(self):
        m1 = gmc_measure(sample_field(NEUMANN_DOT, 64, 11, stream=0), 1.0, 4096)
        m2 = gmc_measure(sample_field(NEUMANN_DOT, 64, 11, stream=1), 1.0, 4096)
        h = homeo_from_measures(m1, m2, 0.4)
        self.assertLess(pushforward_defect(h, m1, m2), 1e-3)
        self.assertAlmostEqual(-0.4, float(h(0.0)), delta=1e-12)
        self.assertTrue(np.all(np.diff(h.values) > 0))

    def test_defect_detects_mismatch(self):
        m1 = gmc_measure(sample_field(NEUMANN_DOT, 64, 12, stream=0), 1.0, 1024)
        m2 = gmc_measure(sample_field(NEUMANN_DOT, 64, 12, stream=1), 1.0, 1024)
        self.assertGreater(pushforward_defect(CircleHomeo.rotation(0.0, 1024), m1, m2), 1e-2)

    def test_zero_mass(self):
        empty = uniform_measure()._replace(weights=np.zeros(256), cdf=np.zeros(257))
        with self.assertRaises(DegenerateMeasureError):
            homeo_from_measures(empty, uniform_measure(), 0.0)
        with self.assertRaises(DegenerateMeasureError):
            homeo_from_measures(uniform_measure(), empty, 0.0)

    def test_grid_mismatch(self):
        with self.assertRaises(ResolutionError):
            homeo_from_measures(uniform_measure(256), uniform_measure(512), 0.0)
