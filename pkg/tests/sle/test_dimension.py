import unittest

import numpy as np

from weldkit.errors import ConfigurationError, EvaluationError, ResolutionError
from weldkit.sle.dimension import box_counts, box_dimension, minkowski_content, resample, resolution
from weldkit.welding.curve import CurvePolyline
from tests.welding.fixtures import circle

TILT = np.exp(0.3j)


def segment(length: float = 1.0, n: int = 2001) -> CurvePolyline:
    return CurvePolyline(TILT * np.linspace(0, length, n), closed=False)


class TestResample(unittest.TestCase):

    def test_spacing_and_vertices(self):
        curve = CurvePolyline(np.array([0, 1, 1 + 2j]), closed=False)
        points = resample(curve, 0.3)
        self.assertLessEqual(np.max(np.abs(np.diff(points))), 0.3 + 1e-12)
        for vertex in curve.points:
            self.assertLess(np.min(np.abs(points - vertex)), 1e-12)

    def test_closed(self):
        points = resample(circle(1.0, 16), 0.05)
        self.assertLessEqual(np.max(np.abs(np.diff(np.append(points, points[0])))), 0.05 + 1e-12)

    def test_resolution(self):
        self.assertAlmostEqual(1e-3, resolution(segment(2.0)), delta=1e-12)


class TestBoxDimension(unittest.TestCase):

    def test_segment(self):
        curve = CurvePolyline(np.array([0, TILT]), closed=False)
        self.assertAlmostEqual(1.0, box_dimension(curve, np.logspace(-3, -1, 6)), delta=0.05)

    def test_circle(self):
        self.assertAlmostEqual(1.0, box_dimension(circle(1.0, 2048), np.logspace(-3, -1, 6)), delta=0.05)

    def test_scale_preconditions(self):
        curve = segment()
        self.assertRaises(ResolutionError, box_dimension, curve, np.logspace(-2, -1, 6))
        self.assertRaises(ResolutionError, box_dimension, curve, [1e-3, 1e-2, 1e-1])

    def test_degenerate_fit(self):
        point = CurvePolyline(np.array([0.5 + 0.5j]), closed=False)
        self.assertRaises(EvaluationError, box_dimension, point, np.logspace(-3, -1, 5))

    def test_counts_grow_under_union(self):
        curve = circle(1.0, 512)
        scales = np.logspace(-3, -1, 5)
        extra = np.array([3 + 3j, -2.5 + 0.1j, 0.0])
        self.assertTrue(np.all(box_counts(curve, scales, extra) >= box_counts(curve, scales)))


class TestMinkowskiContent(unittest.TestCase):

    def test_segment_tube(self):
        radii = np.array([0.05, 0.02, 0.01])
        content = minkowski_content(segment(), radii, exponent=1.0)
        np.testing.assert_allclose(2 + np.pi * radii, content, rtol=0.03)

    def test_dilation(self):
        lam, exponent = 2.0, 1.25
        radii = np.array([0.04, 0.02])
        base = minkowski_content(segment(), radii, exponent)
        dilated = minkowski_content(segment().scaled(lam), lam * radii, exponent)
        np.testing.assert_allclose(lam ** exponent * base, dilated, rtol=0.05)

    def test_radii_must_decrease(self):
        self.assertRaises(ConfigurationError, minkowski_content, segment(), [0.01, 0.02], 1.0)
        self.assertRaises(ConfigurationError, minkowski_content, segment(), [], 1.0)

    def test_below_resolution(self):
        self.assertRaises(ResolutionError, minkowski_content, segment(n=11), [0.05, 0.01], 1.0)
