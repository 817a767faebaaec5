import unittest

import numpy as np

from weldkit.beltrami.cauchy import cauchy_potential, cauchy_transform, dbar_residual, normalized_field, \
    potential_derivative_at_zero
from weldkit.beltrami.spec import bump_beltrami, laurent_beltrami, rotation_beltrami, zero_beltrami
from weldkit.beltrami.transforms import iota_pullback
from weldkit.errors import DomainError


class TestCauchyPotential(unittest.TestCase):

    def test_laurent_modes(self):
        z = np.array([0, 0.5, 1.2j, -1.5 + 0.3j])
        for n in (1, 2, 3):
            np.testing.assert_allclose(z ** (n + 1), cauchy_potential(laurent_beltrami(n), z, 1e-12), atol=1e-10)

    def test_zero(self):
        np.testing.assert_array_equal([0, 0], cauchy_potential(zero_beltrami(), [0.5, 3]))

    def test_return_error(self):
        value, error = cauchy_potential(laurent_beltrami(2), 0.5, return_error=True)
        self.assertAlmostEqual(0.125, value, delta=1e-10)
        self.assertLess(error, 1e-8)

    def test_dbar_recovers_mu(self):
        mu = bump_beltrami(2, 1.5, 2.5, 0.1)
        z = np.array([1.8, 2.1j, -2.2 + 0.3j])
        fd, expected = dbar_residual(mu, z)
        np.testing.assert_allclose(expected, fd, atol=1e-5)

    def test_derivative_at_zero(self):
        mu = bump_beltrami(2, 1.5, 2.5, 0.1)
        h = 1e-3
        fd = (cauchy_potential(mu, h, 1e-12) - cauchy_potential(mu, -h, 1e-12)) / (2 * h)
        self.assertAlmostEqual(fd, potential_derivative_at_zero(mu), delta=1e-8)

    def test_derivative_at_zero_needs_hole(self):
        self.assertRaises(DomainError, potential_derivative_at_zero, iota_pullback(laurent_beltrami(2)))


class TestNormalizedField(unittest.TestCase):

    def test_laurent_mode_on_circle(self):
        z = np.exp(1j * np.linspace(0, 2 * np.pi, 12, endpoint=False))
        np.testing.assert_allclose(z ** 3 - z, normalized_field(laurent_beltrami(2), z), atol=1e-9)

    def test_vanishes_at_zero_and_one(self):
        v = normalized_field(bump_beltrami(3, 1.5, 2.5, 0.1), np.array([0, 1]))
        np.testing.assert_allclose([0, 0], v, atol=1e-12)

    def test_cauchy_transform_at_zero(self):
        w = cauchy_transform(laurent_beltrami(2), np.array([0, 0.5]))
        np.testing.assert_allclose([1j, -0.75 / 1j], w, atol=1e-9)

    def test_rotation_field_is_trivial_on_circle(self):
        mu = rotation_beltrami(0.3, 0.6)
        w = cauchy_transform(mu, np.exp(1j * np.linspace(0, 2 * np.pi, 16, endpoint=False)))
        np.testing.assert_allclose(np.zeros(16), w, atol=1e-9)


if __name__ == '__main__':
    unittest.main()
