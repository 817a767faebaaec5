import unittest

import numpy as np

from weldkit.beltrami.spec import laurent_beltrami
from weldkit.beltrami.transforms import iota_pullback
from weldkit.core.constants import constants_from_kappa
from weldkit.core.schwarzian import schwarzian
from weldkit.core.series import PowerSeriesMap
from weldkit.errors import DomainError
from weldkit.fields.action import TrigLift, energy_variation, field_action, flow_lift, liouville_variation
from weldkit.fields.circle import FourierField, INTERIOR, NEUMANN_DOT, sample_field, stress_tensors


def sine_lift(n: int = 256) -> TrigLift:
    theta = 2 * np.pi * np.arange(n) / n
    return TrigLift.from_samples(0.1 * np.sin(theta) + 0.05 * np.cos(2 * theta))


class TestTrigLift(unittest.TestCase):

    def test_inverse(self):
        lift = sine_lift()
        x = np.linspace(0, 2 * np.pi, 7)
        np.testing.assert_allclose(x, lift.inverse(lift(x)), atol=1e-13)

    def test_derivative(self):
        lift = sine_lift()
        x = np.array([0.3, 1.7])
        np.testing.assert_allclose(1 + 0.1 * np.cos(x) - 0.1 * np.sin(2 * x), lift.derivative(x), atol=1e-13)

    def test_not_increasing(self):
        theta = 2 * np.pi * np.arange(64) / 64
        self.assertRaises(DomainError, TrigLift.from_samples(2 * np.sin(theta)).check_increasing)

    def test_flow_lift(self):
        theta = np.array([0.2, 1.0, 2.5])
        lift = flow_lift(laurent_beltrami(3), 0.01)
        np.testing.assert_allclose(theta + 0.02 * np.sin(3 * theta), lift(theta), atol=1e-10)


class TestFieldAction(unittest.TestCase):

    def setUp(self):
        self.field = sample_field(NEUMANN_DOT, 6, 31)
        self.Q = constants_from_kappa(2).Q

    def test_identity_lift(self):
        moved = field_action(self.field, TrigLift.identity(), self.Q)
        np.testing.assert_allclose(self.field.modes, moved.modes[:6], atol=1e-13)
        np.testing.assert_allclose(np.zeros(len(moved.modes) - 6), moved.modes[6:], atol=1e-13)

    def test_chain_rule(self):
        f = PowerSeriesMap(np.concatenate([[0, 0.8, 0.08], np.zeros(30)]))
        moved = field_action(self.field, f, self.Q)
        z = np.array([0.3 + 0.2j, -0.5j])
        d = f.derivs(z, 1)
        t_moved, _ = stress_tensors(moved, z, INTERIOR, self.Q)
        t_field, _ = stress_tensors(self.field, d[0], INTERIOR, self.Q)
        expected = d[1] ** 2 * t_field + self.Q ** 2 / 2 * schwarzian(f, z)[1]
        np.testing.assert_allclose(expected, t_moved, atol=1e-8)

    def test_mobius_chain_rule(self):
        f = PowerSeriesMap.mobius(0.3).dilated(0.9)
        moved = field_action(self.field, f, self.Q)
        z = 0.2 - 0.4j
        d = f.derivs(z, 1)
        t_moved, _ = stress_tensors(moved, z, INTERIOR, self.Q)
        t_field, _ = stress_tensors(self.field, d[0], INTERIOR, self.Q)
        self.assertAlmostEqual(d[1] ** 2 * t_field, t_moved, delta=1e-8)

    def test_map_must_stay_inside(self):
        self.assertRaises(DomainError, field_action, self.field, PowerSeriesMap.identity(), self.Q)
        self.assertRaises(DomainError, field_action, self.field, PowerSeriesMap.identity(), self.Q, inverse=True)


class TestLiouvilleVariation(unittest.TestCase):

    def setUp(self):
        self.mu = iota_pullback(laurent_beltrami(2))

    def test_single_mode(self):
        phi1 = 0.3 + 0.2j
        field = FourierField(NEUMANN_DOT, 0.0, np.array([phi1]))
        t = 1e-4
        fd, prediction = liouville_variation(field, self.mu, t, 0.0)
        self.assertAlmostEqual(4 * t * (phi1 ** 2).real, prediction, delta=1e-12)
        self.assertAlmostEqual(prediction, fd, delta=1e-3 * abs(prediction))

    def test_random_field_with_background_charge(self):
        Q = constants_from_kappa(8 / 3).Q
        field = sample_field(NEUMANN_DOT, 4, 8, zero_mode=0.2)
        fd, prediction = liouville_variation(field, self.mu, 1e-4, Q)
        self.assertAlmostEqual(prediction, fd, delta=1e-3 * abs(prediction) + 1e-10)

    def test_support_must_be_inside(self):
        field = sample_field(NEUMANN_DOT, 4, 8)
        self.assertRaises(DomainError, liouville_variation, field, laurent_beltrami(2), 1e-4, 1.0)


class TestEnergyVariation(unittest.TestCase):

    def test_identity(self):
        lhs, rhs = energy_variation(sample_field(NEUMANN_DOT, 6, 4), TrigLift.identity())
        self.assertAlmostEqual(0, lhs, delta=1e-12)
        self.assertAlmostEqual(0, rhs, delta=1e-12)

    def test_double_integral(self):
        lhs, rhs = energy_variation(sample_field(NEUMANN_DOT, 6, 4), sine_lift())
        self.assertGreater(abs(lhs), 1e-4)
        self.assertAlmostEqual(lhs, rhs, delta=1e-8 * max(1.0, abs(lhs)))


if __name__ == '__main__':
    unittest.main()
