import unittest

import numpy as np

from weldkit.beltrami.cauchy import cauchy_transform
from weldkit.beltrami.flow import circle_flow, circle_flow_field, first_order_flow, flow_composition_check
from weldkit.beltrami.spec import FlowSpec, FIX_0_1_INF, FIX_0_DERIV0_INF, FIX_0_INF_DERIVINF, bump_beltrami, \
    laurent_beltrami
from weldkit.beltrami.transforms import iota_pullback
from weldkit.core.series import PowerSeriesMap
from weldkit.errors import ConfigurationError, DomainError


class TestFirstOrderFlow(unittest.TestCase):

    def setUp(self):
        self.z = np.exp(1j * np.linspace(0, 2 * np.pi, 10, endpoint=False))

    def test_zero_step_is_identity(self):
        spec = FlowSpec(FIX_0_1_INF, laurent_beltrami(2))
        np.testing.assert_array_equal(self.z, first_order_flow(spec, 0, self.z))

    def test_fixes_zero_and_one(self):
        spec = FlowSpec(FIX_0_1_INF, bump_beltrami(2, 1.5, 2.5))
        out = first_order_flow(spec, 0.5, np.array([0, 1]))
        np.testing.assert_allclose([0, 1], out, atol=1e-12)

    def test_symmetric_flow_is_tangent_to_circle(self):
        mu = laurent_beltrami(2)
        t = 0.01
        disp = first_order_flow(FlowSpec(FIX_0_1_INF, mu, True), t, self.z) - self.z
        speed = disp / (1j * self.z)
        np.testing.assert_allclose(np.zeros(10), speed.imag, atol=1e-10)
        np.testing.assert_allclose(2 * np.real(t * cauchy_transform(mu, self.z)), speed.real, atol=1e-10)

    def test_fix_derivative_at_zero(self):
        spec = FlowSpec(FIX_0_DERIV0_INF, bump_beltrami(2, 1.5, 2.5))
        h = 1e-3
        out = first_order_flow(spec, 0.3, np.array([0, h, -h, 3.0]))
        self.assertAlmostEqual(0, out[0], delta=1e-12)
        self.assertAlmostEqual(1, (out[1] - out[2]) / (2 * h), delta=1e-8)
        self.assertGreater(abs(out[3] - 3.0), 1e-4)

    def test_fix_derivative_at_infinity(self):
        spec = FlowSpec(FIX_0_INF_DERIVINF, bump_beltrami(3, 0.5, 0.8))
        out = first_order_flow(spec, 0.3, np.array([0, 50.0]))
        self.assertAlmostEqual(0, out[0], delta=1e-12)
        self.assertAlmostEqual(50, out[1], delta=1e-6)

    def test_invalid_flows(self):
        mu = laurent_beltrami(2)
        self.assertRaises(ConfigurationError, first_order_flow, FlowSpec('fix_nothing', mu), 0.01, 0.5)
        self.assertRaises(ConfigurationError, first_order_flow, FlowSpec(FIX_0_INF_DERIVINF, mu), 0.01, 0.5)
        self.assertRaises(ConfigurationError, first_order_flow, FlowSpec(FIX_0_INF_DERIVINF, mu, True), 0.01, 0.5)
        self.assertRaises(ConfigurationError, first_order_flow, FlowSpec(FIX_0_DERIV0_INF, iota_pullback(mu)),
                          0.01, 0.5)
        self.assertRaises(DomainError, first_order_flow, FlowSpec(FIX_0_1_INF, mu), 1.0, 0.5)


class TestCircleFlow(unittest.TestCase):

    def test_laurent_mode_is_a_sine_wave(self):
        theta = np.linspace(0, 2 * np.pi, 20, endpoint=False)
        np.testing.assert_allclose(theta + 0.02 * np.sin(3 * theta), circle_flow(laurent_beltrami(3), 0.01, theta),
                                   atol=1e-10)

    def test_field_samples(self):
        w = circle_flow_field(laurent_beltrami(2), 8)
        z = np.exp(2j * np.pi * np.arange(8) / 8)
        np.testing.assert_allclose((z ** 2 - 1) / 1j, w, atol=1e-9)


class TestFlowComposition(unittest.TestCase):

    def test_conjugated_flow_has_pushed_coefficient(self):
        f = PowerSeriesMap.normalized([0.1])
        mu = bump_beltrami(2, 0.3, 0.6)
        w = f(np.array([0.45, 0.4j, -0.5 + 0.05j]))
        fd, pushed = flow_composition_check(f, mu, w, h=1e-5)
        np.testing.assert_allclose(pushed, fd, atol=1e-5)


if __name__ == '__main__':
    unittest.main()
