import unittest

import numpy as np

from weldkit.beltrami.spec import BeltramiSpec, laurent_beltrami, zero_beltrami
from weldkit.core.pairing import QuadDiffFn, VectorFieldSeries, pair_q_beltrami, pair_q_vector
from weldkit.errors import DomainError, EvaluationError


class TestPairQBeltrami(unittest.TestCase):

    def test_zero_beltrami(self):
        self.assertEqual(0, pair_q_beltrami(QuadDiffFn.monomial(2), zero_beltrami()).value)

    def test_laurent_mode_matches_vector_pairing(self):
        q = QuadDiffFn.monomial(-4)
        area = pair_q_beltrami(q, laurent_beltrami(2))
        contour = pair_q_vector(q, VectorFieldSeries.basis(2), 1.5)
        self.assertAlmostEqual(-1, area.value, delta=1e-10)
        self.assertAlmostEqual(contour, area.value, delta=1e-10)
        self.assertLess(area.error, 1e-9)

    def test_polar_closed_form(self):
        mu = BeltramiSpec(lambda z: np.conj(z) ** 2 / 8, 1, 2, 0.5)
        result = pair_q_beltrami(QuadDiffFn.monomial(2), mu)
        self.assertAlmostEqual(21 / 8, result.value, delta=1e-10)

    def test_support_outside_domain(self):
        q = QuadDiffFn(lambda z: z ** -4, 3, np.inf)
        self.assertRaises(DomainError, pair_q_beltrami, q, laurent_beltrami(2))


class TestPairQVector(unittest.TestCase):

    def test_zero(self):
        q = QuadDiffFn(lambda z: np.zeros(z.shape))
        self.assertEqual(0, pair_q_vector(q, VectorFieldSeries.basis(0), 1))

    def test_constant_differential(self):
        phi1 = 0.3 + 0.2j
        q = QuadDiffFn(lambda z: np.full(z.shape, -phi1 ** 2))
        self.assertAlmostEqual(phi1 ** 2, pair_q_vector(q, VectorFieldSeries.basis(-2), 1), delta=1e-14)

    def test_residue(self):
        self.assertAlmostEqual(-1, pair_q_vector(QuadDiffFn.monomial(-2), VectorFieldSeries.basis(0), 1),
                               delta=1e-14)

    def test_nan_on_circle(self):
        q = QuadDiffFn(lambda z: 1 / (z - 1))
        self.assertRaises(EvaluationError, pair_q_vector, q, VectorFieldSeries.basis(0), 1)


class TestQuadDiffFn(unittest.TestCase):

    def test_holomorphy_defect(self):
        z = np.array([0.5, 1 + 1j, -2j])
        self.assertLess(QuadDiffFn.monomial(-4).holomorphy_defect(z), 1e-6)
        self.assertGreater(QuadDiffFn(np.conj).holomorphy_defect(z), 0.5)


if __name__ == '__main__':
    unittest.main()
