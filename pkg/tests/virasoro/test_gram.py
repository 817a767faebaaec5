import itertools
import unittest

import sympy as sp
from timeout_decorator import timeout_decorator

from weldkit.errors import TruncationError
from weldkit.model import Partition
from weldkit.virasoro.gram import (CENTRAL, VERMA_RING, WEIGHT, basis_state_gram, gram_determinant, gram_matrix,
                                   partitions, verma_pairing)
from weldkit.virasoro.ring import mode_ring

mr = mode_ring(12)


class TestPartitions(unittest.TestCase):

    def test_counts(self):
        self.assertEqual([1, 1, 2, 3, 5, 7, 11], [len(list(partitions(n))) for n in range(7)])

    def test_order_and_weight(self):
        self.assertEqual([Partition.of(3), Partition.of(2, 1), Partition.of(1, 1, 1)], list(partitions(3)))
        for p in partitions(5):
            self.assertEqual(5, p.weight)

    def test_of(self):
        self.assertEqual((2, 1), Partition.of(1, 2, 1).multiplicities)
        self.assertEqual(0, Partition.of().weight)
        self.assertRaises(ValueError, Partition.of, 0)


class TestVermaPairing(unittest.TestCase):

    def test_level_one(self):
        self.assertEqual(2 * WEIGHT, verma_pairing(Partition.of(1), Partition.of(1)))

    def test_level_two(self):
        h, c = WEIGHT, CENTRAL
        self.assertEqual(8 * h ** 2 + 4 * h, verma_pairing(Partition.of(1, 1), Partition.of(1, 1)))
        self.assertEqual(6 * h, verma_pairing(Partition.of(2), Partition.of(1, 1)))
        self.assertEqual(6 * h, verma_pairing(Partition.of(1, 1), Partition.of(2)))
        self.assertEqual(4 * h + c / 2, verma_pairing(Partition.of(2), Partition.of(2)))

    def test_different_levels(self):
        self.assertEqual(VERMA_RING.zero, verma_pairing(Partition.of(2), Partition.of(1)))

    def test_symmetric(self):
        for level in range(1, 5):
            basis = list(partitions(level))
            for k, k2 in itertools.product(basis, repeat=2):
                self.assertEqual(verma_pairing(k, k2), verma_pairing(k2, k))


class TestBasisStateGram(unittest.TestCase):

    def test_vacuum(self):
        state, gram = basis_state_gram(mr.alpha, Partition(), Partition())
        self.assertEqual(mr.one, state)
        self.assertEqual(mr.one, gram)

    def test_first_level(self):
        state, gram = basis_state_gram(mr.alpha, Partition.of(1), Partition.of(1))
        self.assertEqual(-mr.alpha * mr.phi(1), state)
        self.assertEqual(mr.reduce(2 * mr.delta(mr.alpha)), gram)

    def test_level_mismatch_is_orthogonal(self):
        _, gram = basis_state_gram(mr.alpha, Partition.of(2), Partition.of(1))
        self.assertEqual(mr.zero, gram)

    @timeout_decorator.timeout(300)
    def test_commutators_agree_with_wick(self):
        for level in range(1, 5):
            basis = list(partitions(level))
            for k, k2 in itertools.product(basis, repeat=2):
                state, gram = basis_state_gram(mr.alpha, k, k2)
                self.assertTrue(mr.is_holomorphic(state))

    def test_numeric_weight(self):
        _, gram = basis_state_gram(sp.Rational(1, 3), Partition.of(2), Partition.of(2))
        expected = mr.reduce(4 * mr.delta(sp.Rational(1, 3)) + mr.central_charge() / 2)
        self.assertEqual(expected, gram)

    def test_level_bound(self):
        self.assertRaises(TruncationError, basis_state_gram, mr.alpha, Partition.of(7), Partition.of(7))
        self.assertRaises(TruncationError, basis_state_gram, mr.alpha, Partition.of(3), Partition.of(3), 2)


class TestGramMatrix(unittest.TestCase):

    def test_level_zero(self):
        self.assertEqual(sp.Matrix([[1]]), gram_matrix(level=0))

    def test_level_two_entries(self):
        alpha, Q = sp.symbols('alpha Q')
        h = alpha / 2 * (Q - alpha / 2)
        c = 1 + 6 * Q ** 2
        expected = sp.Matrix([[4 * h + c / 2, 6 * h], [6 * h, 8 * h ** 2 + 4 * h]])
        self.assertEqual(sp.zeros(2, 2), (gram_matrix(level=2) - expected).applyfunc(sp.expand))

    def test_determinant_vanishes_on_kac_table(self):
        gamma = sp.Symbol('gamma', positive=True)
        Q = gamma / 2 + 2 / gamma
        for alpha in (0, 2 * Q, -gamma / 2, -2 / gamma, 2 * Q + gamma / 2, 2 * Q + 2 / gamma):
            self.assertEqual(0, sp.simplify(gram_determinant(alpha, 2, Q)), msg='alpha = %s' % alpha)

    def test_determinant_off_the_table(self):
        # gamma = 2: Q = 2, c_L = 25 and det = 2h (4h + 5)^2
        h = sp.Rational(11, 36)
        self.assertEqual(2 * h * (4 * h + 5) ** 2, gram_determinant(sp.Rational(1, 3), 2, 2))

    def test_level_three_determinant_has_level_two_roots(self):
        gamma = sp.Symbol('gamma', positive=True)
        Q = gamma / 2 + 2 / gamma
        self.assertEqual(0, sp.simplify(gram_determinant(-gamma / 2, 3, Q)))

    def test_level_out_of_range(self):
        self.assertRaises(TruncationError, gram_matrix, None, 7)
