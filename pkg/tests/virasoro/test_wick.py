import itertools
import unittest

from timeout_decorator import timeout_decorator

from weldkit.errors import ConfigurationError, DomainError
from weldkit.virasoro.operators import d_alpha_apply, ff_apply, heisenberg_apply
from weldkit.virasoro.ring import mode_ring
from weldkit.virasoro.wick import HALF_LOG, NEUMANN_DOT, adjoint_residual, inner_product, wick_expectation

mr = mode_ring(12)


class TestWickExpectation(unittest.TestCase):

    def test_constant(self):
        self.assertEqual(mr.one, wick_expectation(mr.one))

    def test_second_moment(self):
        self.assertEqual(mr.one / 3, wick_expectation(mr.phi(3) * mr.phi_bar(3), NEUMANN_DOT))
        self.assertEqual(mr.one / 6, wick_expectation(mr.phi(3) * mr.phi_bar(3), HALF_LOG))

    def test_fourth_moment(self):
        self.assertEqual(mr.one / 2, wick_expectation(mr.phi(2) ** 2 * mr.phi_bar(2) ** 2))

    def test_independent_modes(self):
        p = mr.phi(1) * mr.phi_bar(1) * mr.phi(2) * mr.phi_bar(2)
        self.assertEqual(mr.one / 2, wick_expectation(p))

    def test_unbalanced_monomials_vanish(self):
        self.assertEqual(mr.zero, wick_expectation(mr.phi(1) * mr.phi_bar(2)))
        self.assertEqual(mr.zero, wick_expectation(mr.phi(1) ** 2))
        self.assertEqual(mr.zero, wick_expectation(mr.phi_bar(4)))

    def test_coefficients_are_carried(self):
        p = mr.Q * mr.alpha * mr.phi(1) * mr.phi_bar(1) + mr.I * mr.phi(2)
        self.assertEqual(mr.Q * mr.alpha, wick_expectation(p))

    def test_zero_mode(self):
        self.assertRaises(DomainError, wick_expectation, mr.c * mr.phi(1) * mr.phi_bar(1))

    def test_unknown_variant(self):
        self.assertRaises(ConfigurationError, wick_expectation, mr.one, 'dirichlet')

    def test_inner_product_is_hermitian(self):
        f = mr.alpha * mr.phi(1) + mr.I * mr.phi(1) * mr.phi_bar(2) * mr.phi(1)
        g = mr.phi(1) + 2 * mr.phi(1) ** 2 * mr.phi_bar(2)
        self.assertEqual(mr.conj(inner_product(g, f)), inner_product(f, g))


class TestHeisenbergAdjoints(unittest.TestCase):

    def test_creation_is_adjoint_of_annihilation(self):
        phi = mr.phi
        polys = [mr.one, phi(1), phi(2), phi(1) ** 2, phi(1) * phi(2), phi(3), phi(1) ** 3]
        for n in range(1, 4):
            for f, g in itertools.product(polys, repeat=2):
                lhs = inner_product(heisenberg_apply(n, 0, f), g, HALF_LOG)
                rhs = inner_product(f, heisenberg_apply(-n, 0, g), HALF_LOG)
                self.assertEqual(lhs, rhs, msg='A_%d on %s, %s' % (n, f, g))


class TestFeiginFuchsAdjoints(unittest.TestCase):

    @timeout_decorator.timeout(120)
    def test_adjoint_has_reflected_weight(self):
        phi = mr.phi
        polys = [mr.one, phi(1), phi(2), phi(1) ** 2, phi(3), phi(1) * phi(2), phi(1) ** 3]
        dual = 2 * mr.Q - mr.alpha_bar
        for n in range(1, 4):
            for f, g in itertools.product(polys, repeat=2):
                lhs = inner_product(ff_apply(n, mr.alpha, f), g, HALF_LOG)
                rhs = inner_product(f, ff_apply(-n, dual, g), HALF_LOG)
                self.assertEqual(lhs, rhs, msg='L_%d on %s, %s' % (n, f, g))


class TestAdjointResidual(unittest.TestCase):

    def test_vacuum(self):
        self.assertEqual(mr.zero, adjoint_residual(1, mr.alpha, mr.one, mr.one))

    def test_first_level(self):
        self.assertEqual(mr.zero, adjoint_residual(1, mr.alpha, mr.phi(1), mr.phi(1)))
        self.assertEqual(mr.zero, adjoint_residual(1, mr.alpha, mr.phi(1), mr.one))

    def test_second_level(self):
        self.assertEqual(mr.zero, adjoint_residual(2, mr.alpha, mr.phi(2), mr.phi(1) ** 2))
        self.assertEqual(mr.zero, adjoint_residual(2, mr.alpha, mr.phi(1) ** 2, mr.one))

    @timeout_decorator.timeout(120)
    def test_vanishes_on_low_degree_monomials(self):
        generators = [mr.phi(1), mr.phi(2), mr.phi_bar(1), mr.phi_bar(2)]
        monomials = [mr.one] + generators
        monomials += [a * b for a, b in itertools.combinations_with_replacement(generators, 2)]
        for n in range(1, 4):
            for f, g in itertools.product(monomials, repeat=2):
                self.assertEqual(mr.zero, adjoint_residual(n, mr.alpha, f, g), msg='n = %d, %s, %s' % (n, f, g))

    def test_stress_term_is_needed(self):
        # without the stress pairing the relation fails already on phi_1^2
        f = mr.phi(1) ** 2
        lhs = inner_product(d_alpha_apply(2, mr.alpha_bar, f), mr.one)
        rhs = inner_product(f, d_alpha_apply(-2, 2 * mr.Q - mr.alpha, mr.one))
        self.assertEqual(-2 * mr.one, mr.reduce(lhs - rhs))

    def test_positive_index_only(self):
        self.assertRaises(DomainError, adjoint_residual, 0, mr.alpha, mr.one, mr.one)
