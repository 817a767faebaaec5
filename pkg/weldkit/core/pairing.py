import logging
from typing import Callable, Dict

import numpy as np

from weldkit.core.quadrature import circle_nodes, integrate_annulus
from weldkit.errors import DomainError, EvaluationError
from weldkit.model import QuadratureResult

logger = logging.getLogger(__name__)


class QuadDiffFn:
    """
    A holomorphic quadratic differential ``q(z) dz^2`` on the annulus ``r_in < |z| < r_out``.
    """

    def __init__(self, evaluator: Callable, r_in: float = 0.0, r_out: float = np.inf, name: str = 'q'):
        self.evaluator = evaluator
        self.r_in = r_in
        self.r_out = r_out
        self.name = name

    def __call__(self, z):
        return self.evaluator(np.asarray(z, dtype=complex))

    @staticmethod
    def monomial(k: int, c: complex = 1.0) -> 'QuadDiffFn':
        return QuadDiffFn(lambda z: c * z ** k, 0.0, np.inf, '%s*z^%d' % (c, k))

    def holomorphy_defect(self, z, h: float = 1e-5) -> float:
        """
        Largest ``|d/dzbar q| / max(1, |d/dz q|)`` over the sample points, by central differences.
        """
        z = np.asarray(z, dtype=complex)
        dx = (self(z + h) - self(z - h)) / (2 * h)
        dy = (self(z + 1j * h) - self(z - 1j * h)) / (2 * h)
        dbar = (dx + 1j * dy) / 2
        d = (dx - 1j * dy) / 2
        return float(np.max(np.abs(dbar) / np.maximum(1.0, np.abs(d))))


class VectorFieldSeries:
    """
    A Laurent polynomial vector field ``v(z) d/dz`` stored as ``{exponent: coefficient}``.
    """
    coeffs: Dict[int, complex]

    def __init__(self, coeffs: Dict[int, complex]):
        self.coeffs = {int(k): complex(c) for k, c in coeffs.items() if c != 0}

    @staticmethod
    def basis(n: int) -> 'VectorFieldSeries':
        """
        ``v_n = -z^(n+1) d/dz``.
        """
        return VectorFieldSeries({n + 1: -1})

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        out = np.zeros(z.shape, dtype=complex)
        for k, c in self.coeffs.items():
            out = out + c * z ** k
        return out

    def __add__(self, other: 'VectorFieldSeries') -> 'VectorFieldSeries':
        coeffs = dict(self.coeffs)
        for k, c in other.coeffs.items():
            coeffs[k] = coeffs.get(k, 0) + c
        return VectorFieldSeries(coeffs)

    def __repr__(self):
        return 'VectorFieldSeries(%s)' % self.coeffs


def pair_q_beltrami(q: QuadDiffFn, mu, tol: float = 1e-10) -> QuadratureResult:
    """
    ``(q, mu) = (1/pi) * integral of q mu |dz|^2`` over the support of mu, with an error estimate.
    """
    if mu.sup_norm == 0:
        return QuadratureResult(0j, 0.0)

    if mu.r_in < q.r_in or mu.r_out > q.r_out:
        raise DomainError('support of %s leaves the domain of %s' % (mu.name, q.name))

    result = integrate_annulus(lambda z: q(z) * mu(z), mu.r_in, mu.r_out, tol=tol)
    return QuadratureResult(complex(result.value) / np.pi, result.error / np.pi)


def pair_q_vector(q: QuadDiffFn, v: VectorFieldSeries, radius: float, n: int = 256) -> complex:
    """
    ``(q, v) = (1/2 pi i) * contour integral of q v dz`` over ``|z| = radius``, by the trapezoid rule.
    """
    z = circle_nodes(radius, n)
    values = q(z) * v(z) * z
    if not np.all(np.isfinite(values)):
        raise EvaluationError('non-finite integrand on the circle of radius %s' % radius)
    return complex(np.mean(values))
