import logging
from typing import Tuple

import numpy as np

from weldkit.beltrami.spec import BeltramiSpec
from weldkit.core.pairing import QuadDiffFn, pair_q_beltrami
from weldkit.core.schwarzian import schwarzian_from_derivs
from weldkit.core.series import PowerSeriesMap
from weldkit.errors import ConfigurationError, DomainError
from weldkit.model import Constants
from weldkit.welding.area import TAIL_TOLERANCE, exterior_area_terms, interior_area_terms, tail_fraction
from weldkit.welding.zipper import WeldingTriple

logger = logging.getLogger(__name__)

RIGHT = 'right'
LEFT = 'left'

SIDES = (RIGHT, LEFT)


def _area_sum(terms: np.ndarray, side: str) -> float:
    total = float(np.sum(terms))
    tail = tail_fraction(terms)
    if tail > TAIL_TOLERANCE:
        logger.warning('%s pre-Schwarzian area integral does not converge: partial sum %.6g, tail fraction %.3g',
                       side, total, tail)
        return np.inf
    return total


def interior_area_integral(f: PowerSeriesMap) -> float:
    """
    ``integral over the disc of |f''/f'|^2`` as ``pi sum_k |alpha_k|^2 / (k + 1)``.
    """
    return _area_sum(interior_area_terms(f), 'interior')


def exterior_area_integral(g: PowerSeriesMap) -> float:
    """
    ``integral outside the disc of |g''/g'|^2`` as ``pi sum_{k >= 2} |beta_k|^2 / (k - 1)`` for the coefficients of
    ``z^-k``.
    """
    return _area_sum(exterior_area_terms(g), 'exterior')


def welding_energies(w: WeldingTriple) -> Tuple[float, float]:
    """
    ``K = log|g'(inf) / f'(0)|`` and the universal Liouville action
    ``S1 = int |f''/f'|^2 + int |g''/g'|^2 - 4 pi K``, the area integrals summed in mode space.
    Returns infinity for S1 when the mode sums do not converge.
    """
    k = float(np.log(np.abs(w.g.leading / w.f.leading)))
    s1 = interior_area_integral(w.f) + exterior_area_integral(w.g) - 4 * np.pi * k
    return k, float(s1)


def omega(w2: WeldingTriple, w1: WeldingTriple, constants: Constants) -> float:
    k2, s2 = welding_energies(w2)
    k1, s1 = welding_energies(w1)
    return constants.c_L / (24 * np.pi) * (s2 - s1) + 2 * (k2 - k1)


def _log_derivative_defect(m: PowerSeriesMap):
    """
    ``m'/m - 1/z``, computed from the series of ``z m' - m`` to avoid cancellation at the fixed point.
    """
    c = m.coeffs
    k = np.arange(len(c))
    if m.is_interior:
        shifted = (k[1:] - 1) * c[1:]

        def defect(z):
            return np.polynomial.polynomial.polyval(z, shifted) / m(z, check=False)
    else:
        weights = -k * c

        def defect(z):
            return np.polynomial.polynomial.polyval(1 / z, weights) / m(z, check=False)

    return defect


def pairing_differentials(m: PowerSeriesMap) -> Tuple[QuadDiffFn, QuadDiffFn]:
    """
    The Schwarzian ``S m`` and ``m'^2/m^2 - 1/z^2`` as quadratic differentials on the side of the circle of m.
    """
    defect = _log_derivative_defect(m)

    def schwarzian(z):
        d = m.derivs(z, 3, check=False)
        return schwarzian_from_derivs(d[1], d[2], d[3])[1]

    def log_square(z):
        r = defect(z)
        return r * (r + 2 / z)

    r_in, r_out = (0.0, 1.0) if m.is_interior else (1.0, np.inf)
    return QuadDiffFn(schwarzian, r_in, r_out, 'S'), QuadDiffFn(log_square, r_in, r_out, 'dlog^2')


def welding_pairings(w: WeldingTriple, mu: BeltramiSpec, side: str) -> Tuple[complex, complex]:
    """
    ``(-(S f, mu), -(f'^2/f^2 - 1/z^2, mu))`` for mu inside the disc (``right``), or the same with g for mu outside
    it (``left``).
    """
    if side == RIGHT:
        if mu.r_out > 1:
            raise DomainError('right pairings need %s supported in the disc' % mu.name)
        m = w.f
    elif side == LEFT:
        if mu.r_in < 1:
            raise DomainError('left pairings need %s supported outside the disc' % mu.name)
        m = w.g
    else:
        raise ConfigurationError('unknown side %s' % side)

    schwarzian, log_square = pairing_differentials(m)
    theta = pair_q_beltrami(schwarzian, mu).value
    varpi = pair_q_beltrami(log_square, mu).value
    return -complex(theta), -complex(varpi)
