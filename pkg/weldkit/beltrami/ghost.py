import logging
from typing import Tuple

import numpy as np

from weldkit.beltrami.spec import BeltramiSpec
from weldkit.core.quadrature import annulus_rule, circle_nodes, integrate_annulus
from weldkit.core.schwarzian import schwarzian_from_derivs
from weldkit.core.series import PowerSeriesMap
from weldkit.errors import ConfigurationError, ConvergenceError, DomainError
from weldkit.model import BetaCoefficients, GhostSum

logger = logging.getLogger(__name__)

GRID_RADIAL = 48
GRID_ANGULAR = 192
CONTOUR_POINTS = 128


def _check_exterior(g: PowerSeriesMap, mu: BeltramiSpec):
    if g.is_interior:
        raise DomainError('expected an exterior map, got %r' % g)
    if mu.r_in < g.domain_radius:
        raise DomainError('support of %s leaves the domain of %r' % (mu.name, g))


def _support_grid(g: PowerSeriesMap, mu: BeltramiSpec):
    z, w = annulus_rule(mu.r_in, mu.r_out, GRID_RADIAL, GRID_ANGULAR)
    weights = w * mu(z)
    d = g.derivs(z, 2)
    return z, weights, d


def beta_coefficients(g: PowerSeriesMap, mu: BeltramiSpec, n_max: int) -> BetaCoefficients:
    """
    ``beta_n = -(1/pi) * integral of mu g^(-n-2) g'^2 |dz|^2`` for ``n = -1, ..., n_max`` and the fitted geometric
    decay rate of their moduli.
    """
    _check_exterior(g, mu)
    z, weights, d = _support_grid(g, mu)

    n = np.arange(-1, n_max + 1)
    base = (weights * d[1] ** 2).ravel()
    inv = (1 / d[0]).ravel()
    powers = inv[:, None] ** (n + 2)[None, :]
    values = -(base @ powers) / np.pi

    decay = _decay_rate(values)
    if decay >= 1:
        raise ConvergenceError('beta coefficients do not decay (rate %.3g)' % decay)

    return BetaCoefficients(values, decay)


def _decay_rate(values: np.ndarray) -> float:
    mags = np.abs(values)
    significant = mags > 1e-13 * max(float(np.max(mags)), 1e-300)
    if np.count_nonzero(significant) < 3:
        return 0.0
    idx = np.nonzero(significant)[0]
    slope = np.polyfit(idx, np.log(mags[idx]), 1)[0]
    return float(np.exp(slope))


def weight_check(g: PowerSeriesMap, mu: BeltramiSpec, step: float = 1e-4) -> Tuple[complex, complex, complex]:
    """
    Symmetric differences of ``beta_0`` along dilations of g and of ``beta_-1`` along translations ``g - t``.
    Returns ``(scaling derivative, translation derivative, beta_0)``.
    """
    beta = beta_coefficients(g, mu, 0).values
    b_plus = beta_coefficients(g.dilated(1 + step), mu, 0).values
    b_minus = beta_coefficients(g.dilated(1 - step), mu, 0).values
    scaling = (b_plus[1] - b_minus[1]) / (2 * step)

    t_plus = beta_coefficients(g.translated(-step), mu, 0).values
    t_minus = beta_coefficients(g.translated(step), mu, 0).values
    translation = (t_plus[0] - t_minus[0]) / (2 * step)

    return complex(scaling), complex(translation), complex(beta[1])


def contour_window(g: PowerSeriesMap, mu: BeltramiSpec) -> Tuple[float, float]:
    """
    Admissible radii for the contour: outside the curve ``g(S^1)`` and inside the image of the support of mu.
    """
    e = circle_nodes(1.0, 512)
    lo = float(np.max(np.abs(g(g.domain_radius * e, check=False))))
    hi = float(np.min(np.abs(g(mu.r_in * e))))
    return lo, hi


def _inverse_on_contour(g: PowerSeriesMap, zeta: np.ndarray, iterations: int = 50) -> np.ndarray:
    u = zeta / g.leading
    for _ in range(iterations):
        d = g.derivs(u, 1, check=False)
        step = (d[0] - zeta) / d[1]
        u = u - step
        if np.max(np.abs(step)) < 1e-15 * np.max(np.abs(u)):
            break
    else:
        raise ConvergenceError('inverse of %r did not converge on the contour' % g)
    return u


def ghost_sum_check(g: PowerSeriesMap, mu: BeltramiSpec, n_max: int = 40) -> GhostSum:
    """
    Sums the first-order variations of the beta coefficients along the vector fields ``v_n`` for
    ``n = -1, ..., n_max`` through the contour representation with the kernel of ``psi = g^-1``, and compares the sum
    with ``(13 / 6 pi) * integral of mu S(g) |dz|^2``.
    """
    _check_exterior(g, mu)
    lo, hi = contour_window(g, mu)
    if hi <= lo:
        raise ConfigurationError('empty contour window [%.4g, %.4g]' % (lo, hi))
    radius = lo * (hi / lo) ** 0.25

    zeta = circle_nodes(radius, CONTOUR_POINTS)
    u = _inverse_on_contour(g, zeta)
    dpsi_zeta = 1 / g.derivs(u, 1, check=False)[1]

    z, weights, d = _support_grid(g, mu)
    w = d[0].ravel()[:, None]
    g1 = d[1].ravel()[:, None]
    dpsi_w = 1 / g1
    ddpsi_w = -d[2].ravel()[:, None] / g1 ** 3
    diff = z.ravel()[:, None] - u[None, :]

    kernel = dpsi_zeta[None, :] ** 2 / (dpsi_w * diff) - 1 / (w - zeta[None, :])
    d_kernel = (-dpsi_zeta[None, :] ** 2 * (ddpsi_w * diff + dpsi_w ** 2) / (dpsi_w ** 2 * diff ** 2)
                + 1 / (w - zeta[None, :]) ** 2)

    n = np.arange(-1, n_max + 1)
    zeta_powers = zeta[:, None] ** (n + 2)[None, :]
    m1 = d_kernel @ zeta_powers / CONTOUR_POINTS
    m2 = kernel @ zeta_powers / CONTOUR_POINTS

    base = (weights * d[1] ** 2).ravel()[:, None]
    w_inv = 1 / w
    a = base * w_inv ** (n + 2)[None, :] * m1
    b = base * w_inv ** (n + 3)[None, :] * m2 * (n + 2)[None, :]
    terms = 2 / np.pi * np.sum(a, axis=0) - 1 / np.pi * np.sum(b, axis=0)

    lhs = complex(np.sum(terms))
    q = radius / hi
    bound = float(abs(terms[-1]) * q / (1 - q))
    logger.debug('ghost sum with contour radius %.4g in [%.4g, %.4g], last term %.3g', radius, lo, hi, abs(terms[-1]))

    def integrand(p):
        dd = g.derivs(p, 3)
        return mu(p) * schwarzian_from_derivs(dd[1], dd[2], dd[3])[1]

    rhs = integrate_annulus(integrand, mu.r_in, mu.r_out, tol=1e-12, raise_on_failure=False)
    return GhostSum(lhs, complex(rhs.value) * 13 / (6 * np.pi), bound, radius)
