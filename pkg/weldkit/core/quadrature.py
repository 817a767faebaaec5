import logging
from typing import Callable, Sequence, Tuple

import numpy as np

from weldkit.errors import AccuracyError, DomainError
from weldkit.model import QuadratureResult

logger = logging.getLogger(__name__)

DEFAULT_RADIAL = 16
DEFAULT_ANGULAR = 64
MAX_LEVEL = 5


def radial_rule(r_in: float, r_out: float, n: int, breaks: Sequence[float] = ()) -> Tuple[np.ndarray, np.ndarray]:
    """
    Gauss-Legendre nodes and weights for ``int rho d rho`` over ``[r_in, r_out]``, panelled at ``breaks``. An infinite
    outer radius is handled by the substitution ``rho = r_in / s``.
    """
    if not 0 <= r_in < r_out:
        raise DomainError('invalid annulus [%s, %s]' % (r_in, r_out))

    x, w = np.polynomial.legendre.leggauss(n)

    if np.isinf(r_out):
        if r_in <= 0:
            raise DomainError('unbounded annulus needs a positive inner radius')
        edges = [1.0] + sorted({r_in / b for b in breaks if r_in < b < np.inf}, reverse=True) + [0.0]
        nodes, weights = [], []
        for a, b in zip(edges[1:], edges[:-1]):
            s = (b - a) / 2 * x + (b + a) / 2
            nodes.append(r_in / s)
            weights.append((b - a) / 2 * w * r_in ** 2 / s ** 3)
        return np.concatenate(nodes), np.concatenate(weights)

    edges = [r_in] + sorted({b for b in breaks if r_in < b < r_out}) + [r_out]
    nodes, weights = [], []
    for a, b in zip(edges[:-1], edges[1:]):
        rho = (b - a) / 2 * x + (b + a) / 2
        nodes.append(rho)
        weights.append((b - a) / 2 * w * rho)
    return np.concatenate(nodes), np.concatenate(weights)


def annulus_rule(r_in: float, r_out: float, n_radial: int = DEFAULT_RADIAL, n_angular: int = DEFAULT_ANGULAR,
                 breaks: Sequence[float] = ()) -> Tuple[np.ndarray, np.ndarray]:
    """
    Polar tensor rule for area integrals over ``r_in <= |z| <= r_out``: returns nodes ``z`` and weights of shape
    ``(radial nodes, n_angular)``.
    """
    rho, w_rho = radial_rule(r_in, r_out, n_radial, breaks)
    theta = (np.arange(n_angular) + 0.5) * 2 * np.pi / n_angular
    z = rho[:, None] * np.exp(1j * theta)[None, :]
    w = w_rho[:, None] * np.full(n_angular, 2 * np.pi / n_angular)[None, :]
    return z, w


def apply_rule(func: Callable, z: np.ndarray, w: np.ndarray):
    values = np.asarray(func(z))
    if values.shape == z.shape:
        return np.sum(values * w)
    return np.tensordot(w, values, axes=([0, 1], [0, 1]))


def integrate_annulus(func: Callable, r_in: float, r_out: float, tol: float = 1e-10,
                      n_radial: int = DEFAULT_RADIAL, n_angular: int = DEFAULT_ANGULAR,
                      breaks: Sequence[float] = (), max_level: int = MAX_LEVEL,
                      raise_on_failure: bool = True) -> QuadratureResult:
    """
    Integrates ``func(z) |dz|^2`` over an annulus. The rule is refined by doubling both resolutions until two
    successive values agree to ``tol`` (absolute, or relative to the value); the difference is the error estimate.

    ``func`` is called with a 2D array of nodes and may return extra trailing axes for vector-valued integrands.
    """
    previous = apply_rule(func, *annulus_rule(r_in, r_out, n_radial, n_angular, breaks))
    error = np.inf

    for level in range(1, max_level + 1):
        n_radial, n_angular = 2 * n_radial, 2 * n_angular
        value = apply_rule(func, *annulus_rule(r_in, r_out, n_radial, n_angular, breaks))
        error = float(np.max(np.abs(value - previous)))
        scale = float(np.max(np.abs(value))) if np.size(value) else 0.0
        logger.debug('annulus quadrature level %d: error %.3g (radial %d, angular %d)', level, error, n_radial,
                     n_angular)

        if error <= tol * max(1.0, scale):
            return QuadratureResult(value, error)
        previous = value

    if raise_on_failure:
        raise AccuracyError('annulus quadrature did not reach %.1g (error %.3g)' % (tol, error), previous, error)

    logger.warning('annulus quadrature did not reach %.1g (error %.3g)', tol, error)
    return QuadratureResult(previous, error)


def circle_nodes(radius: float, n: int) -> np.ndarray:
    return radius * np.exp(2j * np.pi * np.arange(n) / n)
