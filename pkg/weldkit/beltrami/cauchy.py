import logging
from typing import Tuple

import numpy as np

from weldkit.beltrami.spec import BeltramiSpec
from weldkit.core.quadrature import radial_rule
from weldkit.errors import DomainError

logger = logging.getLogger(__name__)

DEFAULT_RADIAL = 24
DEFAULT_ANGULAR = 128
MAX_LEVEL = 3


def _angular_modes(mu: BeltramiSpec, rho: np.ndarray, n_angular: int) -> np.ndarray:
    theta = 2 * np.pi * np.arange(n_angular) / n_angular
    samples = mu(rho[:, None] * np.exp(1j * theta)[None, :])
    return np.fft.fft(samples, axis=1) / n_angular


def _potential_at_radius(mu: BeltramiSpec, z: np.ndarray, radius: float, n_radial: int, n_angular: int):
    """
    ``V(z) = -(1/pi) * integral of mu(zeta) / (zeta - z) |dzeta|^2`` for points sharing the modulus ``radius``.

    The angular Fourier modes of mu turn the area integral into radial integrals of the modes against the Laurent
    expansion of the Cauchy kernel on either side of ``|zeta| = radius``.
    """
    rho, w = radial_rule(mu.r_in, mu.r_out, n_radial, breaks=[radius])
    modes = _angular_modes(mu, rho, n_angular)
    k_max = n_angular // 2 - 2
    scale = w / rho

    out = np.zeros(z.shape, dtype=complex)
    for i in np.nonzero(rho > radius)[0]:
        out += scale[i] * np.polynomial.polynomial.polyval(z / rho[i], modes[i, 1:k_max + 2])

    if radius > 0:
        inner = modes[:, (-np.arange(k_max + 1)) % n_angular]
        for i in np.nonzero(rho < radius)[0]:
            u = rho[i] / z
            out -= scale[i] * u * np.polynomial.polynomial.polyval(u, inner[i])

    return -2 * out


def cauchy_potential(mu: BeltramiSpec, z, tol: float = 1e-8, n_radial: int = DEFAULT_RADIAL,
                     n_angular: int = DEFAULT_ANGULAR, return_error: bool = False):
    """
    The Cauchy transform ``V`` of mu, the solution of ``dV/dzbar = mu`` vanishing at infinity when mu has compact
    support. Resolutions are doubled until two successive values agree to ``tol``.
    """
    z = np.asarray(z, dtype=complex)
    flat = z.ravel()
    if mu.sup_norm == 0:
        value = np.zeros(z.shape, dtype=complex)
        return (value, 0.0) if return_error else value

    radii = np.abs(flat)
    keys = np.round(radii, 12)

    previous = None
    error = np.inf
    for level in range(MAX_LEVEL + 1):
        value = np.empty(flat.shape, dtype=complex)
        for key in np.unique(keys):
            idx = keys == key
            value[idx] = _potential_at_radius(mu, flat[idx], float(radii[idx][0]), n_radial, n_angular)

        if previous is not None:
            error = float(np.max(np.abs(value - previous)))
            if error <= tol * max(1.0, float(np.max(np.abs(value)))):
                break
        previous = value
        n_radial, n_angular = 2 * n_radial, 2 * n_angular
    else:
        logger.warning('cauchy transform of %s reached error %.3g above %.1g', mu.name, error, tol)

    value = value.reshape(z.shape)
    if value.ndim == 0:
        value = complex(value)
    return (value, error) if return_error else value


def potential_derivative_at_zero(mu: BeltramiSpec, n_radial: int = 2 * DEFAULT_RADIAL,
                                 n_angular: int = 2 * DEFAULT_ANGULAR) -> complex:
    """
    ``V'(0) = -(1/pi) * integral of mu(zeta) / zeta^2 |dzeta|^2``.
    """
    if mu.r_in == 0:
        raise DomainError('V is not holomorphic at 0 when 0 lies in the support of %s' % mu.name)
    rho, w = radial_rule(mu.r_in, mu.r_out, n_radial)
    modes = _angular_modes(mu, rho, n_angular)
    return complex(-2 * np.sum(w / rho ** 2 * modes[:, 2]))


def normalized_field(mu: BeltramiSpec, z, tol: float = 1e-8):
    """
    ``iz w_mu(z) = V(z) + (z - 1) V(0) - z V(1)``: the Cauchy transform normalised to vanish at 0 and 1 and to be
    ``o(|z|^2)`` at infinity.
    """
    z = np.asarray(z, dtype=complex)
    v0, v1 = cauchy_potential(mu, np.array([0, 1], dtype=complex), tol)
    out = cauchy_potential(mu, z, tol) + (z - 1) * v0 - z * v1
    return complex(out) if np.ndim(out) == 0 else out


def cauchy_transform(mu: BeltramiSpec, z, tol: float = 1e-8):
    """
    ``w_mu(z)`` such that ``iz w_mu(z)`` is the normalised Cauchy transform; at ``z = 0`` the removable value
    ``(V'(0) + V(0) - V(1)) / i`` is used, which needs 0 outside the support.
    """
    z = np.asarray(z, dtype=complex)
    v = normalized_field(mu, z, tol)
    with np.errstate(divide='ignore', invalid='ignore'):
        w = np.asarray(v / (1j * z))

    at_zero = z == 0
    if np.any(at_zero):
        v0, v1 = cauchy_potential(mu, np.array([0, 1], dtype=complex), tol)
        w[at_zero] = (potential_derivative_at_zero(mu) + v0 - v1) / 1j

    return complex(w) if w.ndim == 0 else w


def dbar_finite_difference(func, z, h: float = 1e-4) -> np.ndarray:
    z = np.asarray(z, dtype=complex)
    dx = (func(z + h) - func(z - h)) / (2 * h)
    dy = (func(z + 1j * h) - func(z - 1j * h)) / (2 * h)
    return (dx + 1j * dy) / 2


def dbar_residual(mu: BeltramiSpec, z, h: float = 1e-4) -> Tuple[np.ndarray, np.ndarray]:
    """
    Finite-difference ``d/dzbar`` of the normalised field against mu at interior support points.
    """
    z = np.asarray(z, dtype=complex)
    v0, v1 = cauchy_potential(mu, np.array([0, 1], dtype=complex), 1e-10)

    def field(p):
        return cauchy_potential(mu, p, 1e-10) + (p - 1) * v0 - p * v1

    return dbar_finite_difference(field, z, h), mu(z)
