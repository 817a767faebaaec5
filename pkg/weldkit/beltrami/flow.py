import logging
from typing import Tuple

import numpy as np

from weldkit.beltrami.cauchy import cauchy_potential, cauchy_transform, dbar_finite_difference, normalized_field, \
    potential_derivative_at_zero
from weldkit.beltrami.spec import BeltramiSpec, FlowSpec, FIX_0_1_INF, FIX_0_DERIV0_INF, FIX_0_INF_DERIVINF, \
    NORMALIZATIONS
from weldkit.beltrami.transforms import iota_pullback, pushforward_beltrami, PUSH
from weldkit.core.series import PowerSeriesMap, series_compose_invert
from weldkit.errors import ConfigurationError, DomainError

logger = logging.getLogger(__name__)

MAX_STEP = 0.1


def _check_flow(spec: FlowSpec, t: complex):
    if spec.normalization not in NORMALIZATIONS:
        raise ConfigurationError('unknown normalization %s' % spec.normalization)

    if abs(t) * spec.mu.sup_norm > MAX_STEP:
        raise DomainError('flow step too large: |t| * sup_norm = %.3g' % (abs(t) * spec.mu.sup_norm))

    if spec.symmetric and spec.normalization != FIX_0_1_INF:
        raise ConfigurationError('symmetric flows are only defined with normalization %s' % FIX_0_1_INF)

    if spec.normalization == FIX_0_DERIV0_INF and spec.mu.r_in == 0:
        raise ConfigurationError('%s needs mu to vanish near 0' % FIX_0_DERIV0_INF)

    if spec.normalization == FIX_0_INF_DERIVINF and not spec.mu.bounded:
        raise ConfigurationError('%s needs mu to vanish near infinity' % FIX_0_INF_DERIVINF)


def first_order_flow(spec: FlowSpec, t: complex, z, tol: float = 1e-8):
    """
    First-order displacement ``Phi_t(z)`` of the quasiconformal flow with coefficient ``t mu`` (plus
    ``conj(t) iota^* mu`` for symmetric flows) under the chosen normalization.
    """
    _check_flow(spec, t)
    z = np.asarray(z, dtype=complex)
    if t == 0:
        return complex(z) if z.ndim == 0 else z.copy()

    mu = spec.mu
    if spec.normalization == FIX_0_1_INF:
        out = z + t * normalized_field(mu, z, tol)
        if spec.symmetric:
            out = out + np.conj(t) * normalized_field(iota_pullback(mu), z, tol)

    elif spec.normalization == FIX_0_DERIV0_INF:
        v0 = cauchy_potential(mu, 0, tol)
        out = z + t * (cauchy_potential(mu, z, tol) - v0 - z * potential_derivative_at_zero(mu))

    else:
        out = z + t * (cauchy_potential(mu, z, tol) - cauchy_potential(mu, 0, tol))

    return complex(out) if np.ndim(out) == 0 else out


def circle_flow(mu: BeltramiSpec, t: complex, theta, tol: float = 1e-8) -> np.ndarray:
    """
    Lift of the symmetric first-order flow on the unit circle: ``H(theta) = theta + 2 Re(t w_mu(e^{i theta}))``.
    """
    theta = np.asarray(theta, dtype=float)
    return theta + 2 * np.real(t * cauchy_transform(mu, np.exp(1j * theta), tol))


def circle_flow_field(mu: BeltramiSpec, n: int, tol: float = 1e-8) -> np.ndarray:
    """
    ``w_mu`` sampled on ``n`` equispaced points of the unit circle.
    """
    return cauchy_transform(mu, np.exp(2j * np.pi * np.arange(n) / n), tol)


def flow_composition_check(f: PowerSeriesMap, mu: BeltramiSpec, w, h: float = 1e-4) -> Tuple[np.ndarray, np.ndarray]:
    """
    Conjugating the first-order flow of mu by the conformal map f gives the vector field
    ``f'(f^-1(w)) V(f^-1(w))``; its ``d/dzbar`` must be the pushforward ``f_* mu``. Returns both at the points ``w``.
    """
    inverse = series_compose_invert(f)

    def conjugated(p):
        zeta = inverse(p, check=False)
        return f.derivs(zeta, 1, check=False)[1] * cauchy_potential(mu, zeta, 1e-11)

    w = np.asarray(w, dtype=complex)
    return dbar_finite_difference(conjugated, w, h), pushforward_beltrami(f, mu, PUSH)(w)
