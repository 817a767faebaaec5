import logging

import numpy as np

from weldkit.beltrami.spec import BeltramiSpec
from weldkit.core.series import PowerSeriesMap, series_compose_invert
from weldkit.errors import DomainError

logger = logging.getLogger(__name__)

PUSH = 'push'
PULL = 'pull'


def iota_pullback(mu: BeltramiSpec) -> BeltramiSpec:
    """
    Pullback by the inversion ``z -> 1/conj(z)``: ``(z/conj(z))^2 * conj(mu(1/conj(z)))``.
    """

    def evaluator(z):
        return (z / np.conj(z)) ** 2 * np.conj(mu(1 / np.conj(z)))

    r_in = 0.0 if np.isinf(mu.r_out) else 1 / mu.r_out
    r_out = np.inf if mu.r_in == 0 else 1 / mu.r_in
    return BeltramiSpec(evaluator, r_in, r_out, mu.sup_norm, 'iota*%s' % mu.name)


def _circle_extremes(f, radius: float, n: int = 512):
    if radius == 0:
        return 0.0, 0.0
    if np.isinf(radius):
        return np.inf, np.inf
    z = radius * np.exp(2j * np.pi * np.arange(n) / n)
    r = np.abs(f(z, check=False))
    return float(np.min(r)), float(np.max(r))


def _check_conformal_on_support(f: PowerSeriesMap, mu: BeltramiSpec):
    if f.is_interior and mu.r_out > f.domain_radius:
        raise DomainError('support of %s leaves the domain of %r' % (mu.name, f))
    if not f.is_interior and mu.r_in < f.domain_radius:
        raise DomainError('support of %s leaves the domain of %r' % (mu.name, f))

    r_out = mu.r_out if mu.bounded else 4 * mu.r_in
    radii = np.linspace(max(mu.r_in, 1e-3 * r_out), r_out, 16)
    z = radii[:, None] * np.exp(2j * np.pi * np.arange(128) / 128)[None, :]
    d = f.derivs(z, 1, check=False)[1]
    if np.min(np.abs(d)) < 1e-12 * np.max(np.abs(d)):
        raise DomainError('%r is not injective on the support of %s' % (f, mu.name))


def _image_annulus(f, r_in: float, r_out: float):
    if f.is_interior:
        lo = _circle_extremes(f, r_in)[0]
        hi = _circle_extremes(f, r_out)[1]
    else:
        lo = _circle_extremes(f, r_in)[0]
        hi = np.inf if np.isinf(r_out) else _circle_extremes(f, r_out)[1]
    return lo, hi


def pushforward_beltrami(f: PowerSeriesMap, mu: BeltramiSpec, direction: str = PUSH) -> BeltramiSpec:
    """
    ``push``: ``f_* mu = mu(f^-1) conj((f^-1)') / (f^-1)'``; ``pull``: ``f^* mu = mu(f) conj(f') / f'``.
    """
    if direction not in (PUSH, PULL):
        raise ValueError('unknown direction %s' % direction)

    inverse = series_compose_invert(f)

    if direction == PUSH:
        _check_conformal_on_support(f, mu)
        outer, inner = inverse, f
    else:
        outer, inner = f, inverse

    def evaluator(z):
        d = outer.derivs(z, 1, check=False)
        return mu(d[0]) * np.conj(d[1]) / d[1]

    r_in, r_out = _image_annulus(inner, mu.r_in, mu.r_out)
    name = '%s_%s' % (direction, mu.name)
    return BeltramiSpec(evaluator, r_in, r_out, mu.sup_norm, name)
