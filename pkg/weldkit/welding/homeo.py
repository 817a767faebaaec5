import logging
from typing import Tuple

import numpy as np
from scipy.interpolate import PchipInterpolator

from weldkit.errors import DegenerateMeasureError, DomainError, ResolutionError
from weldkit.fields.gmc import GmcMeasure

logger = logging.getLogger(__name__)

TWO_PI = 2 * np.pi
DEFAULT_POINTS = 4096
PADDING = 4


def _wrap_nodes(x: np.ndarray, y: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """
    Moves increasing nodes ``x`` into ``[0, 2 pi)`` by whole turns, shifting the lift values ``y`` along, and sorts.
    """
    k = np.floor(x / TWO_PI)
    x = x - TWO_PI * k
    y = y - TWO_PI * k
    over = x >= TWO_PI
    x[over] -= TWO_PI
    y[over] -= TWO_PI
    order = np.argsort(x, kind='stable')
    return x[order], y[order]


class CircleHomeo:
    """
    An orientation preserving homeomorphism of the circle given by samples ``H(theta_i)`` of its lift on increasing
    nodes ``theta_i`` in ``[0, 2 pi)``, interpolated by a monotone cubic. The lift satisfies
    ``H(theta + 2 pi) = H(theta) + 2 pi``.
    """

    def __init__(self, grid, values):
        grid = np.asarray(grid, dtype=float)
        values = np.asarray(values, dtype=float)
        if grid.shape != values.shape or grid.ndim != 1 or len(grid) < 2:
            raise ResolutionError('homeomorphism needs matching node and value arrays, got %s and %s' % (
                grid.shape, values.shape))
        if grid[0] < 0 or grid[-1] >= TWO_PI or np.any(np.diff(grid) <= 0):
            raise DomainError('homeomorphism nodes must increase within [0, 2 pi)')
        if np.any(np.diff(values) <= 0) or values[-1] - values[0] >= TWO_PI:
            raise DomainError('lift values are not strictly increasing')

        self.grid = grid
        self.values = values

        p = min(PADDING, len(grid))
        x = np.concatenate([grid[-p:] - TWO_PI, grid, grid[:p] + TWO_PI])
        y = np.concatenate([values[-p:] - TWO_PI, values, values[:p] + TWO_PI])
        self._interp = PchipInterpolator(x, y)
        self._slope = self._interp.derivative()
        self._inverse = None

    @staticmethod
    def uniform(values) -> 'CircleHomeo':
        values = np.asarray(values, dtype=float)
        return CircleHomeo(TWO_PI * np.arange(len(values)) / len(values), values)

    @staticmethod
    def from_lift(lift, n: int = DEFAULT_POINTS) -> 'CircleHomeo':
        return CircleHomeo.uniform(lift(TWO_PI * np.arange(n) / n))

    @staticmethod
    def rotation(alpha: float, n: int = DEFAULT_POINTS) -> 'CircleHomeo':
        return CircleHomeo.uniform(TWO_PI * np.arange(n) / n + alpha)

    @property
    def points(self) -> int:
        return len(self.grid)

    def _reduce(self, theta):
        theta = np.asarray(theta, dtype=float)
        turns = np.floor(theta / TWO_PI)
        return theta - TWO_PI * turns, turns

    def __call__(self, theta):
        r, turns = self._reduce(theta)
        return self._interp(r) + TWO_PI * turns

    def derivative(self, theta):
        r, _ = self._reduce(theta)
        return self._slope(r)

    def inverted(self) -> 'CircleHomeo':
        if self._inverse is None:
            self._inverse = CircleHomeo(*_wrap_nodes(self.values, self.grid))
        return self._inverse

    def inverse(self, psi):
        return self.inverted()(psi)

    def rotated_left(self, alpha: float) -> 'CircleHomeo':
        """
        ``e^(i alpha) h``.
        """
        return CircleHomeo(self.grid, self.values + alpha)

    def rotated_right(self, alpha: float) -> 'CircleHomeo':
        """
        ``h(e^(i alpha) z)``.
        """
        return CircleHomeo(*_wrap_nodes(self.grid - alpha, self.values))

    def resampled(self, n: int) -> 'CircleHomeo':
        return CircleHomeo.from_lift(self, n)

    def __repr__(self):
        return 'CircleHomeo(points=%d)' % self.points


class ComposedLift:
    """
    ``outer o inner`` for any two lifts exposing evaluation, derivative and inverse.
    """

    def __init__(self, outer, inner):
        self.outer = outer
        self.inner = inner

    def __call__(self, theta):
        return self.outer(self.inner(theta))

    def derivative(self, theta):
        return self.outer.derivative(self.inner(theta)) * self.inner.derivative(theta)

    def inverse(self, psi):
        return self.inner.inverse(self.outer.inverse(psi))


class InverseLift:

    def __init__(self, lift):
        self.lift = lift

    def __call__(self, theta):
        return self.lift.inverse(theta)

    def derivative(self, theta):
        return 1 / self.lift.derivative(self.lift.inverse(theta))

    def inverse(self, psi):
        return self.lift(psi)


def invert_homeo(h):
    """
    Inverse of a circle homeomorphism. Sampled homeomorphisms are inverted exactly by swapping nodes and values.
    """
    if isinstance(h, CircleHomeo):
        return h.inverted()
    if isinstance(h, InverseLift):
        return h.lift
    return InverseLift(h)


def _check_measure(m: GmcMeasure, name: str):
    mass = m.total_mass
    if not np.isfinite(mass) or mass <= 0:
        raise DegenerateMeasureError('%s has total mass %s' % (name, mass))


def _periodic_distribution(m: GmcMeasure, theta) -> np.ndarray:
    theta = np.asarray(theta, dtype=float)
    turns = np.floor(theta / TWO_PI)
    return m.distribution(theta - TWO_PI * turns) + turns


def _periodic_quantile(m: GmcMeasure, u) -> np.ndarray:
    u = np.asarray(u, dtype=float)
    turns = np.floor(u)
    return m.quantile(u - turns) + TWO_PI * turns


def homeo_from_measures(m1: GmcMeasure, m2: GmcMeasure, alpha: float) -> CircleHomeo:
    """
    The homeomorphism h with ``h(1) = e^(-i alpha)`` pulling the normalised m1 back onto the normalised m2:
    ``F1(H(theta)) - F1(-alpha) = F2(theta)`` for the distribution functions measured from angle 0.
    """
    _check_measure(m1, 'first measure')
    _check_measure(m2, 'second measure')
    if len(m1.grid) != len(m2.grid):
        raise ResolutionError('measures on different grids (%d and %d cells)' % (len(m1.grid), len(m2.grid)))

    base = _periodic_distribution(m1, -alpha)
    values = _periodic_quantile(m1, base + m2.normalized_cdf()[:-1])
    if np.any(np.diff(values) <= 0) or values[-1] - values[0] >= TWO_PI:
        raise DegenerateMeasureError('measure with empty cells, the homeomorphism is not strictly increasing')

    logger.debug('homeomorphism from measures with masses %.4g and %.4g', m1.total_mass, m2.total_mass)
    return CircleHomeo(m2.grid, values)


def pushforward_defect(h, m1: GmcMeasure, m2: GmcMeasure) -> float:
    """
    Total variation distance between the normalised m1 measure of ``h(A)`` and the normalised m2 measure of ``A``
    over the cells ``A`` of the grid of m2.
    """
    nodes = np.append(m2.grid, TWO_PI)
    pulled = np.diff(_periodic_distribution(m1, h(nodes)))
    target = np.diff(m2.normalized_cdf())
    return float(np.sum(np.abs(pulled - target)) / 2)
