"""
Chordal Loewner chains driven by ``sqrt(kappa)`` times a Brownian motion. Over each capacity step the driving
function is frozen, so the step map is the vertical slit map ``g(z) = W + sqrt((z - W)^2 + 4 dt)`` and the trace is
recovered by composing the inverse slit maps backwards from the tip.
"""
import logging

import numpy as np

from weldkit.errors import DivergenceError, DomainError
from weldkit.fields.circle import field_rng
from weldkit.model import DrivingPath, SolverStats, TraceResult
from weldkit.welding.curve import CurvePolyline

logger = logging.getLogger(__name__)

DEFAULT_STEPS = 10_000
MAX_HALVINGS = 4

# random stream reserved for driving functions
DRIVING_STREAM = 7


def sample_driving(kappa: float, N: int, dt: float, seed: int, start: float = 0.0) -> DrivingPath:
    if N < 1:
        raise DomainError('driving path needs at least one step, got %d' % N)
    if not dt > 0:
        raise DomainError('time step must be positive, got %s' % dt)
    if kappa < 0:
        raise DomainError('kappa must be non-negative, got %s' % kappa)

    increments = field_rng(seed, DRIVING_STREAM).standard_normal(N) * np.sqrt(kappa * dt)
    values = start + np.concatenate([[0.0], np.cumsum(increments)])
    times = dt * np.arange(N + 1)
    return DrivingPath(times, values, kappa)


def refine(path: DrivingPath) -> DrivingPath:
    """
    Halves every capacity step, interpolating the driving function linearly at the new midpoints.
    """
    times = np.empty(2 * path.steps + 1)
    values = np.empty(2 * path.steps + 1)
    times[::2], values[::2] = path.times, path.values
    times[1::2] = (path.times[:-1] + path.times[1:]) / 2
    values[1::2] = (path.values[:-1] + path.values[1:]) / 2
    return path._replace(times=times, values=values)


def _upper(z: np.ndarray) -> np.ndarray:
    return z.real + 1j * np.where(z.imag > 0, z.imag, 0.0)


def _unzip(z: np.ndarray, w: float, dt: float) -> np.ndarray:
    """
    Inverse slit map ``W + sqrt((z - W)^2 - 4 dt)`` with the branch taking the closed upper half-plane into itself.
    """
    s = 2 * np.sqrt(dt)
    u = _upper(z) - w
    return w + np.sqrt(u - s) * np.sqrt(u + s)


def _zip(z: np.ndarray, w: float, dt: float) -> np.ndarray:
    u = z - w
    with np.errstate(divide='ignore', invalid='ignore'):
        return w + u * np.sqrt(1 + 4 * dt / u ** 2)


def _trace_points(path: DrivingPath) -> np.ndarray:
    dt = np.diff(path.times)
    w = path.values[1:]
    points = w + 2j * np.sqrt(dt)

    for k in range(path.steps - 2, -1, -1):
        points[k + 1:] = _unzip(points[k + 1:], w[k], dt[k])

    return points


def _blown_up(points: np.ndarray) -> bool:
    return not np.all(np.isfinite(points)) or np.any(points.imag < 0)


def loewner_trace(path: DrivingPath) -> TraceResult:
    """
    Computes ``gamma(t_n) = g_(t_n)^(-1)(W_(t_n))`` for every capacity time. Each point is found by the reverse flow:
    the tip of the last slit is pulled back through the earlier slit maps. Non-finite points trigger a refinement
    of the driving path, up to ``MAX_HALVINGS`` times.
    """
    if np.any(np.diff(path.times) <= 0):
        raise DomainError('capacity times must increase')

    for halvings in range(MAX_HALVINGS + 1):
        points = _trace_points(path)
        if not _blown_up(points):
            break
        logger.warning('loewner trace blew up with %d steps, halving the step', path.steps)
        path = refine(path)
    else:
        raise DivergenceError('loewner trace did not stabilise after %d halvings' % MAX_HALVINGS)

    curve = CurvePolyline(np.concatenate([[complex(path.values[0])], points]), closed=False)
    return TraceResult(curve, path.times, SolverStats(path.steps, halvings))


def loewner_forward(path: DrivingPath, z) -> np.ndarray:
    """
    The discretised ``g_T`` applied to points of the upper half-plane off the hull.
    """
    z = np.array(z, dtype=complex, ndmin=1)
    dt = np.diff(path.times)
    for w, d in zip(path.values[1:], dt):
        z = _zip(z, w, d)
    return z
