"""
Monte Carlo for the time a planar Brownian motion spends near a curve, renormalised by ``eps^(-2 + exponent)``:
``I = eps^(-2 + exponent) * |{t <= T : dist(B_t, curve) < eps}|``. Paths are Euler discretisations with steps much
shorter than ``eps^2``; each path draws from its own ``(seed, index)`` stream, so the estimate does not depend on how
paths are split across workers.
"""
import logging
import math
from multiprocessing import Pool
from typing import Optional

import numpy as np
from scipy.spatial import cKDTree

from weldkit.errors import ConfigurationError, DomainError, ResolutionError
from weldkit.fields.circle import field_rng
from weldkit.model import LocalTimeEstimate
from weldkit.sle.dimension import resample, resolution
from weldkit.welding.curve import CurvePolyline

logger = logging.getLogger(__name__)

MIN_PATHS = 100

# steps must satisfy dt <= eps^2 / MIN_STEP_RATIO, the default takes dt = eps^2 / DEFAULT_STEP_RATIO
MIN_STEP_RATIO = 10
DEFAULT_STEP_RATIO = 100

# first stream index used for Brownian paths
PATH_STREAM = 1000


def _occupation(args) -> np.ndarray:
    # module level with a single argument so it can be mapped over a Pool
    samples, x, steps, dt, eps, seed, indices = args
    tree = cKDTree(np.column_stack([samples.real, samples.imag]))

    times = np.empty(len(indices))
    for j, index in enumerate(indices):
        rng = field_rng(seed, PATH_STREAM + int(index))
        increments = rng.standard_normal((steps - 1, 2)) * math.sqrt(dt)
        path = np.vstack([[x.real, x.imag], [x.real, x.imag] + np.cumsum(increments, axis=0)])
        distance, _ = tree.query(path, distance_upper_bound=eps)
        times[j] = np.count_nonzero(distance < eps) * dt
    return times


def local_time_samples(curve: CurvePolyline, x: complex, T: float, eps: float, n_mc: int, seed: int,
                       exponent: float = 1.0, dt: Optional[float] = None, workers: int = 1) -> np.ndarray:
    """
    The renormalised occupation ``I`` of each of ``n_mc`` Brownian paths started at ``x``.
    """
    if not T > 0:
        raise DomainError('time horizon must be positive, got %s' % T)
    if n_mc < MIN_PATHS:
        raise ConfigurationError('local time needs at least %d paths, got %d' % (MIN_PATHS, n_mc))

    finest = resolution(curve)
    if eps < finest:
        raise ResolutionError('eps %s is below the polyline resolution %s' % (eps, finest))

    if dt is None:
        dt = eps ** 2 / DEFAULT_STEP_RATIO
    if dt > eps ** 2 / MIN_STEP_RATIO:
        raise ConfigurationError('time step %s is too coarse for eps %s' % (dt, eps))

    steps = max(1, int(math.ceil(T / dt)))
    samples = resample(curve, eps / 8)
    x = complex(x)

    chunks = np.array_split(np.arange(n_mc), max(1, workers))
    jobs = [(samples, x, steps, dt, eps, seed, chunk) for chunk in chunks if len(chunk)]

    if workers > 1:
        with Pool(processes=workers) as pool:
            parts = pool.map(_occupation, jobs)
    else:
        parts = [_occupation(job) for job in jobs]

    return np.concatenate(parts) * eps ** (exponent - 2)


def brownian_local_time(curve: CurvePolyline, x: complex, T: float, eps: float, n_mc: int, seed: int,
                        exponent: float = 1.0, dt: Optional[float] = None, workers: int = 1) -> LocalTimeEstimate:
    values = local_time_samples(curve, x, T, eps, n_mc, seed, exponent, dt, workers)
    mean = float(np.mean(values))
    stderr = float(np.std(values, ddof=1) / np.sqrt(len(values)))
    logger.debug('local time at %s with eps %s: %.6g +- %.2g', x, eps, mean, stderr)
    return LocalTimeEstimate(mean, stderr)
