import logging
from typing import Optional

import numpy as np
from scipy.spatial import cKDTree

from weldkit.errors import ConfigurationError, EvaluationError, ResolutionError
from weldkit.welding.curve import CurvePolyline

logger = logging.getLogger(__name__)

MIN_SCALES = 4
MIN_DECADES = 1.5

# fine cells per coarse cell side in the neighbourhood area count
SUBDIVISIONS = 8

# coarse cells are checked up to this many cells away from a sampled curve point
NEIGHBOURHOOD_REACH = 2


def resolution(curve: CurvePolyline) -> float:
    """
    The longest segment of the polyline.
    """
    a, b = curve.segments()
    if len(a) == 0:
        return 0.0
    return float(np.max(np.abs(b - a)))


def resample(curve: CurvePolyline, spacing: float) -> np.ndarray:
    """
    Points along the polyline no further than ``spacing`` apart, including every vertex.
    """
    a, b = curve.segments()
    if len(a) == 0:
        return np.asarray(curve.points, dtype=complex)

    counts = np.maximum(np.ceil(np.abs(b - a) / spacing).astype(int), 1)
    owner = np.repeat(np.arange(len(a)), counts)
    offsets = np.arange(counts.sum()) - np.repeat(np.cumsum(counts) - counts, counts)
    t = offsets / counts[owner]

    points = a[owner] + t * (b - a)[owner]
    if not curve.closed:
        points = np.append(points, curve.points[-1])
    return points


def _cells(points: np.ndarray, size: float) -> np.ndarray:
    return np.unique(np.column_stack([np.floor(points.real / size), np.floor(points.imag / size)]).astype(np.int64),
                     axis=0)


def box_counts(curve: CurvePolyline, scales, extra_points: Optional[np.ndarray] = None) -> np.ndarray:
    """
    Number of grid boxes of side ``r`` meeting the curve, for each ``r`` in ``scales``. ``extra_points`` are counted
    together with the curve.
    """
    counts = []
    for r in np.asarray(scales, dtype=float):
        points = resample(curve, r / 4)
        if extra_points is not None:
            points = np.concatenate([points, np.asarray(extra_points, dtype=complex)])
        counts.append(len(_cells(points, r)))
    return np.array(counts)


def _check_scales(scales: np.ndarray):
    if len(scales) < MIN_SCALES:
        raise ResolutionError('box dimension needs at least %d scales, got %d' % (MIN_SCALES, len(scales)))
    if np.any(scales <= 0):
        raise ResolutionError('scales must be positive')
    if np.log10(scales.max() / scales.min()) < MIN_DECADES:
        raise ResolutionError('scales span less than %s decades' % MIN_DECADES)


def box_dimension(curve: CurvePolyline, scales) -> float:
    """
    Least-squares slope of ``log N(r)`` against ``log(1/r)``.
    """
    scales = np.asarray(scales, dtype=float)
    _check_scales(scales)

    counts = box_counts(curve, scales)
    log_counts = np.log(counts)
    if np.ptp(log_counts) == 0:
        raise EvaluationError('degenerate box counting fit: %d boxes at every scale' % counts[0])

    slope, _ = np.polyfit(np.log(1 / scales), log_counts, 1)
    logger.debug('box counts %s over scales %s give dimension %.4f', counts, scales, slope)
    return float(slope)


def neighbourhood_area(curve: CurvePolyline, r: float, subdivisions: int = SUBDIVISIONS) -> float:
    """
    Area of ``{z : dist(z, curve) < r}`` by counting the centres of grid cells of side ``r / subdivisions``. Only
    cells near the sampled curve are visited.
    """
    h = r / subdivisions
    points = resample(curve, h / 2)
    tree = cKDTree(np.column_stack([points.real, points.imag]))

    reach = np.arange(-NEIGHBOURHOOD_REACH, NEIGHBOURHOOD_REACH + 1)
    shifts = np.array(np.meshgrid(reach, reach)).reshape(2, -1).T
    coarse = _cells(points, r)
    coarse = np.unique((coarse[:, None, :] + shifts[None, :, :]).reshape(-1, 2), axis=0)

    fine = (np.arange(subdivisions) + 0.5) / subdivisions
    fx, fy = np.meshgrid(fine, fine)
    fine = np.column_stack([fx.ravel(), fy.ravel()])

    inside = 0
    for chunk in np.array_split(coarse, max(1, len(coarse) // 4096)):
        centres = ((chunk[:, None, :] + fine[None, :, :]) * r).reshape(-1, 2)
        distance, _ = tree.query(centres, distance_upper_bound=r)
        inside += int(np.count_nonzero(distance < r))

    return inside * h * h


def minkowski_content(curve: CurvePolyline, r_list, exponent: float, subdivisions: int = SUBDIVISIONS) -> np.ndarray:
    """
    ``r^(-2 + exponent)`` times the area of the ``r``-neighbourhood of the curve, for each ``r`` in the decreasing
    ``r_list``. Radii below the polyline resolution are rejected.
    """
    r_list = np.asarray(r_list, dtype=float)
    if len(r_list) == 0:
        raise ConfigurationError('no radii given')
    if np.any(np.diff(r_list) >= 0):
        raise ConfigurationError('radii must be strictly decreasing')

    finest = resolution(curve)
    if r_list[-1] < finest:
        raise ResolutionError('radius %s is below the polyline resolution %s' % (r_list[-1], finest))

    return np.array([neighbourhood_area(curve, r, subdivisions) * r ** (exponent - 2) for r in r_list])
