import logging
from typing import NamedTuple

import numpy as np
from scipy.spatial import cKDTree
from scipy.spatial.distance import directed_hausdorff

from weldkit.errors import GeometryError

logger = logging.getLogger(__name__)


class CurvePolyline(NamedTuple):
    """
    Ordered vertices of a polygonal curve. A closed curve joins the last vertex back to the first.
    """
    points: np.ndarray
    closed: bool = True

    def __len__(self):
        return len(self.points)

    def segments(self):
        a = self.points
        b = np.roll(a, -1) if self.closed else a[1:]
        return (a, b) if self.closed else (a[:-1], b)

    def reflected(self) -> 'CurvePolyline':
        return self._replace(points=1 / np.conj(self.points))

    def scaled(self, lam: complex) -> 'CurvePolyline':
        return self._replace(points=lam * self.points)


def _cross(a, b):
    return a.real * b.imag - a.imag * b.real


def _segments_cross(p1, p2, q1, q2) -> np.ndarray:
    """
    Proper intersection of the segments ``[p1, p2]`` and ``[q1, q2]``, vectorised over pairs.
    """
    d1 = _cross(p2 - p1, q1 - p1)
    d2 = _cross(p2 - p1, q2 - p1)
    d3 = _cross(q2 - q1, p1 - q1)
    d4 = _cross(q2 - q1, p2 - q1)
    return (d1 * d2 < 0) & (d3 * d4 < 0)


def polyline_is_simple(curve: CurvePolyline) -> bool:
    """
    Checks that no two non-adjacent segments intersect. Candidate pairs are found with a k-d tree on the segment
    midpoints, so only segments closer than the longest segment are tested.
    """
    a, b = curve.segments()
    n = len(a)
    if n < 3:
        return True

    mid = (a + b) / 2
    reach = float(np.max(np.abs(b - a)))
    tree = cKDTree(np.column_stack([mid.real, mid.imag]))
    pairs = tree.query_pairs(reach * (1 + 1e-9), output_type='ndarray')
    if len(pairs) == 0:
        return True

    i, j = pairs[:, 0], pairs[:, 1]
    gap = np.abs(i - j)
    if curve.closed:
        gap = np.minimum(gap, n - gap)
    i, j = i[gap > 1], j[gap > 1]

    crossing = _segments_cross(a[i], b[i], a[j], b[j])
    if np.any(crossing):
        logger.debug('polyline crosses itself at %d segment pairs', np.count_nonzero(crossing))
        return False
    return True


def winding_number(curve: CurvePolyline, z0: complex = 0) -> int:
    if not curve.closed:
        raise GeometryError('winding number of an open polyline')
    p = curve.points - z0
    if np.any(p == 0):
        raise GeometryError('curve passes through %s' % z0)
    steps = np.angle(np.roll(p, -1) / p)
    return int(np.rint(np.sum(steps) / (2 * np.pi)))


def separates_zero_from_infinity(curve: CurvePolyline) -> bool:
    return winding_number(curve) != 0


def check_jordan(curve: CurvePolyline):
    if not curve.closed:
        raise GeometryError('expected a closed curve')
    if not polyline_is_simple(curve):
        raise GeometryError('curve is not simple at the resolution of %d points' % len(curve))
    if not separates_zero_from_infinity(curve):
        raise GeometryError('curve does not separate 0 from infinity')


def hausdorff_distance(a: CurvePolyline, b: CurvePolyline) -> float:
    """
    Symmetric Hausdorff distance between the vertex sets.
    """
    u = np.column_stack([a.points.real, a.points.imag])
    v = np.column_stack([b.points.real, b.points.imag])
    return float(max(directed_hausdorff(u, v)[0], directed_hausdorff(v, u)[0]))


def curve_of_map(f, n: int) -> CurvePolyline:
    """
    Samples ``f(e^(2 pi i j / n))`` for a map defined up to the unit circle.
    """
    z = np.exp(2j * np.pi * np.arange(n) / n)
    return CurvePolyline(np.asarray(f(z), dtype=complex), True)
