"""
Geodesic zipper for the welding problem. Both circles are opened onto the closed upper half-plane, the interior
prevertices on one side of 0 and the exterior ones on the other, and the pairs ``(e^(i theta_j), e^(i psi_j))`` are
glued one at a time: a real Mobius map sends the pair to ``+-c`` and ``w -> sqrt(w^2 - c^2)`` zips ``[-c, c]`` into
a slit. A last square closes the curve, and a Mobius map puts the image of the disc centre at 0 and of the
exterior point at infinity.
"""
import logging
import math
from typing import NamedTuple, Tuple

import numpy as np

from weldkit.core.series import EXTERIOR, INTERIOR, PowerSeriesMap
from weldkit.errors import GeometryError, WeldingSolverError

logger = logging.getLogger(__name__)

TWO_PI = 2 * np.pi

# nodes are placed on a sample this many times finer than the node count
NODE_OVERSAMPLING = 8
MIN_SAMPLES_PER_GAP = 4
MAX_SAMPLES = 2 ** 17
TRIM_TOLERANCE = 1e-14


class GluingStep(NamedTuple):
    beta: float
    c: float


def welding_nodes(h, n: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    ``n`` nodes with ``theta + H(theta)`` equispaced, starting at ``theta = 0``, so that neither the interior nor
    the exterior gaps exceed ``4 pi / n``.
    """
    dense = TWO_PI * np.arange(NODE_OVERSAMPLING * n) / (NODE_OVERSAMPLING * n)
    lift = np.asarray(h(dense), dtype=float)
    if np.any(np.diff(lift) <= 0):
        raise GeometryError('welding homeomorphism is not increasing')

    total = np.append(dense + lift - lift[0], 2 * TWO_PI)
    theta = np.interp(2 * TWO_PI * np.arange(n) / n, total, np.append(dense, TWO_PI))
    psi = np.asarray(h(theta), dtype=float)
    return theta, psi


def _upper(w: np.ndarray) -> np.ndarray:
    # rounding can push points a hair below the real axis, and the sign of a zero imaginary part picks the branch
    out = np.empty_like(w)
    out.real = w.real
    out.imag = np.where(w.imag > 0, w.imag, 0.0)
    return out


def _opened(x: np.ndarray, side: float) -> np.ndarray:
    """
    ``sqrt`` of the half-plane coordinate ``x`` of a boundary point: ``x >= 0`` goes to ``side * sqrt(x)`` and
    ``x < 0`` onto the positive imaginary axis.
    """
    out = np.zeros(len(x), dtype=complex)
    root = np.sqrt(np.abs(x))
    out.real = np.where(x >= 0, side * root, 0.0)
    out.imag = np.where(x < 0, root, 0.0)
    return out


def _half_plane_coordinate(angles: np.ndarray, span: float) -> np.ndarray:
    # the arc [0, span] of the circle onto [0, inf] and the rest onto the negative axis
    with np.errstate(divide='ignore'):
        return np.sin(angles / 2) / np.sin((span - angles) / 2)


class GluingChain:
    """
    The composition of elementary maps for the nodes ``theta`` (interior) and ``psi`` (exterior). Evaluation sends
    circle points to the plane of the welded curve, before the final scaling.
    """

    def __init__(self, theta: np.ndarray, psi: np.ndarray):
        if len(theta) != len(psi) or len(theta) < 3:
            raise GeometryError('gluing needs at least three node pairs, got %d' % min(len(theta), len(psi)))

        self.theta0 = float(theta[0])
        self.psi0 = float(psi[0])
        t = theta - self.theta0
        s = psi - self.psi0
        self.span_in = float(t[-1])
        self.span_out = float(s[-1])

        p = np.sqrt(_half_plane_coordinate(t[1:-1], self.span_in))
        q = -np.sqrt(_half_plane_coordinate(s[1:-1], self.span_out))
        self.steps, self.last = self._glue(p, q)

        self.origin = self._zip(np.array([np.sqrt(-np.exp(-0.5j * self.span_in))]))[0]
        outside = -np.exp(0.5j * self.span_out)
        self.pole = self._zip(np.array([-np.conj(np.sqrt(np.conj(outside)))]))[0]

    @staticmethod
    def _glue(p: np.ndarray, q: np.ndarray):
        steps = []
        # where the last node pair sits on the real line
        last = math.inf
        for j in range(len(p)):
            pj, qj = float(p[j]), float(q[j])
            c = 2 * pj * qj / (qj - pj)
            if not (np.isfinite(c) and c > 0):
                raise WeldingSolverError('gluing step %d degenerated (prevertices %.3g, %.3g)' % (j + 1, pj, qj))
            beta = (pj + qj) / (2 * pj * qj)
            steps.append(GluingStep(beta, c))

            rest_p = p[j + 1:] / (1 - beta * p[j + 1:])
            rest_q = q[j + 1:] / (1 - beta * q[j + 1:])
            p[j + 1:] = np.sign(rest_p) * np.sqrt(np.maximum(rest_p ** 2 - c ** 2, 0.0))
            q[j + 1:] = np.sign(rest_q) * np.sqrt(np.maximum(rest_q ** 2 - c ** 2, 0.0))

            if math.isinf(last):
                last = -1 / beta if beta != 0 else math.inf
            elif 1 - beta * last != 0:
                last = last / (1 - beta * last)
            else:
                last = math.inf
            if not math.isinf(last):
                last = math.copysign(math.sqrt(max(last ** 2 - c ** 2, 0.0)), last)
        return steps, last

    def _zip(self, w: np.ndarray) -> np.ndarray:
        w = _upper(np.asarray(w, dtype=complex))
        with np.errstate(divide='ignore', invalid='ignore'):
            for beta, c in self.steps:
                u = _upper(w / (1 - beta * w)) if beta != 0 else w
                w = _upper(np.sqrt(u - c) * np.sqrt(u + c))
            if not math.isinf(self.last):
                w = w / (1 - w / self.last)
        return w ** 2

    def _normalised(self, w: np.ndarray) -> np.ndarray:
        return 1 + (self.pole - self.origin) / (w - self.pole)

    def _boundary(self, angles: np.ndarray, start: float, span: float, side: float) -> np.ndarray:
        x = _half_plane_coordinate(np.mod(angles - start, TWO_PI), span)
        far = ~np.isfinite(x) | (np.abs(x) > 1e300)
        x[far] = 0
        values = self._normalised(self._zip(_opened(x, side)))
        # the last node is the point at infinity before normalisation
        values[far] = 1
        return values

    def interior(self, angles: np.ndarray) -> np.ndarray:
        return self._boundary(angles, self.theta0, self.span_in, 1.0)

    def exterior(self, angles: np.ndarray) -> np.ndarray:
        return self._boundary(angles, self.psi0, self.span_out, -1.0)


def _sample_count(nodes: np.ndarray, n: int) -> int:
    gaps = np.diff(np.append(nodes, nodes[0] + TWO_PI))
    needed = max(4 * n, MIN_SAMPLES_PER_GAP * TWO_PI / float(np.min(gaps)))
    count = 1 << int(math.ceil(math.log2(needed)))
    if count > MAX_SAMPLES:
        logger.warning('node gap %.3g needs %d boundary samples, using %d', np.min(gaps), count, MAX_SAMPLES)
        return MAX_SAMPLES
    return count


def _trimmed(coeffs: np.ndarray, floor: int) -> np.ndarray:
    above = np.nonzero(np.abs(coeffs) > TRIM_TOLERANCE * np.max(np.abs(coeffs)))[0]
    keep = max(floor, int(above[-1]) + 1 if len(above) else floor)
    return coeffs[:keep]


def _midpoint_grid(n: int) -> np.ndarray:
    # half a step off 2 pi k / n, where the nodes of symmetric weldings sit: the chain is only sqrt-accurate there
    return TWO_PI * (np.arange(n) + 0.5) / n


def geodesic_maps(h, n: int) -> Tuple[PowerSeriesMap, PowerSeriesMap, np.ndarray, np.ndarray]:
    """
    Interior and exterior series of the geodesic zipper on ``n`` node pairs, normalised by ``f(0) = 0`` and
    ``f'(0) = 1``, together with the nodes. The series come from the FFT of the boundary values on grids fine
    enough to resolve the smallest node gap on each side.
    """
    theta, psi = welding_nodes(h, n)
    chain = GluingChain(theta, psi)

    n_in = _sample_count(theta, n)
    n_out = _sample_count(np.mod(psi - psi[0], TWO_PI), n)
    logger.debug('geodesic zipper with %d nodes, %d interior and %d exterior samples', n, n_in, n_out)

    inside = np.fft.fft(chain.interior(_midpoint_grid(n_in))) / n_in
    inside = inside * np.exp(-1j * np.pi * np.arange(n_in) / n_in)
    scale = 1 / inside[1]
    a = scale * inside[:n_in // 2]
    a[0], a[1] = 0, 1

    phi = _midpoint_grid(n_out)
    outside = np.fft.ifft(np.exp(-1j * phi) * chain.exterior(phi)) * np.exp(1j * np.pi * np.arange(n_out) / n_out)
    b = scale * outside[:n_out // 2]

    f = PowerSeriesMap(_trimmed(a, n // 4), INTERIOR, tail_tol=None)
    g = PowerSeriesMap(_trimmed(b, n // 4), EXTERIOR, tail_tol=None)
    return f, g, theta, psi
