import logging
from typing import Callable, NamedTuple, Optional, Tuple

import numpy as np
import scipy.linalg
from scipy.interpolate import CubicSpline

from weldkit.core.series import EXTERIOR, INTERIOR, PowerSeriesMap
from weldkit.errors import ConvergenceError, GeometryError, ResolutionError, WeldingSolverError
from weldkit.fields.action import TrigLift
from weldkit.welding.area import area_sums_converge
from weldkit.welding.curve import CurvePolyline, check_jordan, curve_of_map, winding_number
from weldkit.welding.geodesic import geodesic_maps
from weldkit.welding.homeo import ComposedLift, InverseLift, invert_homeo

logger = logging.getLogger(__name__)

MIN_POINTS = 256
DEFAULT_POINTS = 1024
WELD_TOLERANCE = 1e-6
THEODORSEN_TOLERANCE = 1e-13
THEODORSEN_ITERATIONS = 500
NEWTON_STEPS = 8


class WeldingTriple(NamedTuple):
    """
    A Jordan curve with its interior map ``f`` (``f(0) = 0``), exterior map ``g`` (``g(inf) = inf``) and welding
    homeomorphism ``h = g^-1 o f`` on the circle. ``residual`` is the largest welding mismatch ``|f - g o h|``
    observed when the triple was computed.
    """
    h: object
    f: PowerSeriesMap
    g: PowerSeriesMap
    curve: CurvePolyline
    residual: float = 0.0


def _grid(n: int) -> np.ndarray:
    return 2 * np.pi * np.arange(n) / n


def _conjugate_function(u: np.ndarray) -> np.ndarray:
    """
    Harmonic conjugate on the circle with zero mean, by multiplying the Fourier coefficients with ``-i sign(k)``.
    """
    n = len(u)
    coeffs = np.fft.fft(u)
    k = np.fft.fftfreq(n, 1.0 / n)
    coeffs = -1j * np.sign(k) * coeffs
    coeffs[n // 2] = 0
    return np.real(np.fft.ifft(coeffs))


def _polar_spline(curve: CurvePolyline) -> Tuple[CubicSpline, float]:
    """
    Periodic cubic spline of ``log|w|`` against the polar angle of the curve. The polar angle must be strictly
    monotone along the curve.
    """
    points = curve.points
    angle = np.unwrap(np.angle(points))
    if angle[-1] < angle[0]:
        points = points[::-1]
        angle = np.unwrap(np.angle(points))
    step = np.diff(np.append(angle, angle[0] + 2 * np.pi))
    if np.any(step <= 0):
        raise GeometryError('curve is not star-shaped with respect to 0')

    x = np.append(angle, angle[0] + 2 * np.pi)
    y = np.log(np.abs(np.append(points, points[0])))
    return CubicSpline(x, y, bc_type='periodic'), float(angle[0])


def _theodorsen(spline: CubicSpline, start: float, sign: float, n: int) -> Tuple[PowerSeriesMap, TrigLift]:
    """
    Interior map of a star-shaped domain from the fixed point ``psi = conj[log rho(theta + psi)]`` of the boundary
    correspondence ``theta -> theta + psi(theta)``. ``sign = -1`` uses the reflected radius ``1/rho``.
    """
    theta = _grid(n)

    def log_radius(angle):
        return sign * spline(np.mod(angle - start, 2 * np.pi) + start)

    psi = np.zeros(n)
    for iteration in range(THEODORSEN_ITERATIONS):
        update = _conjugate_function(log_radius(theta + psi))
        change = float(np.max(np.abs(update - psi)))
        psi = update
        if change < THEODORSEN_TOLERANCE:
            logger.debug('boundary correspondence converged after %d iterations', iteration + 1)
            break
    else:
        raise ConvergenceError('boundary correspondence did not converge (last change %.3g)' % change)

    boundary = np.exp(1j * theta + log_radius(theta + psi) + 1j * psi)
    coeffs = np.fft.fft(boundary)[:n // 2] / n
    coeffs[0] = 0
    return PowerSeriesMap(coeffs, INTERIOR), TrigLift.from_samples(psi)


def _chord_spline(curve: CurvePolyline) -> CubicSpline:
    """
    Periodic cubic spline through the vertices, positively oriented about 0, against chord length scaled to
    ``[0, 2 pi]``.
    """
    points = curve.points if winding_number(curve) > 0 else curve.points[::-1]
    closed = np.append(points, points[0])
    length = np.concatenate([[0.0], np.cumsum(np.abs(np.diff(closed)))])
    return CubicSpline(2 * np.pi * length / length[-1], closed, bc_type='periodic')


def _szego_correspondence(z: np.ndarray, dz: np.ndarray) -> np.ndarray:
    """
    Boundary correspondence ``arg F(z_k)`` of the Riemann map with ``F(0) = 0`` and ``F'(0) > 0`` at equispaced
    parameter nodes, from the Nystrom discretisation of the Kerzman-Stein equation
    ``S + A S = conj(H(0, .))`` for the Szego kernel ``S(., 0)``. On the curve ``F = -i T S^2 / |S|^2``.
    """
    n = len(z)
    speed = np.abs(dz)
    tangent = dz / speed
    with np.errstate(divide='ignore', invalid='ignore'):
        cauchy = tangent[None, :] / (z[None, :] - z[:, None]) / (2j * np.pi)
    kernel = cauchy - np.conj(cauchy.T)
    np.fill_diagonal(kernel, 0)

    system = np.eye(n) + kernel * (speed * 2 * np.pi / n)[None, :]
    szego = scipy.linalg.solve(system, np.conj(tangent / z / (2j * np.pi)))
    return np.unwrap(np.angle(-1j * tangent * szego ** 2))


def _szego_side(point: Callable, z: np.ndarray, dz: np.ndarray) -> Tuple[PowerSeriesMap, TrigLift, TrigLift]:
    """
    Interior map of the curve ``point(s)``, the lift taking circle angles to the parameter ``s`` and its inverse.
    """
    n = len(z)
    s = _grid(n)
    t = _szego_correspondence(z, dz)
    lift = TrigLift.from_samples(t - s)

    # parameter at equispaced circle angles, seeded by interpolation and polished by Newton on the lift
    target = _grid(n)
    knots_t = np.concatenate([t - 2 * np.pi, t, t + 2 * np.pi])
    knots_s = np.concatenate([s - 2 * np.pi, s, s + 2 * np.pi])
    param = np.interp(target, knots_t, knots_s)
    for _ in range(NEWTON_STEPS):
        param = param - (lift(param) - target) / lift.derivative(param)

    coeffs = np.fft.fft(point(param))[:n // 2] / n
    coeffs[0] = 0
    return PowerSeriesMap(coeffs, INTERIOR), TrigLift.from_samples(param - target), lift


def _szego_maps(curve: CurvePolyline, n: int) -> WeldingTriple:
    spline = _chord_spline(curve)
    s = _grid(n)
    z, dz = spline(s), spline(s, 1)
    f, inner, _ = _szego_side(spline, z, dz)

    # the reflection 1/conj(w) keeps the polar angle, so the reflected curve is positively oriented too
    reflected, _, outer = _szego_side(lambda x: 1 / np.conj(spline(x)), 1 / np.conj(z),
                                      -np.conj(dz) / np.conj(z) ** 2)
    h = ComposedLift(outer, inner)
    return WeldingTriple(h, f, reflected.reflected(), curve, 0.0)


def riemann_maps_of_curve(curve: CurvePolyline, n: int = DEFAULT_POINTS) -> WeldingTriple:
    """
    Conformal maps onto both sides of a Jordan curve separating 0 from infinity, normalised by ``f'(0) > 0`` and
    ``g'(inf) > 0``. The exterior map is the reflection of the interior map of the reflected curve, and the welding
    homeomorphism is read off the two boundary correspondences. Star-shaped curves are mapped by Theodorsen's
    iteration in polar angle, other curves through the Szego kernel in chord-length parameter.
    """
    check_jordan(curve)
    try:
        spline, start = _polar_spline(curve)
    except GeometryError as e:
        logger.debug('%s, mapping through the Szego kernel', e)
        return _szego_maps(curve, n)

    f, inner = _theodorsen(spline, start, 1.0, n)
    reflected, outer = _theodorsen(spline, start, -1.0, n)
    g = reflected.reflected()

    h = ComposedLift(InverseLift(outer), inner)
    return WeldingTriple(h, f, g, curve, 0.0)


def _weld_matrix(theta: np.ndarray, lift: np.ndarray, modes: int) -> Tuple[np.ndarray, np.ndarray]:
    k_f = np.arange(2, modes + 1)
    k_g = np.arange(-1, modes - 1)
    a = np.exp(1j * theta[:, None] * k_f[None, :])
    b = -np.exp(-1j * lift[:, None] * k_g[None, :])
    return np.hstack([a, b]), -np.exp(1j * theta)


def _spectral_weld(h, theta: np.ndarray, lift: np.ndarray) -> WeldingTriple:
    """
    Least-squares solution of ``f(e^(i theta)) = g(e^(i H(theta)))`` on equispaced nodes for truncated series
    ``f = z + a_2 z^2 + ...`` and ``g = b_-1 z + b_0 + b_1 / z + ...``. The mismatch is measured between the nodes.
    """
    n = len(theta)
    modes = n // 4
    matrix, rhs = _weld_matrix(theta, lift, modes)
    solution, _, rank, _ = scipy.linalg.lstsq(matrix, rhs)
    logger.debug('welding system %s with rank %d', matrix.shape, rank)

    f = PowerSeriesMap(np.concatenate([[0, 1], solution[:modes - 1]]), INTERIOR, tail_tol=None)
    g = PowerSeriesMap(solution[modes - 1:], EXTERIOR, tail_tol=None)

    mid = theta + np.pi / n
    residual = float(np.max(np.abs(f(np.exp(1j * mid)) - g(np.exp(1j * h(mid))))))
    return WeldingTriple(h, f, g, curve_of_map(f, n), residual)


def _geodesic_weld(h, n: int) -> WeldingTriple:
    """
    Geodesic zipper on ``n`` node pairs. The zipped maps agree exactly at the nodes, so the mismatch of the
    series there measures how well the series represent them.
    """
    f, g, theta, psi = geodesic_maps(h, n)
    residual = float(np.max(np.abs(f(np.exp(1j * theta)) - g(np.exp(1j * psi)))))

    if logger.isEnabledFor(logging.DEBUG):
        mid = theta + np.diff(np.append(theta, 2 * np.pi)) / 2
        between = float(np.max(np.abs(f(np.exp(1j * mid)) - g(np.exp(1j * np.asarray(h(mid)))))))
        logger.debug('geodesic zipper mismatch %.3g at the nodes, %.3g between them', residual, between)

    return WeldingTriple(h, f, g, curve_of_map(f, n), residual)


def zipper_weld(h, n_points: int = DEFAULT_POINTS, tol: float = WELD_TOLERANCE,
                raise_on_failure: bool = True) -> WeldingTriple:
    """
    Welds the lift ``h``, fixing the gauge ``f(0) = 0``, ``f'(0) = 1`` and ``g(inf) = inf``.

    The spectral least-squares solution is kept when its mismatch is within ``tol`` and the pre-Schwarzian mode
    sums of both maps converge. Otherwise, as for the rough homeomorphisms of GMC measures, the geodesic zipper on
    ``n_points`` nodes equidistributed in ``theta + H(theta)`` takes over, and the better of the two is returned.
    """
    if n_points < MIN_POINTS:
        raise ResolutionError('welding needs at least %d points, got %d' % (MIN_POINTS, n_points))

    theta = _grid(n_points)
    lift = np.asarray(h(theta), dtype=float)
    if np.any(np.diff(lift) <= 0):
        raise GeometryError('welding homeomorphism is not increasing')

    spectral = _spectral_weld(h, theta, lift)
    if spectral.residual <= tol and area_sums_converge(spectral.f, spectral.g):
        return spectral
    logger.debug('spectral welding residual %.3g, switching to the geodesic zipper', spectral.residual)

    zipped: Optional[WeldingTriple] = None
    try:
        zipped = _geodesic_weld(h, n_points)
    except WeldingSolverError as e:
        logger.debug('geodesic zipper failed: %s', e)

    if zipped is not None and (zipped.residual <= tol or zipped.residual < spectral.residual):
        triple = zipped
    else:
        triple = spectral

    if triple.residual > tol:
        message = 'welding residual %.3g above %.1g with %d points' % (triple.residual, tol, n_points)
        if raise_on_failure:
            raise WeldingSolverError(message, triple.residual, triple)
        logger.warning(message)

    return triple


def reflect_triple(w: WeldingTriple) -> WeldingTriple:
    """
    The triple of the reflected curve ``1 / conj(eta)``: maps ``iota o g o iota`` and ``iota o f o iota`` and welding
    homeomorphism ``h^-1``.
    """
    return WeldingTriple(invert_homeo(w.h), w.g.reflected(), w.f.reflected(), w.curve.reflected(), w.residual)
