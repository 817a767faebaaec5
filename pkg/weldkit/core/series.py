import logging
from typing import Optional, Union

import numpy as np
from scipy.linalg import solve_triangular, toeplitz

from weldkit.errors import ConvergenceError, DivergenceError, DomainError, SingularMapError

logger = logging.getLogger(__name__)

INTERIOR = 'interior'
EXTERIOR = 'exterior'

DEFAULT_TRUNCATION = 64
MAX_TRUNCATION = 512
INVERSE_TOLERANCE = 1e-10
INVERSE_CHECK_RADIUS = 0.5


class PowerSeriesMap:
    """
    A conformal map represented by a truncated series.

    Interior maps are power series ``f(z) = sum_k c_k z^k`` valid on ``|z| <= domain_radius``. Exterior maps are
    Laurent series ``g(z) = z * sum_k c_k z^-k``, i.e. ``c_0 z + c_1 + c_2/z + ...``, valid on
    ``|z| >= domain_radius``.
    """
    kind: str
    coeffs: np.ndarray
    domain_radius: float
    tail_tol: Optional[float]

    def __init__(self, coeffs, kind: str = INTERIOR, domain_radius: float = 1.0, tail_tol: Optional[float] = 1e-6):
        if kind not in (INTERIOR, EXTERIOR):
            raise ValueError('unknown series kind %s' % kind)

        coeffs = np.array(coeffs, dtype=complex)
        if coeffs.ndim != 1 or len(coeffs) < 2:
            raise DomainError('series needs at least two coefficients, got %s' % (coeffs.shape,))

        self.kind = kind
        self.coeffs = coeffs
        self.domain_radius = float(domain_radius)
        self.tail_tol = tail_tol

    @staticmethod
    def identity(kind: str = INTERIOR, truncation: int = DEFAULT_TRUNCATION, domain_radius: float = None):
        coeffs = np.zeros(truncation + 1, dtype=complex)
        if kind == INTERIOR:
            coeffs[1] = 1
            domain_radius = 1.0 if domain_radius is None else domain_radius
        else:
            coeffs[0] = 1
            domain_radius = 1.0 if domain_radius is None else domain_radius
        return PowerSeriesMap(coeffs, kind, domain_radius)

    @staticmethod
    def normalized(a, truncation: int = None, domain_radius: float = 1.0):
        """
        Builds ``f(z) = z(1 + a_1 z + a_2 z^2 + ...)``, a map of the class fixing 0 with unit derivative.
        """
        a = np.atleast_1d(np.asarray(a, dtype=complex))
        truncation = truncation or max(DEFAULT_TRUNCATION, len(a) + 1)
        coeffs = np.zeros(truncation + 1, dtype=complex)
        coeffs[1] = 1
        coeffs[2:2 + len(a)] = a
        return PowerSeriesMap(coeffs, INTERIOR, domain_radius)

    @staticmethod
    def exterior(b, truncation: int = None, domain_radius: float = 1.0):
        """
        Builds ``g(z) = b_-1 z + b_0 + b_1/z + ...`` from ``b = [b_-1, b_0, b_1, ...]``.
        """
        b = np.atleast_1d(np.asarray(b, dtype=complex))
        truncation = truncation or max(DEFAULT_TRUNCATION, len(b))
        coeffs = np.zeros(truncation + 1, dtype=complex)
        coeffs[:len(b)] = b
        return PowerSeriesMap(coeffs, EXTERIOR, domain_radius)

    @staticmethod
    def mobius(a: complex, truncation: int = DEFAULT_TRUNCATION, domain_radius: float = None):
        """
        The disc automorphism ``(z - a) / (1 - conj(a) z)`` expanded at 0.
        """
        if abs(a) >= 1:
            raise DomainError('mobius parameter must lie in the unit disc, got %s' % a)

        k = np.arange(truncation + 1)
        ab = np.conj(a)
        coeffs = np.zeros(truncation + 1, dtype=complex)
        coeffs[0] = -a
        coeffs[1:] = ab ** (k[1:] - 1) * (1 - a * ab)
        if domain_radius is None:
            domain_radius = min(1.0, 0.5 / max(abs(a), 1e-12))
        return PowerSeriesMap(coeffs, INTERIOR, domain_radius)

    @property
    def truncation(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_interior(self) -> bool:
        return self.kind == INTERIOR

    @property
    def leading(self) -> complex:
        """
        ``f'(0)`` for interior maps and ``g'(inf)`` for exterior maps.
        """
        return self.coeffs[1] if self.is_interior else self.coeffs[0]

    def in_domain(self, z) -> bool:
        r = np.abs(z)
        slack = 1e-12 * max(1.0, self.domain_radius)
        if self.is_interior:
            return bool(np.all(r <= self.domain_radius + slack))
        return bool(np.all(r >= self.domain_radius - slack))

    def __call__(self, z, check: bool = True):
        return self.derivs(z, 0, check)[0]

    def derivs(self, z, order: int, check: bool = True) -> np.ndarray:
        """
        Returns an array of shape ``(order + 1,) + shape(z)`` holding the map and its first ``order`` derivatives,
        obtained by term-wise differentiation.
        """
        z = np.asarray(z, dtype=complex)
        if check:
            if not self.in_domain(z):
                raise DomainError('point outside the %s series domain (radius %s)' % (self.kind, self.domain_radius))
            self._check_tail(z)

        out = np.empty((order + 1,) + z.shape, dtype=complex)
        if self.is_interior:
            for k in range(order + 1):
                out[k] = np.polynomial.polynomial.polyval(z, self._interior_derivative_coeffs(k))
        else:
            exponents = 1 - np.arange(len(self.coeffs))
            with np.errstate(divide='ignore', invalid='ignore'):
                w = 1 / z
            for k in range(order + 1):
                c = self.coeffs * _falling(exponents, k)
                out[k] = z ** (1 - k) * np.polynomial.polynomial.polyval(w, c)
        return out

    def on_circle(self, n: int, order: int) -> np.ndarray:
        """
        :meth:`derivs` at the ``n``-th roots of unity, one FFT per derivative. Coefficients beyond ``n`` are
        folded onto their aliases.
        """
        z = np.exp(2j * np.pi * np.arange(n) / n)
        k = np.arange(len(self.coeffs))
        out = np.empty((order + 1, n), dtype=complex)
        for d in range(order + 1):
            if self.is_interior:
                folded = _fold(self.coeffs * _falling(k, d), n)
                out[d] = n * np.fft.ifft(folded) * z ** -d
            else:
                folded = _fold(self.coeffs * _falling(1 - k, d), n)
                out[d] = np.fft.fft(folded) * z ** (1 - d)
        return out

    def _interior_derivative_coeffs(self, k: int) -> np.ndarray:
        if k == 0:
            return self.coeffs
        if k > self.truncation:
            return np.zeros(1, dtype=complex)
        j = np.arange(k, len(self.coeffs))
        return self.coeffs[k:] * _falling(j, k)

    def _check_tail(self, z: np.ndarray):
        if self.tail_tol is None or z.size == 0:
            return

        if self.is_interior:
            r = np.max(np.abs(z))
        else:
            r = 1 / np.min(np.abs(z))

        k = np.arange(len(self.coeffs))
        with np.errstate(over='ignore', invalid='ignore'):
            terms = np.abs(self.coeffs) * r ** k
        n_tail = max(2, len(self.coeffs) // 16)
        total = np.sum(terms)
        tail = np.sum(terms[-n_tail:])

        if not np.isfinite(total) or tail > self.tail_tol * max(total, 1e-300):
            raise DivergenceError('series tail %.3g exceeds tolerance at radius %.4g' % (tail / total, r))

    def translated(self, t: complex) -> 'PowerSeriesMap':
        coeffs = self.coeffs.copy()
        coeffs[0 if self.is_interior else 1] += t
        return PowerSeriesMap(coeffs, self.kind, self.domain_radius, self.tail_tol)

    def dilated(self, lam: complex) -> 'PowerSeriesMap':
        return PowerSeriesMap(self.coeffs * lam, self.kind, self.domain_radius, self.tail_tol)

    def rotated(self, theta: float) -> 'PowerSeriesMap':
        """
        Pre-composition with the rotation ``z -> e^{i theta} z``.
        """
        exponents = np.arange(len(self.coeffs)) if self.is_interior else 1 - np.arange(len(self.coeffs))
        coeffs = self.coeffs * np.exp(1j * theta * exponents)
        return PowerSeriesMap(coeffs, self.kind, self.domain_radius, self.tail_tol)

    def reflected(self) -> 'PowerSeriesMap':
        """
        Conjugation by the inversion ``z -> 1/conj(z)``: turns an interior map into an exterior one and back.
        """
        if self.is_interior:
            if abs(self.coeffs[0]) > 0:
                raise DomainError('reflection needs f(0)=0')
            coeffs = np.conj(_reciprocal(self.coeffs[1:], len(self.coeffs) - 1))
            return PowerSeriesMap(coeffs, EXTERIOR, 1 / self.domain_radius, self.tail_tol)

        recip = np.conj(_reciprocal(self.coeffs, len(self.coeffs) - 1))
        coeffs = np.concatenate([[0], recip])
        return PowerSeriesMap(coeffs, INTERIOR, 1 / self.domain_radius, self.tail_tol)

    def __repr__(self):
        return 'PowerSeriesMap(kind=%s, truncation=%d, domain_radius=%s)' % (
            self.kind, self.truncation, self.domain_radius)


def _falling(j, k: int):
    out = np.ones(np.shape(j))
    for i in range(k):
        out = out * (j - i)
    return out


def _fold(c: np.ndarray, n: int) -> np.ndarray:
    padded = np.zeros(-(-len(c) // n) * n, dtype=complex)
    padded[:len(c)] = c
    return padded.reshape(-1, n).sum(axis=0)


def _mul(a: np.ndarray, b: np.ndarray, n: int) -> np.ndarray:
    return np.convolve(a, b)[:n]


def _reciprocal(a: np.ndarray, n: int) -> np.ndarray:
    """
    The first ``n`` coefficients of ``1 / sum_k a_k w^k``, by solving the lower-triangular Toeplitz system.
    """
    if a[0] == 0:
        raise SingularMapError('series reciprocal of a series vanishing at the origin')

    col = np.zeros(n, dtype=complex)
    m = min(n, len(a))
    col[:m] = a[:m]
    rhs = np.zeros(n, dtype=complex)
    rhs[0] = 1
    return solve_triangular(toeplitz(col, np.zeros(n)), rhs, lower=True)


def _compose_coeffs(f: np.ndarray, g: np.ndarray, n: int) -> np.ndarray:
    """
    Truncated coefficients of ``f(g(w))`` for power series f, g (Horner scheme).
    """
    out = np.zeros(n, dtype=complex)
    for c in f[::-1]:
        out = _mul(out, g, n)
        out[0] += c
    return out


def _invert_coeffs(f: np.ndarray, n: int) -> np.ndarray:
    """
    Compositional inverse of a power series with ``f_0 = 0`` and ``f_1 != 0``, by Newton iteration with doubling
    precision.
    """
    if f[1] == 0:
        raise SingularMapError('cannot invert a series with vanishing derivative at 0')

    df = np.arange(1, len(f)) * f[1:]

    g = np.zeros(n, dtype=complex)
    g[1] = 1 / f[1]
    precision = 2
    while precision < n:
        precision = min(2 * precision, n)
        fg = _compose_coeffs(f, g[:precision], precision)
        fg[1] -= 1
        dfg = _compose_coeffs(df, g[:precision], precision)
        correction = _mul(fg, _reciprocal(dfg, precision), precision)
        g[:precision] -= correction
    return g


def _interior_inverse(f: PowerSeriesMap) -> PowerSeriesMap:
    if abs(f.coeffs[0]) > 1e-14 * np.max(np.abs(f.coeffs)):
        raise DomainError('inversion requires f(0)=0')

    rho = 0.9 * f.domain_radius
    theta = np.linspace(0, 2 * np.pi, 256, endpoint=False)
    image_radius = float(np.min(np.abs(f(rho * np.exp(1j * theta), check=False))))
    check_radius = min(INVERSE_CHECK_RADIUS, 0.9 * image_radius)
    w = check_radius * np.exp(1j * theta)

    truncation = max(f.truncation, DEFAULT_TRUNCATION)
    residual = np.inf
    while truncation <= MAX_TRUNCATION:
        coeffs = _invert_coeffs(f.coeffs, truncation + 1)
        inverse = PowerSeriesMap(coeffs, INTERIOR, image_radius, f.tail_tol)
        residual = float(np.max(np.abs(f(inverse(w, check=False), check=False) - w)))
        logger.debug('series inverse at truncation %d has residual %.3g', truncation, residual)
        if residual < INVERSE_TOLERANCE:
            return inverse
        truncation *= 2

    raise ConvergenceError('series inverse residual %.3g above %.1g at truncation %d' % (
        residual, INVERSE_TOLERANCE, MAX_TRUNCATION))


def series_eval_derivs(f: PowerSeriesMap, z: Union[complex, np.ndarray], order: int) -> np.ndarray:
    if not 0 <= order <= 4:
        raise DomainError('derivative order out of range %s' % order)
    return f.derivs(z, order)


def series_compose_invert(f: PowerSeriesMap, g: Optional[PowerSeriesMap] = None) -> PowerSeriesMap:
    """
    Returns ``f o g`` when ``g`` is given, otherwise the compositional inverse of ``f``. Both maps must be of the same
    kind; exterior maps are handled through the reflection ``1/f(1/w)``.
    """
    if g is None:
        if f.is_interior:
            return _interior_inverse(f)
        return _reflect_exterior(_interior_inverse(_to_interior(f)))

    if f.kind != g.kind:
        raise DomainError('cannot compose %s with %s series' % (f.kind, g.kind))

    if not f.is_interior:
        composed = series_compose_invert(_to_interior(f), _to_interior(g))
        return _reflect_exterior(composed)

    radius = _composable_radius(f, g)
    if radius < 0.25 * g.domain_radius:
        raise DomainError('image of the inner series leaves the outer series domain')

    n = max(f.truncation, g.truncation) + 1
    coeffs = _compose_coeffs(f.coeffs, g.coeffs, n)
    return PowerSeriesMap(coeffs, INTERIOR, radius, f.tail_tol)


def _composable_radius(f: PowerSeriesMap, g: PowerSeriesMap) -> float:
    """
    Largest radius r up to g's domain radius such that g maps ``|z| <= r`` into f's domain.
    """
    theta = np.linspace(0, 2 * np.pi, 256, endpoint=False)
    circle = np.exp(1j * theta)

    def fits(r):
        return np.max(np.abs(g(r * circle, check=False))) <= f.domain_radius * (1 + 1e-12)

    if fits(g.domain_radius):
        return g.domain_radius

    lo, hi = 0.0, g.domain_radius
    for _ in range(40):
        mid = (lo + hi) / 2
        if fits(mid):
            lo = mid
        else:
            hi = mid
    return lo


def _to_interior(g: PowerSeriesMap) -> PowerSeriesMap:
    """
    ``G(w) = 1/g(1/w)`` for an exterior map g.
    """
    coeffs = np.concatenate([[0], _reciprocal(g.coeffs, len(g.coeffs))])
    return PowerSeriesMap(coeffs, INTERIOR, 1 / g.domain_radius, g.tail_tol)


def _reflect_exterior(f: PowerSeriesMap) -> PowerSeriesMap:
    """
    ``g(z) = 1/F(1/z)`` for an interior map F with ``F(0) = 0``.
    """
    coeffs = _reciprocal(f.coeffs[1:], len(f.coeffs) - 1)
    return PowerSeriesMap(coeffs, EXTERIOR, 1 / f.domain_radius, f.tail_tol)
