import logging
from typing import List, NamedTuple, Optional, Tuple

import numpy as np

from weldkit.core.pairing import QuadDiffFn
from weldkit.errors import BoundaryError, ConfigurationError, DomainError, TruncationError

logger = logging.getLogger(__name__)

NEUMANN_DOT = 'neumann_dot'
HALF_LOG = 'half_log'

VARIANTS = (NEUMANN_DOT, HALF_LOG)

INTERIOR = 'interior'
EXTERIOR = 'exterior'

SIDES = (INTERIOR, EXTERIOR)


class FourierField(NamedTuple):
    """
    A real field on the unit circle ``phi(z) = c + 2 Re(sum_m phi_m z^m)``, with ``modes[m - 1] = phi_m``.
    """
    variant: str
    c: float
    modes: np.ndarray

    @property
    def truncation(self) -> int:
        return len(self.modes)

    def mode(self, m: int) -> complex:
        if m == 0:
            return self.c
        if not 1 <= m <= self.truncation:
            raise TruncationError('mode %d beyond truncation %d' % (m, self.truncation))
        return complex(self.modes[m - 1])

    def __call__(self, theta) -> np.ndarray:
        z = np.exp(1j * np.asarray(theta, dtype=float))
        return self.c + 2 * np.real(z * np.polynomial.polynomial.polyval(z, self.modes))

    def derivative(self, theta) -> np.ndarray:
        z = np.exp(1j * np.asarray(theta, dtype=float))
        m = np.arange(1, self.truncation + 1)
        return 2 * np.real(1j * z * np.polynomial.polynomial.polyval(z, m * self.modes))

    def on_grid(self, n: int) -> np.ndarray:
        """
        Samples at ``theta_j = 2 pi j / n``; needs ``n`` above the truncation.
        """
        if n <= self.truncation:
            raise TruncationError('grid of %d points cannot resolve %d modes' % (n, self.truncation))
        a = np.zeros(n, dtype=complex)
        a[1:self.truncation + 1] = self.modes
        return self.c + 2 * np.real(n * np.fft.ifft(a))

    def rotated(self, alpha: float) -> 'FourierField':
        m = np.arange(1, self.truncation + 1)
        return self._replace(modes=self.modes * np.exp(1j * m * alpha))

    def __add__(self, other: 'FourierField') -> 'FourierField':
        n = max(self.truncation, other.truncation)
        modes = np.zeros(n, dtype=complex)
        modes[:self.truncation] += self.modes
        modes[:other.truncation] += other.modes
        return FourierField(self.variant, self.c + other.c, modes)


def field_from_samples(values: np.ndarray, variant: str = NEUMANN_DOT, truncation: int = None) -> FourierField:
    """
    Re-expands real samples on an equispaced grid into a field, keeping modes below the Nyquist index.
    """
    values = np.asarray(values, dtype=float)
    n = len(values)
    coeffs = np.fft.fft(values) / n
    truncation = truncation or (n // 2 - 1)
    if truncation >= n // 2:
        raise TruncationError('truncation %d at or above the Nyquist index of %d samples' % (truncation, n))
    return FourierField(variant, float(coeffs[0].real), coeffs[1:truncation + 1].copy())


def _check_variant(variant: str):
    if variant not in VARIANTS:
        raise ConfigurationError('unknown field variant %s' % variant)


def _check_side(side: str):
    if side not in SIDES:
        raise ConfigurationError('unknown side %s' % side)


def mode_variances(variant: str, truncation: int) -> np.ndarray:
    """
    ``E|phi_m|^2`` for ``m = 1..truncation``.
    """
    _check_variant(variant)
    m = np.arange(1, truncation + 1)
    return 1 / m if variant == NEUMANN_DOT else 1 / (2 * m)


def field_rng(seed: int, stream: int = 0) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([seed, stream]))


def sample_field(variant: str, truncation: int, seed: int, zero_mode: Optional[float] = None,
                 stream: int = 0) -> FourierField:
    """
    Draws independent complex Gaussian modes with the variances of the variant. The zero mode is fixed to
    ``zero_mode``, or 0 when no zero mode is requested. Each ``(seed, stream)`` pair gives an independent,
    reproducible field.
    """
    if truncation < 1:
        raise DomainError('field truncation must be positive, got %s' % truncation)
    scale = np.sqrt(mode_variances(variant, truncation) / 2)
    rng = field_rng(seed, stream)
    modes = scale * (rng.standard_normal(truncation) + 1j * rng.standard_normal(truncation))
    return FourierField(variant, 0.0 if zero_mode is None else float(zero_mode), modes)


def sample_fields(variant: str, truncation: int, seed: int, count: int,
                  zero_mode: Optional[float] = None) -> List[FourierField]:
    return [sample_field(variant, truncation, seed, zero_mode, stream=i) for i in range(count)]


def _interior_point(z, side: str) -> np.ndarray:
    _check_side(side)
    z = np.asarray(z, dtype=complex)
    r = np.abs(z)
    if np.any(np.isclose(r, 1.0, rtol=0, atol=1e-14)):
        raise BoundaryError('harmonic extension evaluated on the unit circle, use the field directly')
    if side == INTERIOR and np.any(r > 1):
        raise DomainError('interior extension evaluated outside the disc')
    if side == EXTERIOR and np.any(r < 1):
        raise DomainError('exterior extension evaluated inside the disc')
    return z


def harmonic_extension(field: FourierField, z, side: str = INTERIOR):
    """
    Poisson extension of the field to the disc or to its exterior, the latter through ``z -> 1/conj(z)``.
    """
    z = _interior_point(z, side)
    if side == EXTERIOR:
        z = 1 / np.conj(z)
    out = field.c + 2 * np.real(z * np.polynomial.polynomial.polyval(z, field.modes))
    return float(out) if out.ndim == 0 else out


def dirichlet_energy(field: FourierField, side: str = INTERIOR) -> float:
    """
    ``(i/pi) * integral of d P phi ^ dbar P phi`` on either side of the circle: ``sum_m 2m |phi_m|^2``.
    """
    _check_side(side)
    m = np.arange(1, field.truncation + 1)
    return float(np.sum(2 * m * np.abs(field.modes) ** 2))


def liouville_action_disc(field: FourierField, side: str, Q: float) -> float:
    """
    Dirichlet energy plus ``2Q`` times the value of the extension at the centre (0 or infinity), which is the zero
    mode on both sides.
    """
    return dirichlet_energy(field, side) + 2 * Q * field.c


def _holomorphic_derivatives(field: FourierField, z: np.ndarray, side: str) -> Tuple[np.ndarray, np.ndarray]:
    m = np.arange(1, field.truncation + 1)
    if side == INTERIOR:
        d1 = np.polynomial.polynomial.polyval(z, m * field.modes)
        c2 = np.zeros(field.truncation, dtype=complex)
        c2[:-1] = m[:-1] * (m[:-1] + 1) * field.modes[1:]
        d2 = np.polynomial.polynomial.polyval(z, c2)
        return d1, d2

    u = 1 / z
    conj_modes = np.conj(field.modes)
    d1 = -u ** 2 * np.polynomial.polynomial.polyval(u, m * conj_modes)
    d2 = u ** 3 * np.polynomial.polynomial.polyval(u, m * (m + 1) * conj_modes)
    return d1, d2


def stress_tensors(field: FourierField, z, side: str, Q: float) -> Tuple[np.ndarray, np.ndarray]:
    """
    Stress-energy tensor ``T = -(dP)^2 + Q d^2 P`` and Heisenberg field ``J = dP / z`` of the harmonic extension
    ``P`` on the given side, from the differentiated mode sums.
    """
    z = _interior_point(z, side)
    d1, d2 = _holomorphic_derivatives(field, z, side)
    t = -d1 ** 2 + Q * d2
    with np.errstate(divide='ignore', invalid='ignore'):
        j = d1 / z
    if np.ndim(t) == 0:
        return complex(t), complex(j)
    return t, j


def stress_differential(field: FourierField, side: str, Q: float) -> QuadDiffFn:
    """
    The stress-energy tensor as a holomorphic quadratic differential on its side of the circle, for pairings with
    Beltrami differentials supported there.
    """
    _check_side(side)

    def evaluator(z):
        d1, d2 = _holomorphic_derivatives(field, np.asarray(z, dtype=complex), side)
        return -d1 ** 2 + Q * d2

    if side == INTERIOR:
        return QuadDiffFn(evaluator, 0.0, 1.0, 'T_int')
    return QuadDiffFn(evaluator, 1.0, np.inf, 'T_ext')
