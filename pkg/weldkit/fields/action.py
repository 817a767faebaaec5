import logging
from typing import Tuple, Union

import numpy as np

from weldkit.beltrami.flow import circle_flow_field
from weldkit.beltrami.spec import BeltramiSpec
from weldkit.core.pairing import pair_q_beltrami
from weldkit.core.series import PowerSeriesMap
from weldkit.errors import ConvergenceError, DomainError, ResolutionError
from weldkit.fields.circle import FourierField, INTERIOR, field_from_samples, harmonic_extension, \
    liouville_action_disc, stress_differential, dirichlet_energy

logger = logging.getLogger(__name__)

DEFAULT_GRID = 256


class TrigLift:
    """
    Lift ``H(theta) = theta + u(theta)`` of an analytic circle diffeomorphism ``h(e^(i theta)) = e^(i H(theta))``,
    with ``u`` the trigonometric interpolant of its samples on an equispaced grid.
    """

    def __init__(self, coeffs: np.ndarray):
        self.coeffs = coeffs
        n = len(coeffs)
        self.freqs = np.fft.fftfreq(n, 1.0 / n)

    @staticmethod
    def from_samples(values) -> 'TrigLift':
        values = np.asarray(values, dtype=float)
        n = len(values)
        if n % 2:
            raise ResolutionError('lift needs an even number of samples, got %d' % n)
        coeffs = np.fft.fft(values) / n
        coeffs[n // 2] = 0
        return TrigLift(coeffs)

    @staticmethod
    def identity(n: int = DEFAULT_GRID) -> 'TrigLift':
        return TrigLift(np.zeros(n, dtype=complex))

    def _series(self, theta, factor) -> np.ndarray:
        theta = np.asarray(theta, dtype=float)
        phases = np.exp(1j * theta[..., None] * self.freqs)
        return np.real(phases @ (factor * self.coeffs))

    def __call__(self, theta) -> np.ndarray:
        return np.asarray(theta, dtype=float) + self._series(theta, 1)

    def derivative(self, theta) -> np.ndarray:
        return 1 + self._series(theta, 1j * self.freqs)

    def check_increasing(self, n: int = 1024):
        d = self.derivative(2 * np.pi * np.arange(n) / n)
        if np.min(d) <= 0:
            raise DomainError('lift is not increasing (min derivative %.3g)' % np.min(d))

    def inverse(self, psi, tol: float = 1e-14, iterations: int = 50) -> np.ndarray:
        """
        Solves ``H(theta) = psi`` by Newton's method started at ``theta = psi``.
        """
        psi = np.asarray(psi, dtype=float)
        theta = psi.copy()
        for _ in range(iterations):
            step = (self(theta) - psi) / self.derivative(theta)
            theta = theta - step
            if np.max(np.abs(step)) < tol:
                return theta
        raise ConvergenceError('inverse lift did not converge (last step %.3g)' % np.max(np.abs(step)))


def flow_lift(mu: BeltramiSpec, t: complex, n: int = DEFAULT_GRID) -> TrigLift:
    """
    ``H_t(theta) = theta + 2 Re(t w_mu(e^(i theta)))``, the symmetric first-order flow of mu on the circle.
    """
    return TrigLift.from_samples(2 * np.real(t * circle_flow_field(mu, n)))


def _grid(n: int) -> np.ndarray:
    return 2 * np.pi * np.arange(n) / n


def _series_action_samples(field: FourierField, f: PowerSeriesMap, Q: float, n: int) -> np.ndarray:
    if not f.is_interior:
        raise DomainError('field action needs an interior map of the disc, got %r' % f)
    d = f.derivs(np.exp(1j * _grid(n)), 1)
    if np.max(np.abs(d[0])) >= 1:
        raise DomainError('%r does not map the circle into the disc' % f)
    return harmonic_extension(field, d[0], INTERIOR) + Q * np.log(np.abs(d[1]))


def _lift_action_samples(field: FourierField, lift: TrigLift, Q: float, n: int, inverse: bool) -> np.ndarray:
    theta = _grid(n)
    if inverse:
        h = lift.inverse(theta)
        dh = 1 / lift.derivative(h)
    else:
        h = lift(theta)
        dh = lift.derivative(theta)
    if np.min(dh) <= 0:
        raise DomainError('lift is not increasing (min derivative %.3g)' % np.min(dh))
    return field(h) + Q * np.log(dh)


def field_action(field: FourierField, transform: Union[PowerSeriesMap, TrigLift], Q: float,
                 n: int = DEFAULT_GRID, inverse: bool = False) -> FourierField:
    """
    ``phi . f = (P phi) o f + Q log|f'|`` for a series map f of the disc into itself, or
    ``phi . h = phi o h + Q log(z h' / h)`` for a circle diffeomorphism given by its lift (``h^-1`` when ``inverse``).
    The result is resampled on ``n`` points and re-expanded in modes.
    """
    if isinstance(transform, PowerSeriesMap):
        if inverse:
            raise DomainError('inverse action is only available for circle lifts')
        values = _series_action_samples(field, transform, Q, n)
    else:
        values = _lift_action_samples(field, transform, Q, n, inverse)
    return field_from_samples(values, field.variant)


def liouville_variation(field: FourierField, mu: BeltramiSpec, t: complex, Q: float,
                        n: int = DEFAULT_GRID) -> Tuple[float, float]:
    """
    Half the symmetric difference ``S(phi . h_t^-1) - S(phi . h_-t^-1)`` of the disc action along the circle flow of
    mu, against the first-order prediction ``4 Re(t (T phi, mu))``.
    """
    if mu.r_out >= 1:
        raise DomainError('variation needs %s supported inside the disc' % mu.name)

    w = circle_flow_field(mu, n)
    actions = []
    for s in (t, -t):
        lift = TrigLift.from_samples(2 * np.real(s * w))
        moved = field_action(field, lift, Q, n, inverse=True)
        actions.append(liouville_action_disc(moved, INTERIOR, Q))

    pairing = pair_q_beltrami(stress_differential(field, INTERIOR, Q), mu)
    logger.debug('stress pairing %s with error %.3g', pairing.value, pairing.error)
    return (actions[0] - actions[1]) / 2, float(4 * np.real(t * pairing.value))


def energy_variation(field: FourierField, lift: TrigLift, n: int = DEFAULT_GRID) -> Tuple[float, float]:
    """
    Change of the Dirichlet energy under ``phi -> phi o h^-1`` against the double integral
    ``-(1/2 pi^2) * integral of log|(h(z) - h(zeta)) / (z - zeta)| d phi(z) d phi(zeta)``, the latter by the
    trapezoid rule on the torus with ``h'`` on the diagonal.
    """
    moved = field_action(field, lift, 0.0, n, inverse=True)
    lhs = dirichlet_energy(moved) - dirichlet_energy(field)

    theta = _grid(n)
    z = np.exp(1j * theta)
    hz = np.exp(1j * lift(theta))
    dphi = field.derivative(theta) * 2 * np.pi / n

    with np.errstate(divide='ignore', invalid='ignore'):
        ratio = (hz[:, None] - hz[None, :]) / (z[:, None] - z[None, :])
    ratio[np.diag_indices(n)] = lift.derivative(theta) * np.exp(1j * (lift(theta) - theta))

    rhs = -dphi @ np.log(np.abs(ratio)) @ dphi / (2 * np.pi ** 2)
    return float(lhs), float(rhs)
