import logging
from typing import Callable

import numpy as np

from weldkit.beltrami.spec import BeltramiSpec
from weldkit.core.pairing import QuadDiffFn, pair_q_beltrami
from weldkit.core.schwarzian import schwarzian_from_derivs
from weldkit.core.series import PowerSeriesMap
from weldkit.errors import DomainError, ResolutionError
from weldkit.fields.circle import EXTERIOR, INTERIOR, FourierField, dirichlet_energy, field_from_samples, \
    liouville_action_disc, stress_differential
from weldkit.welding.energies import welding_energies
from weldkit.welding.zipper import WeldingTriple

logger = logging.getLogger(__name__)

DEFAULT_SAMPLES = 256
RESOLUTION_TOLERANCE = 1e-10

CurveField = Callable[[np.ndarray], np.ndarray]


def _circle(n: int) -> np.ndarray:
    return np.exp(2j * np.pi * np.arange(n) / n)


def _resolved(values: np.ndarray) -> FourierField:
    """
    Mode expansion of boundary samples, refusing fields whose upper modes still carry energy.
    """
    field = field_from_samples(values)
    m = np.arange(1, field.truncation + 1)
    energy = 2 * m * np.abs(field.modes) ** 2
    upper = energy[-max(1, len(energy) // 8):]
    if np.sum(upper) > RESOLUTION_TOLERANCE * max(float(np.sum(energy)), 1.0):
        raise ResolutionError('field not resolved by %d samples (upper mode energy %.3g)' % (
            len(values), np.sum(upper)))
    return field


def _log_abs_derivative(m: PowerSeriesMap, z: np.ndarray) -> np.ndarray:
    return np.log(np.abs(m.derivs(z, 1, check=False)[1]))


def pulled_back_fields(w: WeldingTriple, field: CurveField, n: int = DEFAULT_SAMPLES):
    """
    ``phi o f`` and ``phi o g`` on the circle.
    """
    z = _circle(n)
    inner = np.asarray(field(w.f(z, check=False)), dtype=float)
    outer = np.asarray(field(w.g(z, check=False)), dtype=float)
    return _resolved(inner), _resolved(outer)


def curve_liouville_action(w: WeldingTriple, field: CurveField, Q: float, n: int = DEFAULT_SAMPLES) -> float:
    """
    Dirichlet energy of the harmonic extension of ``field`` to both sides of the curve, computed after pulling back
    by f and g, plus ``4Q`` times the extension at infinity.
    """
    inner, outer = pulled_back_fields(w, field, n)
    return dirichlet_energy(inner, INTERIOR) + dirichlet_energy(outer, EXTERIOR) + 4 * Q * outer.c


def vw_residual(w: WeldingTriple, field: CurveField, Q: float, n: int = DEFAULT_SAMPLES) -> float:
    """
    Difference between the curve action and the disc actions of ``phi . f`` and ``phi . g`` corrected by
    ``-(Q^2 / 2 pi) S1``, after dilating the curve so that ``g'(inf) = 1``.
    """
    lam = w.g.leading
    f = w.f.dilated(1 / lam)
    g = w.g.dilated(1 / lam)
    z = _circle(n)

    lhs = curve_liouville_action(w, field, Q, n)

    inner = np.asarray(field(w.f(z, check=False)), dtype=float) + Q * _log_abs_derivative(f, z)
    outer = np.asarray(field(w.g(z, check=False)), dtype=float) + Q * _log_abs_derivative(g, z)
    _, s1 = welding_energies(w)
    rhs = (liouville_action_disc(_resolved(inner), INTERIOR, Q) + liouville_action_disc(_resolved(outer), EXTERIOR, Q)
           - Q ** 2 / (2 * np.pi) * s1)

    logger.debug('curve action %.12g against disc actions %.12g', lhs, rhs)
    return float(abs(lhs - rhs))


def radon_nikodym_first_order(w: WeldingTriple, field: CurveField, mu: BeltramiSpec, t: complex, Q: float,
                              n: int = DEFAULT_SAMPLES) -> float:
    """
    ``1 - 2 Re(t ((1/12) S(f^-1) + T phi, mu))`` with the quadratic differential pulled back to the disc by f, where
    it reads ``T(phi . f) - (1/12 + Q^2/2) S f``. mu is given on the disc.
    """
    if mu.r_out > 1:
        raise DomainError('%s must be supported in the disc' % mu.name)

    z = _circle(n)
    values = np.asarray(field(w.f(z, check=False)), dtype=float) + Q * _log_abs_derivative(w.f, z)
    stress = stress_differential(_resolved(values), INTERIOR, Q)
    f = w.f

    def evaluator(p):
        d = f.derivs(p, 3, check=False)
        return stress(p) - (1 / 12 + Q ** 2 / 2) * schwarzian_from_derivs(d[1], d[2], d[3])[1]

    pairing = pair_q_beltrami(QuadDiffFn(evaluator, 0.0, 1.0, 'T_curve'), mu).value
    return float(1 - 2 * np.real(t * pairing))
