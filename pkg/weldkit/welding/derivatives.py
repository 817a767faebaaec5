import logging
from typing import Callable, Union

import numpy as np

from weldkit.beltrami.spec import BeltramiSpec
from weldkit.errors import ConfigurationError, DomainError
from weldkit.fields.action import flow_lift
from weldkit.model import Constants, DirectionalDerivative
from weldkit.welding.energies import LEFT, RIGHT, omega, welding_energies, welding_pairings
from weldkit.welding.homeo import ComposedLift
from weldkit.welding.zipper import DEFAULT_POINTS, WeldingTriple, zipper_weld

logger = logging.getLogger(__name__)

MIN_STEP = 1e-5
MAX_STEP = 1e-3
NOISE_FLOOR = 1e-6
FLOW_GRID = 256

Functional = Callable[[WeldingTriple], float]


def _kinetic(w: WeldingTriple) -> float:
    return welding_energies(w)[0]


def _universal_action(w: WeldingTriple) -> float:
    return welding_energies(w)[1]


FUNCTIONALS = {
    'K': _kinetic,
    'S1': _universal_action,
}


def resolve_functional(functional: Union[str, Functional], base: WeldingTriple = None,
                       constants: Constants = None) -> Functional:
    """
    Looks up a named functional. ``omega`` is measured against the base triple and needs the constants; any other
    callable on triples is used as given.
    """
    if callable(functional):
        return functional
    if functional == 'omega':
        if constants is None or base is None:
            raise ConfigurationError('omega needs the base triple and the constants')
        return lambda w: omega(w, base, constants)
    if functional not in FUNCTIONALS:
        raise ConfigurationError('unknown functional %s' % functional)
    return FUNCTIONALS[functional]


def _check_support(mu: BeltramiSpec, side: str):
    if side == RIGHT:
        if mu.r_out > 1:
            raise DomainError('right derivative needs %s supported in the disc' % mu.name)
    elif side == LEFT:
        if mu.r_in < 1:
            raise DomainError('left derivative needs %s supported outside the disc' % mu.name)
    else:
        raise ConfigurationError('unknown side %s' % side)


def _moved(w: WeldingTriple, mu: BeltramiSpec, side: str, t: complex):
    lift = flow_lift(mu, t, FLOW_GRID)
    if side == RIGHT:
        return ComposedLift(w.h, lift)
    return ComposedLift(lift, w.h)


def directional_derivative(functional: Union[str, Functional], w: WeldingTriple, mu: BeltramiSpec, side: str,
                           t_step: float = 1e-4, n_points: int = DEFAULT_POINTS,
                           constants: Constants = None) -> DirectionalDerivative:
    """
    Derivative of a functional of the welding homeomorphism along the circle flow of mu, composed on the right
    (``h o H_t``) or on the left (``H_t o h``). With ``F(t) = F + 2 Re(t R) + o(t)`` the derivatives ``a`` and ``b``
    along ``t`` real and ``t`` imaginary give ``R = (a - ib) / 2``. Each is a symmetric difference extrapolated from
    the steps ``t_step`` and ``2 t_step``.
    """
    _check_support(mu, side)
    if t_step <= 0:
        raise ConfigurationError('step must be positive, got %s' % t_step)
    func = resolve_functional(functional, w, constants)

    def evaluate(t):
        return func(zipper_weld(_moved(w, mu, side, t), n_points))

    def derivative(direction):
        d1 = (evaluate(t_step * direction) - evaluate(-t_step * direction)) / (2 * t_step)
        d2 = (evaluate(2 * t_step * direction) - evaluate(-2 * t_step * direction)) / (4 * t_step)
        return (4 * d1 - d2) / 3, abs(d1 - d2) / 3

    a, err_a = derivative(1.0)
    b, err_b = derivative(1j)
    value = complex(a - 1j * b) / 2
    error = float(err_a + err_b) / 2

    reliable = error <= 0.1 * abs(value) + NOISE_FLOOR
    if not reliable:
        logger.warning('directional derivative %s along %s is dominated by noise (error %.3g)', value, mu.name, error)
    return DirectionalDerivative(value, error, reliable)


def tt06_residual(w: WeldingTriple, mu: BeltramiSpec, side: str, constants: Constants, t_step: float = 1e-4,
                  n_points: int = DEFAULT_POINTS) -> float:
    """
    ``|(c_L/12) theta(mu) + varpi(mu) -+ D((c_L / 24 pi) S1 + 2K)|`` with the derivative D taken on the right for mu
    in the disc and on the left, with the opposite sign, for mu outside it.
    """
    if not MIN_STEP <= t_step <= MAX_STEP:
        raise ConfigurationError('step %s outside [%s, %s]' % (t_step, MIN_STEP, MAX_STEP))
    if mu.sup_norm == 0:
        return 0.0
    _check_support(mu, side)

    c_l = constants.c_L

    def potential(triple):
        k, s1 = welding_energies(triple)
        return c_l / (24 * np.pi) * s1 + 2 * k

    derivative = directional_derivative(potential, w, mu, side, t_step, n_points).value
    theta, varpi = welding_pairings(w, mu, side)
    expected = c_l / 12 * theta + varpi
    sign = 1 if side == RIGHT else -1

    residual = abs(sign * derivative - expected)
    logger.debug('%s derivative %s against pairings %s', side, derivative, expected)
    return float(residual)
