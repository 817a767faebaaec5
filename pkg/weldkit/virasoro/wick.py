import logging
import math

from sympy.polys.domains import QQ

from weldkit.errors import ConfigurationError, DomainError
from weldkit.virasoro.operators import d_alpha_apply, ring_of, stress_mode_poly
from weldkit.virasoro.ring import ModePoly

logger = logging.getLogger(__name__)

NEUMANN_DOT = 'neumann_dot'
HALF_LOG = 'half_log'

# E|phi_m|^2 = 1 / (scale * m)
VARIANCE_SCALE = {
    NEUMANN_DOT: 1,
    HALF_LOG: 2,
}


def wick_expectation(p: ModePoly, variant: str = NEUMANN_DOT) -> ModePoly:
    """
    Gaussian expectation of a mode polynomial for independent complex Gaussian modes ``phi_m`` with
    ``E[phi_m^a phi_bar_m^b] = delta_ab a! sigma_m^(2a)``. ``neumann_dot`` is the zero-average Neumann field on the
    circle (covariance ``-2 log|z - w|``, ``sigma_m^2 = 1/m``), ``half_log`` the field with covariance
    ``-log|z - w|`` (``sigma_m^2 = 1/(2m)``). The result is a scalar of the mode ring.
    """
    try:
        scale = VARIANCE_SCALE[variant]
    except KeyError:
        raise ConfigurationError('unknown Gaussian variant %s' % variant)

    mr = ring_of(p)
    start = len(mr.ring.gens) - 2 * mr.modes
    zero_mode = start - 1

    terms = {}
    for monom, coeff in p.iterterms():
        if monom[zero_mode]:
            raise DomainError('expectation of a polynomial depending on the zero mode')

        holomorphic = monom[start:start + mr.modes]
        anti = monom[start + mr.modes:]
        if holomorphic != anti:
            continue

        for m, a in enumerate(holomorphic, start=1):
            if a:
                coeff = coeff * math.factorial(a) * QQ(1, scale * m) ** a
        key = monom[:zero_mode] + (0,) * (len(monom) - zero_mode)
        terms[key] = terms.get(key, 0) + coeff

    return mr.ring.from_dict({m: c for m, c in terms.items() if c})


def inner_product(f: ModePoly, g: ModePoly, variant: str = NEUMANN_DOT) -> ModePoly:
    """
    ``<f, g> = E[f conj(g)]``.
    """
    mr = ring_of(f)
    return wick_expectation(mr.mul(f, mr.conj(g)), variant)


def adjoint_residual(n: int, alpha, f: ModePoly, g: ModePoly) -> ModePoly:
    """
    ``<D_n,conj(alpha) f, g> - <f, (D_-n,2Q-alpha - (T phi, v_-n)) g>`` in ``L^2`` of the Neumann field, which
    vanishes identically.
    """
    if n <= 0:
        raise DomainError('adjoint relation is stated for n > 0, got %d' % n)

    mr = ring_of(f)
    alpha = mr(alpha)

    lhs = inner_product(d_alpha_apply(n, mr.conj(alpha), f), g)
    dual = d_alpha_apply(-n, 2 * mr.Q - alpha, g) - mr.mul(stress_mode_poly(n, mr.modes), g)
    rhs = inner_product(f, dual)
    return mr.reduce(lhs - rhs)
