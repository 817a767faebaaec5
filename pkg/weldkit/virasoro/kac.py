import logging
import math
from typing import List

from weldkit.errors import DomainError
from weldkit.model import KacEntry, KacMembership

logger = logging.getLogger(__name__)

PLUS = 'plus'
MINUS = 'minus'
OUTSIDE = 'outside'

DEFAULT_TOLERANCE = 1e-9


def kac_value(sign: str, r: int, s: int, gamma: float) -> float:
    """
    ``(1 + r) gamma/2 + (1 + s) 2/gamma`` for ``plus`` and ``(1 - r) gamma/2 + (1 - s) 2/gamma`` for ``minus``.
    """
    if sign == PLUS:
        return (1 + r) * gamma / 2 + (1 + s) * 2 / gamma
    if sign == MINUS:
        return (1 - r) * gamma / 2 + (1 - s) * 2 / gamma
    raise ValueError('unknown Kac table sign %s' % sign)


def _check_gamma(gamma: float):
    if not gamma > 0:
        raise DomainError('gamma must be positive, got %s' % gamma)


def kac_table(gamma: float, r_max: int, s_max: int) -> List[KacEntry]:
    _check_gamma(gamma)
    return [
        KacEntry(sign, r, s, kac_value(sign, r, s, gamma))
        for sign in (MINUS, PLUS)
        for r in range(1, r_max + 1)
        for s in range(1, s_max + 1)
    ]


def kac_membership(alpha: complex, gamma: float, tol: float = DEFAULT_TOLERANCE) -> KacMembership:
    """
    Decides whether ``alpha`` lies on one of the two Kac tables, returning the first witness ``(r, s)`` found. Both
    tables are real; their values grow linearly in ``r`` and ``s``, so the scan is bounded by ``|alpha|``.
    """
    _check_gamma(gamma)
    alpha = complex(alpha)
    if abs(alpha.imag) > tol:
        return KacMembership(OUTSIDE)

    x = alpha.real
    r_max = 1 + int(math.ceil(2 * (abs(x) + tol) / gamma))
    s_max = 1 + int(math.ceil(gamma * (abs(x) + tol) / 2))

    for sign in (MINUS, PLUS):
        for r in range(1, r_max + 1):
            for s in range(1, s_max + 1):
                if abs(kac_value(sign, r, s, gamma) - x) <= tol:
                    logger.debug('alpha %s on kac %s with (r, s) = (%d, %d)', alpha, sign, r, s)
                    return KacMembership(sign, r, s)

    return KacMembership(OUTSIDE)
