import logging
import math

from weldkit.errors import DomainError
from weldkit.model import Constants

logger = logging.getLogger(__name__)


def constants_from_kappa(kappa: float) -> Constants:
    if not 0 < kappa <= 4:
        raise DomainError('kappa out of range %s' % kappa)

    gamma = math.sqrt(kappa)
    Q = gamma / 2 + 2 / gamma
    c_m = 1 - 6 * (2 / gamma - gamma / 2) ** 2
    c_L = 1 + 6 * Q ** 2

    return Constants(kappa=kappa, gamma=gamma, Q=Q, c_m=c_m, c_L=c_L)


def constants_from_gamma(gamma: float) -> Constants:
    if not 0 < gamma <= 2:
        raise DomainError('gamma out of range %s' % gamma)

    return constants_from_kappa(gamma ** 2)
