from typing import Tuple

import numpy as np

from weldkit.core.series import PowerSeriesMap
from weldkit.errors import SingularMapError


def schwarzian_from_derivs(d1, d2, d3) -> Tuple[np.ndarray, np.ndarray]:
    """
    Pre-Schwarzian ``f''/f'`` and Schwarzian ``(f''/f')' - (f''/f')^2 / 2`` from the first three derivatives.
    """
    d1 = np.asarray(d1)
    if np.any(d1 == 0):
        raise SingularMapError('derivative vanishes, Schwarzian undefined')

    pre = d2 / d1
    return pre, d3 / d1 - 1.5 * pre ** 2


def schwarzian(f: PowerSeriesMap, z):
    d = f.derivs(z, 3)
    pre, s = schwarzian_from_derivs(d[1], d[2], d[3])
    if np.ndim(z) == 0:
        return complex(pre), complex(s)
    return pre, s
