import logging
from typing import Tuple

import numpy as np

from weldkit.core.schwarzian import schwarzian_from_derivs
from weldkit.core.series import PowerSeriesMap
from weldkit.errors import InjectivityError

logger = logging.getLogger(__name__)

DIAGONAL_THRESHOLD = 1e-3


def _near_diagonal(psi: PowerSeriesMap, z, zeta):
    """
    Expansion around ``zeta`` in ``d = z - zeta``: with ``psi'(z) = psi'(zeta) P(d)`` and
    ``psi(z) - psi(zeta) = d psi'(zeta) R(d)``, the kernel is ``(1/(P R) - 1) / d``.
    """
    d = z - zeta
    derivs = psi.derivs(zeta, 4)
    ratios = derivs[1:] / derivs[1]

    p = [ratios[0], ratios[1], ratios[2] / 2, ratios[3] / 6]
    r = [ratios[0], ratios[1] / 2, ratios[2] / 6, ratios[3] / 24]
    pr = [p[0] * r[0],
          p[1] + r[1],
          p[2] + p[1] * r[1] + r[2],
          p[3] + p[2] * r[1] + p[1] * r[2] + r[3]]

    s1 = -pr[1]
    s2 = -pr[2] - pr[1] * s1
    s3 = -pr[3] - pr[2] * s1 - pr[1] * s2
    return s1 + s2 * d + s3 * d ** 2


def psi_kernel(psi: PowerSeriesMap, z, zeta):
    """
    ``K(z, zeta) = psi'(zeta)^2 / (psi'(z) (psi(z) - psi(zeta))) - 1 / (z - zeta)``, holomorphic in both variables.
    """
    z, zeta = np.broadcast_arrays(np.asarray(z, dtype=complex), np.asarray(zeta, dtype=complex))
    out = np.empty(z.shape, dtype=complex)

    scale = np.maximum(np.maximum(np.abs(z), np.abs(zeta)), 1e-300)
    close = np.abs(z - zeta) < DIAGONAL_THRESHOLD * scale

    if np.any(close):
        out[close] = _near_diagonal(psi, z[close], zeta[close])

    far = ~close
    if np.any(far):
        a, b = z[far], zeta[far]
        fa = psi.derivs(a, 1)
        fb = psi.derivs(b, 1)
        diff = fa[0] - fb[0]
        if np.any(diff == 0):
            raise InjectivityError('psi takes the same value at distinct points')
        out[far] = fb[1] ** 2 / (fa[1] * diff) - 1 / (a - b)

    return complex(out) if out.ndim == 0 else out


def kernel_diagonal_derivatives(psi: PowerSeriesMap, z) -> Tuple[np.ndarray, np.ndarray]:
    """
    Closed forms of the diagonal derivatives ``d/dz K`` and ``d/dzeta K`` at ``z = zeta`` in terms of the
    pre-Schwarzian ``A`` and Schwarzian ``S`` of psi.
    """
    d = psi.derivs(z, 3)
    pre, s = schwarzian_from_derivs(d[1], d[2], d[3])
    return 0.75 * pre ** 2 - 2 / 3 * s, -5 / 6 * s - 1.5 * pre ** 2


def fit_kernel_diagonal_derivatives(psi: PowerSeriesMap, z, radius: float = 1e-2,
                                    n: int = 16) -> Tuple[np.ndarray, np.ndarray]:
    """
    Diagonal derivatives read off the first Fourier coefficient of kernel samples on small circles around the
    diagonal, in the first and in the second variable.
    """
    z = np.asarray(z, dtype=complex)
    e = np.exp(2j * np.pi * np.arange(n) / n)
    shifted = z[..., None] + radius * e
    base = np.broadcast_to(z[..., None], shifted.shape)

    dz = np.mean(psi_kernel(psi, shifted, base) / e, axis=-1) / radius
    dzeta = np.mean(psi_kernel(psi, base, shifted) / e, axis=-1) / radius
    return dz, dzeta
