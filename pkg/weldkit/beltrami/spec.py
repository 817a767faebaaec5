import logging
from typing import Callable, NamedTuple

import numpy as np

from weldkit.errors import DomainError

logger = logging.getLogger(__name__)

FIX_0_1_INF = 'fix_0_1_inf'
FIX_0_INF_DERIVINF = 'fix_0_inf_derivinf'
FIX_0_DERIV0_INF = 'fix_0_deriv0_inf'

NORMALIZATIONS = (FIX_0_1_INF, FIX_0_INF_DERIVINF, FIX_0_DERIV0_INF)


class BeltramiSpec:
    """
    A Beltrami differential given by an evaluator and a support annulus ``r_in <= |z| <= r_out`` (``r_out`` may be
    infinite). Calling it evaluates the differential and zeroes it outside the support.
    """
    evaluator: Callable
    r_in: float
    r_out: float
    sup_norm: float
    name: str

    def __init__(self, evaluator: Callable, r_in: float, r_out: float, sup_norm: float, name: str = 'mu'):
        if not 0 <= r_in < r_out:
            raise DomainError('invalid support annulus [%s, %s]' % (r_in, r_out))
        if sup_norm < 0:
            raise DomainError('negative sup norm %s' % sup_norm)

        self.evaluator = evaluator
        self.r_in = float(r_in)
        self.r_out = float(r_out)
        self.sup_norm = float(sup_norm)
        self.name = name

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        r = np.abs(z)
        inside = (r >= self.r_in) & (r <= self.r_out)
        out = np.zeros(z.shape, dtype=complex)
        if np.any(inside):
            out[inside] = self.evaluator(z[inside])
        return out if out.ndim else complex(out)

    @property
    def bounded(self) -> bool:
        return not np.isinf(self.r_out)

    def scaled(self, factor: complex) -> 'BeltramiSpec':
        evaluator = self.evaluator
        return BeltramiSpec(lambda z: factor * evaluator(z), self.r_in, self.r_out, abs(factor) * self.sup_norm,
                            '%s*%s' % (factor, self.name))

    def __add__(self, other: 'BeltramiSpec') -> 'BeltramiSpec':
        a, b = self, other
        return BeltramiSpec(lambda z: a(z) + b(z), min(a.r_in, b.r_in), max(a.r_out, b.r_out),
                            a.sup_norm + b.sup_norm, '%s+%s' % (a.name, b.name))

    def __repr__(self):
        return 'BeltramiSpec(%s, support=[%s, %s], sup_norm=%.4g)' % (self.name, self.r_in, self.r_out, self.sup_norm)


class FlowSpec(NamedTuple):
    normalization: str
    mu: BeltramiSpec
    symmetric: bool = False


def zero_beltrami() -> BeltramiSpec:
    return BeltramiSpec(lambda z: np.zeros(np.shape(z), dtype=complex), 2.0, 3.0, 0.0, 'zero')


def laurent_beltrami(n: int, scale: complex = 1.0) -> BeltramiSpec:
    """
    ``scale * mu_n`` with ``mu_n(z) = -n 4^n z conj(z)^(-n-1)`` on ``|z| >= 2``. Its Cauchy transform is ``z^(n+1)``
    inside the disc of radius 2.
    """
    if n < 1:
        raise DomainError('laurent beltrami differential needs n >= 1, got %s' % n)

    c = -scale * n * 4.0 ** n

    def evaluator(z):
        return c * z * np.conj(z) ** (-n - 1)

    return BeltramiSpec(evaluator, 2.0, np.inf, abs(scale) * n * 2.0 ** n, 'mu_%d' % n)


def bump(r, r_in: float, r_out: float):
    u = (2 * np.asarray(r) - r_in - r_out) / (r_out - r_in)
    return np.where(np.abs(u) < 1, (1 - u ** 2) ** 4, 0.0)


def rotation_beltrami(r_in: float, r_out: float, scale: float = 0.1) -> BeltramiSpec:
    """
    ``i scale z^2 b(|z|)`` for a smooth bump ``b``: the derivative in ``zbar`` of ``i z B(|z|)`` with ``B`` radial, so
    its normalised flow acts on the unit circle as a rotation or not at all.
    """

    def evaluator(z):
        return 1j * scale * z ** 2 * bump(np.abs(z), r_in, r_out)

    return BeltramiSpec(evaluator, r_in, r_out, abs(scale) * r_out ** 2, 'rotation')


def bump_beltrami(k: int, r_in: float, r_out: float, scale: complex = 0.1) -> BeltramiSpec:
    """
    ``scale * b(|z|) * (z/|z|)^k`` for a smooth radial bump ``b`` supported in the annulus.
    """

    def evaluator(z):
        return scale * bump(np.abs(z), r_in, r_out) * (z / np.abs(z)) ** k

    return BeltramiSpec(evaluator, r_in, r_out, abs(scale), 'bump_%d' % k)
