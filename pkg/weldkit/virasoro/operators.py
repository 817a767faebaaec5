"""
Exact action of the Heisenberg, Feigin-Fuchs and Witt operators on mode polynomials.

Heisenberg generators ``A_n`` and the Feigin-Fuchs operators ``L_n`` act on holomorphic polynomials in ``phi_m``;
the Witt operators ``D_n`` act on polynomials in ``c``, ``phi_m`` and ``phi_bar_m``, where ``phi_m`` are the
positive Fourier modes of the field ``2 Re(sum_m phi_m z^m)``.
"""
import logging
from typing import Callable

from weldkit.errors import DomainError, TruncationError
from weldkit.model import Partition
from weldkit.virasoro.ring import ModePoly, ModeRing, mode_ring

logger = logging.getLogger(__name__)

FIRST_MODE_GENERATOR = 7


def ring_of(p: ModePoly) -> ModeRing:
    return mode_ring((p.ring.ngens - FIRST_MODE_GENERATOR) // 2)


def _mode(mr: ModeRing, k: int) -> ModePoly:
    # phi_k for k > 0 and phi_bar_{-k} for k < 0
    if k > 0:
        return mr.phi(k)
    return mr.phi_bar(-k)


def _heisenberg(mr: ModeRing, n: int, alpha: ModePoly, p: ModePoly) -> ModePoly:
    """
    ``A_n p``; annihilators beyond the truncation act as zero, creators beyond it raise on non-zero input.
    """
    if not p:
        return p
    if n > 0:
        if n > mr.modes:
            return mr.zero
        return mr.reduce(mr.I * mr.sqrt2 / 2 * p.diff(mr.phi(n)))
    if n < 0:
        return mr.reduce(-mr.I * mr.sqrt2 * (-n) * mr.phi(-n) * p)
    return mr.reduce(mr.I * mr.sqrt2 / 2 * (mr.Q - alpha) * p)


def heisenberg_apply(n: int, alpha, p: ModePoly) -> ModePoly:
    """
    Applies ``A_n = (i/sqrt2) d/dphi_n``, ``A_-n = (sqrt2/i) n phi_n`` or ``A_0 = (i/sqrt2)(Q - alpha)``.
    """
    mr = ring_of(p)
    if abs(n) > mr.modes:
        raise TruncationError('Heisenberg index %d beyond the truncation %d' % (n, mr.modes))
    return _heisenberg(mr, n, mr(alpha), p)


def ff_apply(n: int, alpha, p: ModePoly) -> ModePoly:
    """
    Applies the Feigin-Fuchs operator ``L_n``: ``(i/sqrt2) Q n A_n + 1/2 sum_m A_(n-m) A_m`` for ``n != 0`` and
    ``Delta_alpha + sum_(m>0) A_-m A_m`` for ``n = 0``.
    """
    mr = ring_of(p)
    alpha = mr(alpha)

    if n == 0:
        out = mr.delta(alpha) * p
        for m in range(1, mr.modes + 1):
            out += _heisenberg(mr, -m, alpha, _heisenberg(mr, m, alpha, p))
        return mr.reduce(out)

    out = mr.I * mr.sqrt2 / 2 * mr.Q * n * _heisenberg(mr, n, alpha, p)
    quadratic = mr.zero
    for m in range(n - mr.modes, mr.modes + 1):
        # for n != 0 the two factors commute; annihilate first so creators see only surviving terms
        hi, lo = max(m, n - m), min(m, n - m)
        q = _heisenberg(mr, hi, alpha, p)
        if q:
            quadratic += _heisenberg(mr, lo, alpha, q)
    return mr.reduce(out + quadratic / 2)


def ff_lower(k: Partition, alpha, p: ModePoly) -> ModePoly:
    """
    ``L_-k p = ... L_-3^k3 L_-2^k2 L_-1^k1 p``.
    """
    for m, count in enumerate(k.multiplicities, start=1):
        for _ in range(count):
            p = ff_apply(-m, alpha, p)
    return p


def ff_raise(k: Partition, alpha, p: ModePoly) -> ModePoly:
    """
    ``L_k p = L_1^k1 L_2^k2 L_3^k3 ... p``.
    """
    for m in range(len(k.multiplicities), 0, -1):
        for _ in range(k.multiplicities[m - 1]):
            p = ff_apply(m, alpha, p)
    return p


def ff_state(k: Partition, alpha, modes: int = None) -> ModePoly:
    """
    The descendant ``Psi_alpha,k = L_-k 1`` of the highest weight state.
    """
    mr = mode_ring(modes)
    if k.weight > mr.modes:
        raise TruncationError('partition of weight %d needs more than %d modes' % (k.weight, mr.modes))
    return ff_lower(k, alpha, mr.one)


def _witt(mr: ModeRing, n: int, p: ModePoly, zero_mode: Callable[[ModePoly], ModePoly]) -> ModePoly:
    out = mr.zero
    if not p:
        return out

    if n == 0:
        for m in range(1, mr.modes + 1):
            out += m * mr.phi(m) * p.diff(mr.phi(m)) - m * mr.phi_bar(m) * p.diff(mr.phi_bar(m))
        return out

    k = abs(n)
    z = zero_mode(p)
    if n > 0:
        if k <= mr.modes:
            out += k * mr.Q * p.diff(mr.phi(k))
        if z:
            out -= k * _mode(mr, -k) * z
        for m in range(1, mr.modes + 1):
            dp = p.diff(mr.phi(m))
            if dp and m != k:
                out += (m - k) * _mode(mr, m - k) * dp
            db = p.diff(mr.phi_bar(m))
            if db:
                out -= (m + k) * _mode(mr, -(m + k)) * db
    else:
        if k <= mr.modes:
            out -= k * mr.Q * p.diff(mr.phi_bar(k))
        if z:
            out += k * _mode(mr, k) * z
        for m in range(1, mr.modes + 1):
            dp = p.diff(mr.phi(m))
            if dp:
                out += (m + k) * _mode(mr, m + k) * dp
            db = p.diff(mr.phi_bar(m))
            if db and m != k:
                out -= (m - k) * _mode(mr, k - m) * db
    return out


def witt_apply(n: int, p: ModePoly) -> ModePoly:
    """
    Applies the Witt generator ``D_n`` generated by the diffeomorphism action ``phi . h = phi o h + Q log(zh'/h)``
    with the zero mode ``c`` as a polynomial variable.
    """
    mr = ring_of(p)
    try:
        return mr.reduce(_witt(mr, n, p, lambda q: q.diff(mr.c)))
    except TruncationError:
        raise TruncationError('D_%d of a polynomial of degree %d leaves the truncation %d' % (
            n, mr.mode_degree(p), mr.modes))


def d_alpha_apply(n: int, alpha, p: ModePoly) -> ModePoly:
    """
    Applies ``D_n,alpha``: ``D_n`` with ``d/dc`` replaced by multiplication by ``alpha/2``.
    """
    mr = ring_of(p)
    alpha = mr(alpha)
    if p and p.degree(mr.c) > 0:
        raise DomainError('D_n,alpha acts on polynomials without zero mode')
    return mr.reduce(_witt(mr, n, p, lambda q: alpha * q / 2))


def stress_mode_poly(n: int, modes: int = None) -> ModePoly:
    """
    The pairing ``(T phi, v_-n)`` of the stress-energy tensor ``-(dP phi)^2 + Q d^2 P phi`` of the disc with the
    vector field ``-z^(1-n) d/dz``: ``sum_(a+b=n) a b phi_a phi_b - Q n (n-1) phi_n``.
    """
    mr = mode_ring(modes)
    if n < 0:
        raise DomainError('stress pairing needs n >= 0, got %d' % n)
    if n < 2:
        return mr.zero
    if n > mr.modes:
        raise TruncationError('stress pairing of order %d needs more than %d modes' % (n, mr.modes))

    out = -mr.Q * n * (n - 1) * mr.phi(n)
    for a in range(1, n):
        out += a * (n - a) * mr.phi(a) * mr.phi(n - a)
    return out


def witt_creation_apply(n: int, alpha, p: ModePoly) -> ModePoly:
    """
    ``D_-n,2alpha - (T phi, v_-n)`` on holomorphic polynomials, written in the reflected field ``phi -> -phi``. On
    holomorphic polynomials this is the Feigin-Fuchs creation operator ``L_-n,alpha``.
    """
    if n <= 0:
        raise DomainError('creation operators have n > 0, got %d' % n)
    mr = ring_of(p)
    if not mr.is_holomorphic(p):
        raise DomainError('creation operator identity holds on holomorphic polynomials only')

    q = mr.flip(p)
    q = d_alpha_apply(-n, 2 * mr(alpha), q) - mr.mul(stress_mode_poly(n, mr.modes), q)
    return mr.flip(q)
