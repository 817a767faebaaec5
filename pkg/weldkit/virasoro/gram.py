import logging
from functools import lru_cache
from typing import Dict, Iterator, List, Tuple

import sympy as sp
from sympy.polys.domains import QQ
from sympy.polys.rings import PolyElement, ring

from weldkit.errors import EvaluationError, TruncationError
from weldkit.model import Partition
from weldkit.virasoro.operators import ff_state
from weldkit.virasoro.ring import ModePoly, ModeRing, mode_ring
from weldkit.virasoro.wick import HALF_LOG, inner_product

logger = logging.getLogger(__name__)

MAX_LEVEL = 6

VERMA_RING, CENTRAL, WEIGHT = ring('c_L,h', QQ)

Word = Tuple[int, ...]


def partitions(level: int) -> Iterator[Partition]:
    """
    Partitions of ``level``, largest parts first: ``(level)``, ``(level-1, 1)``, ..., ``(1, ..., 1)``.
    """
    def parts(n: int, largest: int):
        if n == 0:
            yield ()
            return
        for first in range(min(n, largest), 0, -1):
            for rest in parts(n - first, first):
                yield (first,) + rest

    for p in parts(level, level):
        yield Partition.of(*p)


def _word(k: Partition) -> Word:
    # L_-k = ... L_-2^k2 L_-1^k1, leftmost factor first
    parts = []
    for m, count in enumerate(k.multiplicities, start=1):
        parts.extend([m] * count)
    return tuple(sorted(parts, reverse=True))


@lru_cache(maxsize=None)
def _annihilate(n: int, word: Word) -> Tuple[Tuple[Word, PolyElement], ...]:
    """
    ``L_n L_-j1 ... L_-jr |h>`` for ``n > 0`` in the Verma module of central charge ``c_L`` and weight ``h``, by
    commuting ``L_n`` to the right with ``[L_n, L_-j] = (n + j) L_(n-j) + c_L/12 (n^3 - n) delta_nj``.
    """
    if not word:
        return ()

    j, rest = word[0], word[1:]
    out: Dict[Word, PolyElement] = {}

    def add(w, a):
        out[w] = out.get(w, VERMA_RING.zero) + a

    for w, a in _annihilate(n, rest):
        add((j,) + w, a)

    d = n - j
    if d > 0:
        for w, a in _annihilate(d, rest):
            add(w, (n + j) * a)
    elif d == 0:
        add(rest, (n + j) * (WEIGHT + sum(rest)) + CENTRAL * (n ** 3 - n) / 12)
    else:
        add((-d,) + rest, VERMA_RING(n + j))

    return tuple((w, a) for w, a in out.items() if a)


def verma_pairing(k: Partition, k2: Partition) -> PolyElement:
    """
    The constant ``B(k, k2)`` with ``L_k2 L_-k |h> = B(k, k2) |h>``, a polynomial in ``c_L`` and ``h``. Zero between
    different levels.
    """
    if k.weight != k2.weight:
        return VERMA_RING.zero

    state = {_word(k): VERMA_RING.one}
    for n in _word(k2):
        following: Dict[Word, PolyElement] = {}
        for w, a in state.items():
            for w2, b in _annihilate(n, w):
                following[w2] = following.get(w2, VERMA_RING.zero) + a * b
        state = {w: a for w, a in following.items() if a}

    leftover = [w for w in state if w]
    if leftover:
        raise EvaluationError('pairing did not reduce to the highest weight state: %s' % leftover)
    return state.get((), VERMA_RING.zero)


def _to_modes(mr: ModeRing, value: PolyElement, alpha) -> ModePoly:
    central = mr.central_charge()
    weight = mr.delta(alpha)
    out = mr.zero
    for (a, b), coeff in value.iterterms():
        out += central ** a * weight ** b * mr.ring.domain_new(coeff)
    return mr.reduce(out)


def _check_level(k: Partition, mr: ModeRing):
    if k.weight > min(MAX_LEVEL, mr.modes):
        raise TruncationError('partition weight %d beyond level %d' % (k.weight, min(MAX_LEVEL, mr.modes)))


def basis_state_gram(alpha, k: Partition, k2: Partition, modes: int = None) -> Tuple[ModePoly, ModePoly]:
    """
    Builds ``Psi_alpha,k`` and its Gram constant with ``Psi_2Q-conj(alpha),k2``. The constant is computed once by
    commutator reduction in the Verma module and once as the Gaussian inner product of the two Feigin-Fuchs states,
    and the two must agree exactly.
    """
    mr = mode_ring(modes)
    _check_level(k, mr)
    _check_level(k2, mr)
    alpha = mr(alpha)

    state = ff_state(k, alpha, mr.modes)
    dual = ff_state(k2, 2 * mr.Q - mr.conj(alpha), mr.modes)

    by_commutators = _to_modes(mr, verma_pairing(k, k2), alpha)
    by_wick = inner_product(state, dual, HALF_LOG)

    if mr.reduce(by_commutators - by_wick):
        raise EvaluationError('Gram constant of %s and %s differs between commutator and Wick evaluation: %s vs %s' % (
            k, k2, mr.as_expr(by_commutators), mr.as_expr(by_wick)))

    logger.debug('gram %s %s = %s', k.multiplicities, k2.multiplicities, by_commutators)
    return state, by_commutators


def gram_matrix(alpha=None, level: int = 2, Q=None) -> sp.Matrix:
    """
    Gram matrix of the level ``level`` states ``L_-k |Delta_alpha>`` with ``c_L = 1 + 6 Q^2``, rows and columns in the
    order of ``partitions(level)``. ``alpha`` and ``Q`` default to the symbols ``alpha`` and ``Q``.
    """
    if level < 0 or level > MAX_LEVEL:
        raise TruncationError('Gram level %d outside 0..%d' % (level, MAX_LEVEL))

    alpha = sp.Symbol('alpha') if alpha is None else sp.sympify(alpha)
    Q = sp.Symbol('Q') if Q is None else sp.sympify(Q)
    substitution = {
        sp.Symbol('c_L'): 1 + 6 * Q ** 2,
        sp.Symbol('h'): alpha / 2 * (Q - alpha / 2),
    }

    basis: List[Partition] = list(partitions(level))
    return sp.Matrix(len(basis), len(basis), lambda i, j: sp.expand(
        verma_pairing(basis[i], basis[j]).as_expr().subs(substitution)))


def gram_determinant(alpha=None, level: int = 2, Q=None) -> sp.Expr:
    return sp.factor(gram_matrix(alpha, level, Q).det())
