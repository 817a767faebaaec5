import logging
from functools import lru_cache

import sympy as sp
from sympy.polys.domains import QQ
from sympy.polys.rings import PolyElement, PolyRing

from weldkit.errors import DomainError, TruncationError

logger = logging.getLogger(__name__)

DEFAULT_MODES = 12

# generators carrying coefficients; everything after them is a field mode
COEFFICIENT_SYMBOLS = ('I', 'sqrt2', 'Q', 'gamma', 'alpha', 'alpha_bar')

ModePoly = PolyElement


class ModeRing:
    """
    Polynomials in the zero mode ``c`` and the field modes ``phi_1..phi_M``, ``phi_bar_1..phi_bar_M`` with exact
    rational coefficients extended by ``Q``, ``gamma``, ``alpha`` and its conjugate, and the formal units ``I`` and
    ``sqrt2``. Products are reduced with ``I**2 = -1`` and ``sqrt2**2 = 2``.
    """

    def __init__(self, modes: int = DEFAULT_MODES):
        if modes < 1:
            raise DomainError('mode ring needs at least one mode, got %d' % modes)

        self.modes = modes
        names = list(COEFFICIENT_SYMBOLS) + ['c']
        names += ['phi_%d' % m for m in range(1, modes + 1)]
        names += ['phi_bar_%d' % m for m in range(1, modes + 1)]
        self.ring = PolyRing(names, QQ)
        self.symbols = self.ring.symbols

        gens = self.ring.gens
        self.I, self.sqrt2, self.Q, self.gamma, self.alpha, self.alpha_bar, self.c = gens[:7]
        self._phi = gens[7:7 + modes]
        self._phi_bar = gens[7 + modes:]
        self._first_mode = len(COEFFICIENT_SYMBOLS)

        swaps = [(self.alpha, self.alpha_bar), (self.alpha_bar, self.alpha), (self.I, -self.I)]
        swaps += [(p, q) for p, q in zip(self._phi, self._phi_bar)]
        swaps += [(q, p) for p, q in zip(self._phi, self._phi_bar)]
        self._conjugation = swaps
        self._flip = [(p, -p) for p in self._phi] + [(q, -q) for q in self._phi_bar]

    @property
    def zero(self) -> ModePoly:
        return self.ring.zero

    @property
    def one(self) -> ModePoly:
        return self.ring.one

    def __call__(self, value) -> ModePoly:
        if isinstance(value, PolyElement):
            if value.ring != self.ring:
                raise DomainError('polynomial from a different mode ring')
            return value
        return self.ring(value)

    def phi(self, m: int) -> ModePoly:
        self._check_mode(m)
        return self._phi[m - 1]

    def phi_bar(self, m: int) -> ModePoly:
        self._check_mode(m)
        return self._phi_bar[m - 1]

    def _check_mode(self, m: int):
        if not 1 <= m <= self.modes:
            raise TruncationError('mode %d outside the truncation 1..%d' % (m, self.modes))

    def reduce(self, p: ModePoly) -> ModePoly:
        """
        Applies ``I**2 = -1`` and ``sqrt2**2 = 2`` to every term.
        """
        terms = {}
        for monom, coeff in self(p).iterterms():
            i, r = monom[0], monom[1]
            if i > 1 or r > 1:
                coeff = coeff * (-1) ** (i // 2) * 2 ** (r // 2)
                monom = (i % 2, r % 2) + monom[2:]
            terms[monom] = terms.get(monom, 0) + coeff
        return self.ring.from_dict({m: c for m, c in terms.items() if c})

    def mul(self, p: ModePoly, q: ModePoly) -> ModePoly:
        return self.reduce(self(p) * self(q))

    def conj(self, p: ModePoly) -> ModePoly:
        """
        Complex conjugation: ``phi_m <-> phi_bar_m``, ``alpha <-> alpha_bar`` and ``I -> -I``. ``Q``, ``gamma`` and
        ``c`` are real.
        """
        return self(p).compose(list(self._conjugation))

    def flip(self, p: ModePoly) -> ModePoly:
        """
        The field reflection ``phi -> -phi``.
        """
        return self(p).compose(list(self._flip))

    def delta(self, alpha) -> ModePoly:
        """
        The conformal weight ``alpha/2 (Q - alpha/2)``.
        """
        alpha = self(alpha)
        return self.reduce(alpha * (self.Q - alpha / 2) / 2)

    def central_charge(self) -> ModePoly:
        return 1 + 6 * self.Q ** 2

    def is_scalar(self, p: ModePoly) -> bool:
        return all(not any(monom[self._first_mode:]) for monom in self(p).itermonoms())

    def is_holomorphic(self, p: ModePoly) -> bool:
        start = self._first_mode + 1 + self.modes
        return all(not any(monom[start:]) and not monom[self._first_mode] for monom in self(p).itermonoms())

    def mode_degree(self, p: ModePoly) -> int:
        p = self(p)
        if not p:
            return 0
        return max(sum(monom[self._first_mode:]) for monom in p.itermonoms())

    def as_expr(self, p: ModePoly, gamma: bool = False) -> sp.Expr:
        """
        Converts to a sympy expression with ``I`` and ``sqrt2`` evaluated. With ``gamma=True`` the relation
        ``Q = gamma/2 + 2/gamma`` is substituted.
        """
        expr = self(p).as_expr()
        unit, root, q, g = self.symbols[:4]
        expr = expr.subs({unit: sp.I, root: sp.sqrt(2)})
        if gamma:
            expr = expr.subs(q, g / 2 + 2 / g)
        return sp.expand(expr)


def mode_ring(modes: int = None) -> ModeRing:
    return _mode_ring(modes or DEFAULT_MODES)


@lru_cache(maxsize=8)
def _mode_ring(modes: int) -> ModeRing:
    return ModeRing(modes)
