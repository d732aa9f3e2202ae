""" Exact integer Laurent polynomials in one variable t, with Alexander-style normalization. """

import logging
from fractions import Fraction
from typing import Dict, Mapping, Optional

import sympy as sp

from .errors import NotSymmetrizable

log = logging.getLogger(__name__)

# Symbol used when converting to and from sympy expressions
t = sp.Symbol('t')


class LaurentPoly:
    ''' Immutable integer Laurent polynomial stored as {exponent: nonzero coefficient}.

        The zero polynomial is the empty map. Coefficients are Python ints, so they never overflow.
    '''
    __slots__ = ('_coeffs',)

    def __init__(self, coefficients: Optional[Mapping[int, int]] = None):
        coeffs = {}
        for exp, coeff in (coefficients or {}).items():
            coeff = int(coeff)
            if coeff != 0:
                coeffs[int(exp)] = coeff
        self._coeffs = coeffs

    @classmethod
    def monomial(cls, coeff: int, exp: int = 0) -> 'LaurentPoly':
        return cls({exp: coeff})

    @classmethod
    def from_sympy(cls, expr, symbol=t) -> 'LaurentPoly':
        ''' Convert a sympy expression that is a Laurent polynomial in `symbol` with integer coefficients.

            :param expr: sympy expression
            :param symbol: the variable (default t)

            :return: LaurentPoly
        '''
        coeffs: Dict[int, int] = {}
        for term in sp.Add.make_args(sp.expand(expr)):
            if term == 0:
                continue
            coeff, exp = term.as_coeff_exponent(symbol)
            if not (coeff.is_integer and exp.is_integer):
                raise ValueError(f'not an integer Laurent polynomial term: {term}')
            coeffs[int(exp)] = coeffs.get(int(exp), 0) + int(coeff)
        return cls(coeffs)

    def to_sympy(self, symbol=t):
        return sum((sp.Integer(c) * symbol**e for e, c in self._coeffs.items()), sp.Integer(0))

    @property
    def coefficients(self) -> Dict[int, int]:
        return dict(self._coeffs)

    def coefficient(self, exp: int) -> int:
        return self._coeffs.get(exp, 0)

    def is_zero(self) -> bool:
        return not self._coeffs

    @property
    def min_exp(self) -> int:
        return min(self._coeffs)

    @property
    def max_exp(self) -> int:
        return max(self._coeffs)

    def shift(self, k: int) -> 'LaurentPoly':
        ''' Multiply by t^k. '''
        return LaurentPoly({e + k: c for e, c in self._coeffs.items()})

    def substitute_inverse(self) -> 'LaurentPoly':
        ''' p(t^-1). '''
        return LaurentPoly({-e: c for e, c in self._coeffs.items()})

    def __add__(self, other):
        return poly_add(self, _coerce(other))

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self._coeffs.items()})

    def __sub__(self, other):
        return poly_add(self, -_coerce(other))

    def __rsub__(self, other):
        return poly_add(_coerce(other), -self)

    def __mul__(self, other):
        return poly_mul(self, _coerce(other))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError('negative powers are only defined for monomials; use shift()')
        result = ONE
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self):
        return hash(tuple(sorted(self._coeffs.items())))

    def __repr__(self):
        return f'LaurentPoly({to_text(self)!r})'

    def __str__(self):
        return to_text(self)


def _coerce(value) -> LaurentPoly:
    if isinstance(value, LaurentPoly):
        return value
    if isinstance(value, int):
        return LaurentPoly.monomial(value)
    raise TypeError(f'cannot combine LaurentPoly with {type(value).__name__}')


ONE = LaurentPoly({0: 1})
T = LaurentPoly({1: 1})


def poly_add(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    coeffs = a.coefficients
    for exp, coeff in b.coefficients.items():
        coeffs[exp] = coeffs.get(exp, 0) + coeff
    return LaurentPoly(coeffs)


def poly_mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    coeffs: Dict[int, int] = {}
    for ea, ca in a.coefficients.items():
        for eb, cb in b.coefficients.items():
            coeffs[ea + eb] = coeffs.get(ea + eb, 0) + ca * cb
    return LaurentPoly(coeffs)


def poly_eval_int(p: LaurentPoly, x: int) -> Fraction:
    ''' Evaluate p at a nonzero integer exactly.

        :param LaurentPoly p: polynomial
        :param int x: evaluation point, nonzero

        :return: Fraction value
    '''
    if x == 0:
        raise ValueError('cannot evaluate a Laurent polynomial at 0')
    base = Fraction(x)
    return sum((c * base**e for e, c in p.coefficients.items()), Fraction(0))


def normalize_alexander(p: LaurentPoly) -> LaurentPoly:
    ''' Return the unit multiple ±t^k·p that is symmetric under t -> t^-1 and has q(1) >= 0.

        When q(1) = 0 both signs qualify; the one with positive top coefficient is chosen.

        :param LaurentPoly p: nonzero polynomial

        :return: normalized LaurentPoly
    '''
    if p.is_zero():
        raise NotSymmetrizable('the zero polynomial has no symmetric unit multiple')
    span = p.min_exp + p.max_exp
    if span % 2:
        raise NotSymmetrizable(f'exponent range of {p} has odd width, no shift centres it')
    q = p.shift(-span // 2)
    if q != q.substitute_inverse():
        raise NotSymmetrizable(f'{p} is not symmetric after centring')
    value = poly_eval_int(q, 1)
    if value < 0 or (value == 0 and q.coefficient(q.max_exp) < 0):
        q = -q
    return q


def equal_up_to_units(a: LaurentPoly, b: LaurentPoly) -> bool:
    ''' The relation a ≐ b: equal after normalize_alexander on both sides. '''
    return normalize_alexander(a) == normalize_alexander(b)


def _format_term(coeff: int, exp: int) -> str:
    magnitude = abs(coeff)
    if exp == 0:
        return str(magnitude)
    power = 't' if exp == 1 else f't^{exp}'
    return power if magnitude == 1 else f'{magnitude}*{power}'


def to_text(p: LaurentPoly) -> str:
    ''' Render with ascending exponents, e.g. "4*t^-1 - 7 + 4*t". '''
    if p.is_zero():
        return '0'
    parts = []
    for i, (exp, coeff) in enumerate(sorted(p.coefficients.items())):
        term = _format_term(coeff, exp)
        if i == 0:
            parts.append(f'-{term}' if coeff < 0 else term)
        else:
            parts.append(f'- {term}' if coeff < 0 else f'+ {term}')
    return ' '.join(parts)


def to_json(p: LaurentPoly) -> Dict[str, int]:
    return {str(e): c for e, c in sorted(p.coefficients.items())}


def from_json(data: Mapping[str, int]) -> LaurentPoly:
    return LaurentPoly({int(e): int(c) for e, c in data.items()})
