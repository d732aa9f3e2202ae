"""
Framed-link surgery bookkeeping at the level of linking data.

Coefficients are Fractions, or None for the deletable coefficient infinity. Rational components
become integral chains through negative continued fractions; framings of curves lift to a cyclic
branched cover by the blackboard arithmetic in BlackboardFraming / lift_framing.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .errors import (ChainAttachError, DivisionByZero, InvalidDiagram, InvalidFraction,
                     NonIntegralCoefficient, OddHalving, UnsupportedLift)
from .lattice import exact_det

log = logging.getLogger(__name__)

INFINITY = None


def parse_fraction(text: str) -> Fraction:
    ''' Parse "p/q" or "p" exactly. '''
    try:
        value = Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise InvalidFraction(f'not a fraction: {text!r}') from None
    return value


def parse_coefficient(text) -> Optional[Fraction]:
    if isinstance(text, str) and text.strip().lower() in ('inf', 'infinity', '1/0'):
        return INFINITY
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    return parse_fraction(str(text))


def format_fraction(value: Optional[Fraction]) -> str:
    if value is INFINITY:
        return 'inf'
    value = Fraction(value)
    return str(value.numerator) if value.denominator == 1 else f'{value.numerator}/{value.denominator}'


@dataclass(frozen=True)
class SurgeryComponent:
    name: str
    coefficient: Optional[Fraction]
    writhe: int = 0

    @property
    def is_deletable(self) -> bool:
        return self.coefficient is INFINITY


class SurgeryDiagram:
    ''' Framed link: components with coefficients and writhes plus a symmetric linking table. '''

    def __init__(self, components: Sequence[SurgeryComponent], links: Optional[Mapping[Tuple[str, str], int]] = None):
        self.components: Tuple[SurgeryComponent, ...] = tuple(components)
        names = [c.name for c in self.components]
        if len(set(names)) != len(names):
            raise InvalidDiagram(f'duplicate component names in {names}')
        self._links: Dict[frozenset, int] = {}
        for (a, b), value in (links or {}).items():
            if a == b:
                raise InvalidDiagram(f'self-linking of {a} belongs in its coefficient, not the linking table')
            if a not in names or b not in names:
                raise InvalidDiagram(f'linking between unknown components {a}, {b}')
            key = frozenset((a, b))
            if key in self._links and self._links[key] != int(value):
                raise InvalidDiagram(f'asymmetric linking for {a}, {b}: {self._links[key]} vs {value}')
            if int(value):
                self._links[key] = int(value)

    @property
    def names(self) -> List[str]:
        return [c.name for c in self.components]

    def component(self, name: str) -> SurgeryComponent:
        for c in self.components:
            if c.name == name:
                return c
        raise InvalidDiagram(f'no component named {name!r}')

    def linking(self, a: str, b: str) -> int:
        if a == b:
            return 0
        return self._links.get(frozenset((a, b)), 0)

    def links(self) -> Dict[Tuple[str, str], int]:
        return {tuple(sorted(key)): value for key, value in self._links.items()}

    def without_deletable(self) -> 'SurgeryDiagram':
        ''' Drop the infinity-framed components. '''
        kept = [c for c in self.components if not c.is_deletable]
        names = {c.name for c in kept}
        links = {(a, b): v for (a, b), v in self.links().items() if a in names and b in names}
        return SurgeryDiagram(kept, links)

    def to_json(self) -> dict:
        return {'components': [
            {'name': c.name,
             'coeff': format_fraction(c.coefficient),
             'writhe': c.writhe,
             'links': {other: self.linking(c.name, other) for other in self.names
                       if other != c.name and self.linking(c.name, other)}}
            for c in self.components]}

    @classmethod
    def from_json(cls, data: Mapping) -> 'SurgeryDiagram':
        try:
            components = [SurgeryComponent(entry['name'], parse_coefficient(entry['coeff']), int(entry.get('writhe', 0)))
                          for entry in data['components']]
            links = {}
            for entry in data['components']:
                for other, value in (entry.get('links') or {}).items():
                    links[(entry['name'], other)] = int(value)
        except (KeyError, TypeError) as e:
            raise InvalidDiagram(f'malformed diagram JSON: {e}') from None
        return cls(components, links)

    def __repr__(self):
        return f'SurgeryDiagram({self.to_json()})'


def linking_matrix(d: SurgeryDiagram, names: Optional[Sequence[str]] = None) -> List[List[int]]:
    ''' Integer coefficients on the diagonal, linking numbers off it.

        :param SurgeryDiagram d: diagram; infinity components are deleted first
        :param names: restrict to these components, in this order (default: all, in diagram order)

        :return: symmetric integer matrix as rows
    '''
    d = d.without_deletable()
    order = list(names) if names is not None else d.names
    rows = []
    for a in order:
        c = d.component(a)
        if c.coefficient.denominator != 1:
            raise NonIntegralCoefficient(a, format_fraction(c.coefficient))
        rows.append([int(c.coefficient) if a == b else d.linking(a, b) for b in order])
    return rows


def cf_expand(p: int, q: int) -> List[int]:
    ''' Coefficients [a1, ..., am] with p/q = a1 - 1/(a2 - 1/(... - 1/am)).

        Negative values round down at every step, so all ai <= -1 and -1/k gives [-1, -2, ..., -2];
        positive values round up, so all ai >= 1 and 1/k gives [1, 2, ..., 2].

        :param int p: numerator
        :param int q: positive denominator, coprime to p

        :return: list of integers
    '''
    if q <= 0:
        raise InvalidFraction(f'denominator must be positive, got {q}')
    if math.gcd(p, q) != 1:
        raise InvalidFraction(f'{p}/{q} is not reduced')
    x = Fraction(p, q)
    coeffs = []
    while True:
        a = math.floor(x) if x < 0 else math.ceil(x)
        coeffs.append(a)
        if a == x:
            return coeffs
        x = 1 / (a - x)


def cf_evaluate(coeffs: Sequence[int]) -> Fraction:
    if not coeffs:
        raise InvalidFraction('empty continued fraction')
    value = Fraction(coeffs[-1])
    for a in reversed(coeffs[:-1]):
        if value == 0:
            raise DivisionByZero(f'a tail of {list(coeffs)} evaluates to 0')
        value = a - 1 / value
    return value


def chain_attach(d: SurgeryDiagram, component: str) -> SurgeryDiagram:
    ''' Replace a +-1/k framed unknot by its chain of integrally framed unknots.

        The chain follows cf_expand; consecutive members link -1 in the negative case and +1 in the
        positive one. Members are named "<component>.1" ... "<component>.k".

        :param SurgeryDiagram d: diagram
        :param str component: name of an isolated component with coefficient -1/k or 1/k

        :return: new SurgeryDiagram
    '''
    c = d.component(component)
    if c.is_deletable:
        raise ChainAttachError(f'{component} has coefficient infinity; delete it instead')
    if abs(c.coefficient.numerator) != 1:
        raise ChainAttachError(f'{component} has coefficient {format_fraction(c.coefficient)}, not +-1/k')
    linked = [other for other in d.names if d.linking(component, other)]
    if linked:
        raise ChainAttachError(f'{component} links {linked}; only isolated components can be expanded')

    sign = c.coefficient.numerator
    framings = cf_expand(sign, c.coefficient.denominator)
    chain = [SurgeryComponent(f'{component}.{i + 1}', Fraction(a)) for i, a in enumerate(framings)]
    components = []
    for existing in d.components:
        components.extend(chain if existing.name == component else [existing])
    links = dict(d.links())
    for first, second in zip(chain, chain[1:]):
        links[(first.name, second.name)] = sign
    log.debug(f'Expanded {component} ({format_fraction(c.coefficient)}) into chain {framings}')
    return SurgeryDiagram(components, links)


def chain_names(component: str, length: int) -> List[str]:
    return [f'{component}.{i + 1}' for i in range(length)]


def integral_diagram(d: SurgeryDiagram) -> SurgeryDiagram:
    ''' Delete infinity components and chain-attach every non-integral one. '''
    d = d.without_deletable()
    for c in list(d.components):
        if c.coefficient.denominator != 1:
            d = chain_attach(d, c.name)
    return d


def is_integer_homology_sphere(d: SurgeryDiagram) -> bool:
    ''' |det| of the linking matrix of the integral diagram is 1. '''
    return abs(exact_det(linking_matrix(integral_diagram(d)))) == 1


@dataclass(frozen=True)
class BlackboardFraming:
    ''' Framing m*mu + b*lambda_bb of a curve with the given writhe; coefficient (m + b*writhe)/b. '''
    m: int
    b: int
    writhe: int = 0

    def __post_init__(self):
        if self.b == 0:
            raise InvalidFraction('b = 0 is the meridian, not a surgery coefficient')

    @property
    def coefficient(self) -> Fraction:
        return Fraction(self.m + self.b * self.writhe, self.b)

    @classmethod
    def from_coefficient(cls, r, writhe: int = 0) -> 'BlackboardFraming':
        r = Fraction(r)
        return cls(r.numerator - r.denominator * writhe, r.denominator, writhe)


def lift_framing(f: BlackboardFraming, branch_linking: int, lift_writhe: int,
                 degree: int = 2) -> Tuple[BlackboardFraming, ...]:
    ''' Lift a framed unknot to the degree-fold cyclic cover branched along a knot.

        Linking coprime to the degree: one lifted curve (m, b/degree, lift_writhe).
        Linking divisible by the degree: `degree` lifted curves (m, b, lift_writhe).
        The writhe of the lift is read off a picture, so the caller supplies it.

        :param BlackboardFraming f: framing downstairs
        :param int branch_linking: linking number of the curve with the branch knot
        :param int lift_writhe: writhe of each lifted curve
        :param int degree: degree of the cover

        :return: tuple of lifted framings
    '''
    if degree < 2:
        raise UnsupportedLift(f'cover degree must be at least 2, got {degree}')
    if math.gcd(branch_linking, degree) == 1:
        if f.b % degree:
            raise OddHalving(f'b = {f.b} is not divisible by {degree}; the lifted framing is not a surgery coefficient')
        return (BlackboardFraming(f.m, f.b // degree, lift_writhe),)
    if branch_linking % degree == 0:
        return tuple(BlackboardFraming(f.m, f.b, lift_writhe) for _ in range(degree))
    raise UnsupportedLift(f'linking {branch_linking} shares a proper factor with the degree {degree}')


def double_cover_diagram(k: int) -> SurgeryDiagram:
    ''' Surgery diagram of Y_k, the branched double cover of (tau_{2k-1} J)(U).

        Downstairs, eta is a -1/(2k) framed unknot (writhe 0) linking the branch knot once, and gamma
        is a +1 framed curve of writhe 2 with even linking. Their lifts: one eta-lift with -1/k and
        writhe 0, two gamma-lifts with +1, all pairwise unlinked. For k = 0 eta is deleted.

        :param int k: twist parameter

        :return: SurgeryDiagram with components gamma1, gamma2 (and eta)
    '''
    gamma = BlackboardFraming.from_coefficient(1, writhe=2)
    gamma1, gamma2 = lift_framing(gamma, branch_linking=0, lift_writhe=2)
    components = [SurgeryComponent('gamma1', gamma1.coefficient, gamma1.writhe),
                  SurgeryComponent('gamma2', gamma2.coefficient, gamma2.writhe)]
    if k != 0:
        eta = BlackboardFraming.from_coefficient(Fraction(-1, 2 * k), writhe=0)
        (eta_lift,) = lift_framing(eta, branch_linking=1, lift_writhe=0)
        components.append(SurgeryComponent('eta', eta_lift.coefficient, eta_lift.writhe))
    return SurgeryDiagram(components)
