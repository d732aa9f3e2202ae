"""
Symbolic calculus of winding-number-one satellite patterns.

Expressions are immutable ASTs; normal forms push Dual and Bar to the leaves, merge adjacent twists
and nest compositions to the right. Equality of patterns means equality of normal forms.
"""

import logging
import re
from dataclasses import dataclass
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple, Union

from .constants import DEFAULT_GENERATORS
from .errors import InvalidPattern, NoDeclaredDual, ParseError

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Gen:
    name: str


@dataclass(frozen=True)
class ConnSum:
    ''' The connected-sum pattern K_#; mirrored marks the mirror-reverse of K. '''
    knot: str
    mirrored: bool = False


@dataclass(frozen=True)
class Twist:
    n: int
    child: 'PatternExpr'


@dataclass(frozen=True)
class Bar:
    child: 'PatternExpr'


@dataclass(frozen=True)
class Dual:
    child: 'PatternExpr'


@dataclass(frozen=True)
class Compose:
    ''' left o right: (left o right)(K) = left(right(K)). '''
    left: 'PatternExpr'
    right: 'PatternExpr'


PatternExpr = Union[Gen, ConnSum, Twist, Bar, Dual, Compose]


# Parsing

KEYWORDS = ('twist', 'bar', 'dual', 'compose', 'sum')

_TOKEN = re.compile(r"\s*(?:(?P<int>[+-]?\d+(?![\w'.]))|(?P<name>[A-Za-z0-9_][\w'.]*)|(?P<punct>[(),-]))")


def _tokenize(text: str) -> List[Tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == '':
            break
        m = _TOKEN.match(text, pos)
        if not m:
            offset = len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f'unexpected character {text[pos + offset]!r}', pos + offset)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def _peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def _position(self) -> int:
        tok = self._peek()
        return tok[2] if tok else len(self.text)

    def _expect(self, value: str):
        tok = self._peek()
        if tok is None or tok[1] != value:
            found = 'end of input' if tok is None else repr(tok[1])
            raise ParseError(f'expected {value!r}, found {found}', self._position())
        self.i += 1

    def _int(self) -> int:
        tok = self._peek()
        if tok is None or tok[0] != 'int':
            raise ParseError('expected an integer', self._position())
        self.i += 1
        return int(tok[1])

    def _name(self) -> str:
        tok = self._peek()
        if tok is None or tok[0] != 'name':
            raise ParseError('expected a name', self._position())
        self.i += 1
        return tok[1]

    def parse(self) -> PatternExpr:
        expr = self.expr()
        if self._peek() is not None:
            raise ParseError(f'trailing input {self._peek()[1]!r}', self._position())
        return expr

    def expr(self) -> PatternExpr:
        name = self._name()
        following = self._peek()
        if name not in KEYWORDS or following is None or following[1] != '(':
            return Gen(name)
        self._expect('(')
        if name == 'twist':
            n = self._int()
            self._expect(',')
            node = Twist(n, self.expr())
        elif name == 'compose':
            left = self.expr()
            self._expect(',')
            node = Compose(left, self.expr())
        elif name == 'sum':
            mirrored = False
            tok = self._peek()
            if tok is not None and tok[1] == '-':
                self.i += 1
                mirrored = True
            node = ConnSum(self._name(), mirrored)
        elif name == 'bar':
            node = Bar(self.expr())
        else:
            node = Dual(self.expr())
        self._expect(')')
        return node


def parse_pattern(text: str) -> PatternExpr:
    ''' Parse the expression grammar

            expr := name | sum(name) | sum(-name) | twist(int, expr) | bar(expr) | dual(expr) | compose(expr, expr)

        :param str text: expression text

        :return: PatternExpr (unknown names become generators)
    '''
    return _Parser(text).parse()


def to_text(e: PatternExpr) -> str:
    if isinstance(e, Gen):
        return e.name
    if isinstance(e, ConnSum):
        return f'sum(-{e.knot})' if e.mirrored else f'sum({e.knot})'
    if isinstance(e, Twist):
        return f'twist({e.n}, {to_text(e.child)})'
    if isinstance(e, Bar):
        return f'bar({to_text(e.child)})'
    if isinstance(e, Dual):
        return f'dual({to_text(e.child)})'
    return f'compose({to_text(e.left)}, {to_text(e.right)})'


def pattern_to_json(e: PatternExpr) -> dict:
    if isinstance(e, Gen):
        return {'kind': 'gen', 'name': e.name}
    if isinstance(e, ConnSum):
        return {'kind': 'sum', 'knot': e.knot, 'mirrored': e.mirrored}
    if isinstance(e, Twist):
        return {'kind': 'twist', 'n': e.n, 'child': pattern_to_json(e.child)}
    if isinstance(e, (Bar, Dual)):
        return {'kind': type(e).__name__.lower(), 'child': pattern_to_json(e.child)}
    return {'kind': 'compose', 'left': pattern_to_json(e.left), 'right': pattern_to_json(e.right)}


def pattern_from_json(data: Mapping) -> PatternExpr:
    kind = data.get('kind')
    if kind == 'gen':
        return Gen(data['name'])
    if kind == 'sum':
        return ConnSum(data['knot'], bool(data.get('mirrored', False)))
    if kind == 'twist':
        return Twist(int(data['n']), pattern_from_json(data['child']))
    if kind == 'bar':
        return Bar(pattern_from_json(data['child']))
    if kind == 'dual':
        return Dual(pattern_from_json(data['child']))
    if kind == 'compose':
        return Compose(pattern_from_json(data['left']), pattern_from_json(data['right']))
    raise InvalidPattern(f'unknown node kind {kind!r}')


def contains_dual(e: PatternExpr) -> bool:
    return next(_stuck_duals(e), None) is not None


def _stuck_duals(e: PatternExpr):
    if isinstance(e, Dual):
        yield e
    for child in _children(e):
        yield from _stuck_duals(child)


def _children(e: PatternExpr) -> Tuple[PatternExpr, ...]:
    if isinstance(e, (Twist, Bar, Dual)):
        return (e.child,)
    if isinstance(e, Compose):
        return (e.left, e.right)
    return ()


# Generator registry

class PatternRegistry:
    ''' Dualizable generators and their declared duals (kept in normal form). '''

    def __init__(self, generators: Optional[Mapping[str, Union[str, PatternExpr]]] = None):
        self._duals: Dict[str, PatternExpr] = {}
        for name, dual_expr in (DEFAULT_GENERATORS if generators is None else generators).items():
            self.register(name, dual_expr)

    @classmethod
    def from_config(cls, config=None) -> 'PatternRegistry':
        generators = dict(DEFAULT_GENERATORS)
        generators.update((config or {}).get('patterns', {}).get('generators', {}) or {})
        return cls(generators)

    def declared_dual(self, name: str) -> Optional[PatternExpr]:
        return self._duals.get(name)

    def names(self) -> List[str]:
        return sorted(self._duals)

    def register(self, name: str, dual_expr: Union[str, PatternExpr]):
        ''' Declare the dual of generator `name`.

            The declared dual may not contain dual(...) and must be an involution: dual of the
            declared dual normalizes back to the generator. A plain generator Q as dual of P
            registers P as dual of Q as well.

            :param str name: generator name
            :param dual_expr: declared dual, as text or PatternExpr
        '''
        expr = parse_pattern(dual_expr) if isinstance(dual_expr, str) else dual_expr
        if contains_dual(expr):
            raise InvalidPattern(f'declared dual of {name} must not contain dual(...): {to_text(expr)}')
        previous = dict(self._duals)
        self._duals[name] = normalize(expr, self)
        if isinstance(expr, Gen) and expr.name != name and expr.name not in self._duals:
            self._duals[expr.name] = Gen(name)
        try:
            back = normalize(Dual(expr), self)
        except NoDeclaredDual as e:
            self._duals = previous
            raise InvalidPattern(f'declared dual of {name} uses {e.generator}, which has no declared dual') from None
        if back != Gen(name):
            self._duals = previous
            raise InvalidPattern(f'dual of {to_text(expr)} is {to_text(back)}, not {name}')
        log.debug(f'Registered generator {name} with dual {to_text(self._duals[name])}')


# Normalization

def _twist(n: int, child: PatternExpr) -> PatternExpr:
    if isinstance(child, Twist):
        n, child = n + child.n, child.child
    return child if n == 0 else Twist(n, child)


def _factors(e: PatternExpr) -> List[PatternExpr]:
    if isinstance(e, Compose):
        return _factors(e.left) + _factors(e.right)
    return [e]


def _compose(left: PatternExpr, right: PatternExpr) -> PatternExpr:
    factors = _factors(left) + _factors(right)
    result = factors[-1]
    for factor in reversed(factors[:-1]):
        result = Compose(factor, result)
    return result


def _push_dual(e: PatternExpr, registry: PatternRegistry) -> PatternExpr:
    # normal form of Dual(e)
    if isinstance(e, Dual):
        return normalize(e.child, registry)
    if isinstance(e, Twist):
        return _twist(-e.n, _push_dual(e.child, registry))
    if isinstance(e, Compose):
        return _compose(_push_dual(e.right, registry), _push_dual(e.left, registry))
    if isinstance(e, Bar):
        return _push_bar(_push_dual(e.child, registry), registry)
    if isinstance(e, ConnSum):
        return e
    declared = registry.declared_dual(e.name)
    if declared is None:
        raise NoDeclaredDual(e.name)
    return declared


def _push_bar(e: PatternExpr, registry: PatternRegistry) -> PatternExpr:
    # normal form of Bar(e)
    if isinstance(e, Bar):
        return normalize(e.child, registry)
    if isinstance(e, Twist):
        return _twist(-e.n, _push_bar(e.child, registry))
    if isinstance(e, Compose):
        return _compose(_push_bar(e.left, registry), _push_bar(e.right, registry))
    if isinstance(e, Dual):
        return _push_bar(_push_dual(e.child, registry), registry)
    if isinstance(e, ConnSum):
        return ConnSum(e.knot, not e.mirrored)
    return Bar(e)


def normalize(e: PatternExpr, registry: Optional[PatternRegistry] = None) -> PatternExpr:
    ''' Canonical representative: Dual/Bar at the leaves, merged twists, right-nested compositions. '''
    registry = DEFAULT_REGISTRY if registry is None else registry
    if isinstance(e, (Gen, ConnSum)):
        return e
    if isinstance(e, Bar):
        return _push_bar(e.child, registry)
    if isinstance(e, Dual):
        return _push_dual(e.child, registry)
    if isinstance(e, Twist):
        return _twist(e.n, normalize(e.child, registry))
    return _compose(normalize(e.left, registry), normalize(e.right, registry))


def dual(e: PatternExpr, registry: Optional[PatternRegistry] = None) -> PatternExpr:
    ''' P*: (tau_n P)* = tau_-n(P*), (P o Q)* = Q* o P*, (K_#)* = K_#, (bar P)* = bar(P*). '''
    return normalize(Dual(e), registry)


def bar(e: PatternExpr, registry: Optional[PatternRegistry] = None) -> PatternExpr:
    ''' Mirror-reverse: bar(P o Q) = bar P o bar Q, bar(tau_n P) = tau_-n(bar P). '''
    return normalize(Bar(e), registry)


def concordance_inverse(e: PatternExpr, registry: Optional[PatternRegistry] = None) -> PatternExpr:
    ''' bar(P*), the inverse of P in the group of patterns up to concordance. '''
    return normalize(Bar(Dual(e)), registry)


def trace_partner(e: PatternExpr, framing: int = 0, registry: Optional[PatternRegistry] = None) -> PatternExpr:
    ''' tau_n(P*): P(U) and (tau_n P*)(U) share their n-trace. '''
    return normalize(Twist(framing, Dual(e)), registry)


def winding_number(e: PatternExpr) -> int:
    if isinstance(e, Compose):
        return winding_number(e.left) * winding_number(e.right)
    if isinstance(e, (Twist, Bar, Dual)):
        return winding_number(e.child)
    return 1


# Single-step rewriting

Path = Tuple[int, ...]


def _rule_at(e: PatternExpr, registry: PatternRegistry) -> Optional[str]:
    if isinstance(e, Dual):
        c = e.child
        if isinstance(c, Twist):
            return 'dual-twist'
        if isinstance(c, Compose):
            return 'dual-compose'
        if isinstance(c, ConnSum):
            return 'dual-sum'
        if isinstance(c, Bar):
            return 'dual-bar'
        if isinstance(c, Dual):
            return 'dual-dual'
        if registry.declared_dual(c.name) is not None:
            return 'dual-gen'
        return None
    if isinstance(e, Bar):
        c = e.child
        if isinstance(c, Compose):
            return 'bar-compose'
        if isinstance(c, Twist):
            return 'bar-twist'
        if isinstance(c, Bar):
            return 'bar-bar'
        if isinstance(c, ConnSum):
            return 'bar-sum'
        return None
    if isinstance(e, Twist):
        if e.n == 0:
            return 'twist-zero'
        if isinstance(e.child, Twist):
            return 'twist-twist'
        return None
    if isinstance(e, Compose) and isinstance(e.left, Compose):
        return 'compose-assoc'
    return None


def _apply_rule(e: PatternExpr, rule: str, registry: PatternRegistry) -> PatternExpr:
    c = getattr(e, 'child', None)
    if rule == 'dual-twist':
        return Twist(-c.n, Dual(c.child))
    if rule == 'dual-compose':
        return Compose(Dual(c.right), Dual(c.left))
    if rule in ('dual-sum', 'bar-bar', 'dual-dual'):
        return c if rule == 'dual-sum' else c.child
    if rule == 'dual-bar':
        return Bar(Dual(c.child))
    if rule == 'dual-gen':
        return registry.declared_dual(c.name)
    if rule == 'bar-compose':
        return Compose(Bar(c.left), Bar(c.right))
    if rule == 'bar-twist':
        return Twist(-c.n, Bar(c.child))
    if rule == 'bar-sum':
        return ConnSum(c.knot, not c.mirrored)
    if rule == 'twist-zero':
        return e.child
    if rule == 'twist-twist':
        return Twist(e.n + e.child.n, e.child.child)
    if rule == 'compose-assoc':
        return Compose(e.left.left, Compose(e.left.right, e.right))
    raise ValueError(f'unknown rule {rule!r}')


def redexes(e: PatternExpr, registry: Optional[PatternRegistry] = None, path: Path = ()) -> List[Tuple[Path, str]]:
    ''' Every (position, rule) where a single rewrite step applies. '''
    registry = DEFAULT_REGISTRY if registry is None else registry
    found = []
    rule = _rule_at(e, registry)
    if rule:
        found.append((path, rule))
    for i, child in enumerate(_children(e)):
        found.extend(redexes(child, registry, path + (i,)))
    return found


def rewrite_at(e: PatternExpr, path: Path, rule: str, registry: Optional[PatternRegistry] = None) -> PatternExpr:
    registry = DEFAULT_REGISTRY if registry is None else registry
    if not path:
        return _apply_rule(e, rule, registry)
    head, rest = path[0], path[1:]
    if isinstance(e, Twist):
        return Twist(e.n, rewrite_at(e.child, rest, rule, registry))
    if isinstance(e, Bar):
        return Bar(rewrite_at(e.child, rest, rule, registry))
    if isinstance(e, Dual):
        return Dual(rewrite_at(e.child, rest, rule, registry))
    if isinstance(e, Compose):
        if head == 0:
            return Compose(rewrite_at(e.left, rest, rule, registry), e.right)
        return Compose(e.left, rewrite_at(e.right, rest, rule, registry))
    raise ValueError(f'path {path} leaves the expression')


def reduce_with_strategy(e: PatternExpr,
                         choose: Callable[[Sequence[Tuple[Path, str]]], Tuple[Path, str]],
                         registry: Optional[PatternRegistry] = None,
                         max_steps: int = 100_000) -> PatternExpr:
    ''' Rewrite one redex at a time, `choose` picking which, until none is left.

        :param PatternExpr e: expression
        :param choose: picks one (path, rule) out of the available redexes
        :param registry: generator registry (default: module registry)
        :param int max_steps: guard against a non-terminating rule set

        :return: the irreducible expression reached
    '''
    registry = DEFAULT_REGISTRY if registry is None else registry
    for _ in range(max_steps):
        available = redexes(e, registry)
        if not available:
            break
        path, rule = choose(available)
        e = rewrite_at(e, path, rule, registry)
    else:
        raise RuntimeError(f'no normal form within {max_steps} steps')
    stuck = next(_stuck_duals(e), None)
    if stuck is not None:
        inner = stuck.child
        while isinstance(inner, Bar):
            inner = inner.child
        raise NoDeclaredDual(getattr(inner, 'name', to_text(inner)))
    return e


DEFAULT_REGISTRY = PatternRegistry()
