"""
Computations on the twist family (tau_n J)(U) and the d-invariant argument that separates
K_k = (tau_{2k-1} J)(U) from its 0-trace partner K'_k = (tau_{-2k-3} J)(U).

Y_j denotes the branched double cover of (tau_{2j-1} J)(U). Y0 = S^3_1(5_2) and Y1 bounds a
contractible manifold; everything between those facts and the definite-cobordism inequalities is
recomputed here and emitted as certificates that re-validate on their own.
"""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from . import laurent
from .braids import FixtureStore, seifert_matrix, signature
from .constants import (ASSUMPTIONS, AXIOMS, DOWN, FAMILY_GENERATOR, INCONCLUSIVE, INDISTINGUISHABLE,
                        J_DUAL_TWIST, NOT_CONCORDANT, NOT_SLICE, UP)
from .errors import CertificateInvalid, InvalidMatrix, InvalidSignature, UnsupportedLift
from .lattice import (DEFAULT_MAX_ENUMERATION, BoundCertificate, IntForm, build_Qk, d_bound, exact_det,
                      exact_int, verify_certificate)
from .laurent import LaurentPoly, equal_up_to_units, normalize_alexander, poly_eval_int
from .patterns import (Gen, PatternExpr, PatternRegistry, Twist, concordance_inverse, normalize,
                       parse_pattern, to_text, trace_partner)
from .surgery import (BlackboardFraming, SurgeryComponent, SurgeryDiagram, chain_attach, chain_names,
                      double_cover_diagram, format_fraction, is_integer_homology_sphere, lift_framing,
                      linking_matrix)

log = logging.getLogger(__name__)


def cover_label(j: int) -> str:
    ''' Name of the branched double cover of (tau_{2j-1} J)(U). '''
    return f'Y{j}'


# Family (tau_n J)(U)

@dataclass(frozen=True)
class FamilyMember:
    ''' The knot (tau_n J)(U). '''
    n: int

    @property
    def pattern(self) -> PatternExpr:
        return Twist(self.n, Gen(FAMILY_GENERATOR))

    @property
    def partner(self) -> int:
        ''' Parameter of the 0-trace partner: tau_0((tau_n J)*) = tau_{-4-n} J. '''
        return J_DUAL_TWIST - self.n

    @property
    def name(self) -> str:
        return f'{to_text(self.pattern)}(U)'

    def alexander(self) -> LaurentPoly:
        return family_alexander(self.n)

    def determinant(self) -> int:
        return family_determinant(self.n)


@lru_cache(maxsize=1024)
def family_alexander(n: int) -> LaurentPoly:
    ''' Normalized Alexander polynomial of (tau_n J)(U).

        (t-1)^2 (t^(2n+4) + 1) + (2t^2 - 3t + 2) t^(n+2) for n >= -2; the 0-surgery is shared with
        the partner -4-n, so smaller n reuse the partner's polynomial.

        :param int n: twist parameter

        :return: LaurentPoly
    '''
    if n < -2:
        return family_alexander(J_DUAL_TWIST - n)
    t = laurent.T
    raw = (t - 1)**2 * (t**(2 * n + 4) + 1) + (2 * t**2 - 3 * t + 2) * t**(n + 2)
    return normalize_alexander(raw)


def family_determinant(n: int) -> int:
    ''' |Delta_n(-1)|: 15 for even n, 1 for odd n. '''
    return int(abs(poly_eval_int(family_alexander(n), -1)))


# d-invariants taken from axioms

def d_alternating_one_surgery(sigma: int) -> int:
    ''' d(S^3_1(K)) = 2 min{0, -ceil(-sigma/4)} for alternating K. '''
    if sigma % 2:
        raise InvalidSignature(f'knot signatures are even, got {sigma}')
    return 2 * min(0, -math.ceil(Fraction(-sigma, 4)))


@dataclass(frozen=True)
class DInvariant:
    manifold: str
    value: Fraction
    derivation: str
    axiom: str
    details: Dict = field(default_factory=dict, compare=False)

    def to_json(self) -> dict:
        return {'manifold': self.manifold, 'value': format_fraction(self.value),
                'derivation': self.derivation, 'axiom': self.axiom, 'details': dict(self.details)}

    @classmethod
    def from_json(cls, data: dict) -> 'DInvariant':
        return cls(data['manifold'], Fraction(data['value']), data['derivation'], data['axiom'],
                   dict(data.get('details', {})))


@dataclass(frozen=True)
class HomologyBallCertificate:
    ''' H1 presentation of a 4-manifold built from one 0-, one 1- and one 2-handle. '''
    presentation: Tuple[Tuple[int, ...], ...]

    @classmethod
    def from_rows(cls, rows) -> 'HomologyBallCertificate':
        ''' Integer presentation from JSON or config rows; anything else is CertificateInvalid. '''
        try:
            return cls(tuple(tuple(exact_int(x) for x in row) for row in rows))
        except (InvalidMatrix, TypeError):
            raise CertificateInvalid(f'presentation {rows!r} is not an integer matrix') from None

    @property
    def determinant(self) -> int:
        return exact_det(self.presentation)

    def validate(self) -> bool:
        size = len(self.presentation)
        if size == 0:
            raise CertificateInvalid('empty presentation; the filling has a 1-handle and a 2-handle')
        if any(len(row) != size for row in self.presentation):
            raise CertificateInvalid(f'presentation {self.presentation} is not square')
        if abs(self.determinant) != 1:
            raise CertificateInvalid(f'H1 has order {abs(self.determinant)}, not a homology ball')
        return True

    def to_json(self) -> dict:
        return {'presentation': [list(r) for r in self.presentation], 'determinant': self.determinant}


@dataclass(frozen=True)
class ChainStep:
    ''' One certified inequality between d-invariants of two covers. '''
    source: str
    target: str
    certificate: BoundCertificate
    assumptions: Tuple[str, ...] = ()

    def describe(self) -> str:
        return self.certificate.describe(self.source, self.target)

    def to_json(self) -> dict:
        return {'from': self.source, 'to': self.target, 'certificate': self.certificate.to_json(),
                'assumptions': list(self.assumptions)}

    @classmethod
    def from_json(cls, data: dict) -> 'ChainStep':
        return cls(data['from'], data['to'], BoundCertificate.from_json(data['certificate']),
                   tuple(data.get('assumptions', ())))


def _unique(items) -> Tuple[str, ...]:
    return tuple(dict.fromkeys(items))


# Reports

@dataclass(frozen=True)
class ObstructionReport:
    ''' d(Y-(k+1)) <= d(Y0) = -2 < 0 = d(Y1) <= d(Yk) for the pair K_k, K'_k. '''
    k: int
    knot: str
    partner: str
    d_y0: DInvariant
    d_y1: DInvariant
    upper_chain: Tuple[ChainStep, ...]   # from Y0 down to the partner's cover
    lower_chain: Tuple[ChainStep, ...]   # from Y1 up to Yk
    pattern_identity: bool
    verdict: str
    assumptions: Tuple[str, ...] = ()

    @property
    def chain(self) -> Tuple[ChainStep, ...]:
        return self.upper_chain + self.lower_chain

    @property
    def upper_bound(self) -> Fraction:
        return self.upper_chain[-1].certificate.bound if self.upper_chain else self.d_y0.value

    @property
    def lower_bound(self) -> Fraction:
        return self.lower_chain[-1].certificate.bound if self.lower_chain else self.d_y1.value

    @property
    def separated(self) -> bool:
        return self.upper_bound < self.lower_bound

    def validate(self, limit: int = DEFAULT_MAX_ENUMERATION, registry: Optional[PatternRegistry] = None) -> bool:
        ''' Re-validate every certificate, the shape and chaining of bounds, the pair and the separation claim. '''
        k = self.k
        if k < 1:
            raise CertificateInvalid(f'report needs k >= 1, got {k}')
        member, partner = FamilyMember(2 * k - 1), FamilyMember(-2 * k - 3)
        if (self.knot, self.partner) != (member.name, partner.name):
            raise CertificateInvalid(f'pair ({self.knot}, {self.partner}) is not ({member.name}, {partner.name})')

        if self.d_y0.value != d_alternating_one_surgery(self.d_y0.details.get('signature', 0)):
            raise CertificateInvalid(f'd(Y0) = {self.d_y0.value} does not follow from the recorded signature')
        if self.d_y1.value != 0:
            raise CertificateInvalid(f'd(Y1) = {self.d_y1.value}; a homology ball filling forces 0')
        if 'presentation' not in self.d_y1.details:
            raise CertificateInvalid('d(Y1) carries no homology ball presentation')
        HomologyBallCertificate.from_rows(self.d_y1.details['presentation']).validate()

        expected = {'upper': [(cover_label(0), cover_label(-(k + 1)), k + 1)],
                    'lower': [(cover_label(j), cover_label(j + 1), 1) for j in range(1, k)]}
        for side, chain in (('upper', self.upper_chain), ('lower', self.lower_chain)):
            shape = [(step.source, step.target, step.certificate.rank) for step in chain]
            if shape != expected[side]:
                raise CertificateInvalid(f'{side} chain {shape} does not match {expected[side]} for k = {k}')

        for step in self.chain:
            verify_certificate(step.certificate, limit)
        for chain, start, kind in ((self.upper_chain, self.d_y0.value, 'posdef'),
                                   (self.lower_chain, self.d_y1.value, 'negdef')):
            current = start
            for step in chain:
                if step.certificate.kind != kind:
                    raise CertificateInvalid(f'{step.source} -> {step.target} uses {step.certificate.kind}, expected {kind}')
                if step.certificate.dY0 != current:
                    raise CertificateInvalid(f'{step.source} -> {step.target} starts from {step.certificate.dY0}, '
                                             f'previous bound is {current}')
                current = step.certificate.bound

        registry = PatternRegistry.from_config() if registry is None else registry
        identity = trace_partner(member.pattern, 0, registry) == normalize(partner.pattern, registry)
        if identity != self.pattern_identity:
            raise CertificateInvalid(f'recorded pattern identity {self.pattern_identity}, recomputed {identity}')
        if self.verdict == NOT_CONCORDANT:
            if not identity:
                raise CertificateInvalid(f'{self.partner} is not the 0-trace partner of {self.knot}')
            if not self.separated:
                raise CertificateInvalid(f'upper bound {self.upper_bound} does not lie below lower bound {self.lower_bound}')
        return True

    def to_json(self) -> dict:
        return {
            'k': self.k,
            'pair': [self.knot, self.partner],
            'dY0': self.d_y0.to_json(),
            'dY1': self.d_y1.to_json(),
            'dChain': [step.to_json() for step in self.chain],
            'upperChainLength': len(self.upper_chain),
            'separation': {'upper': format_fraction(self.upper_bound),
                           'lower': format_fraction(self.lower_bound),
                           'strict': self.separated},
            'patternIdentity': self.pattern_identity,
            'verdict': self.verdict,
            'assumptions': list(self.assumptions),
        }

    @classmethod
    def from_json(cls, data: dict) -> 'ObstructionReport':
        steps = tuple(ChainStep.from_json(s) for s in data['dChain'])
        split = int(data['upperChainLength'])
        return cls(int(data['k']), data['pair'][0], data['pair'][1],
                   DInvariant.from_json(data['dY0']), DInvariant.from_json(data['dY1']),
                   steps[:split], steps[split:], bool(data['patternIdentity']), data['verdict'],
                   tuple(data.get('assumptions', ())))

    def to_text(self) -> str:
        k = self.k
        target = self.upper_chain[-1].target if self.upper_chain else cover_label(0)
        line = (f'd({target}) <= d(Y0) = {format_fraction(self.d_y0.value)} '
                f'{"<" if self.separated else ">="} {format_fraction(self.d_y1.value)} = d(Y1)')
        if self.lower_chain:
            line += f' <= d({cover_label(k)})'
        lines = [f'K_{k}  = {self.knot}',
                 f"K'_{k} = {self.partner}",
                 '',
                 line,
                 '',
                 f'  Y0: {self.d_y0.derivation}',
                 f'  Y1: {self.d_y1.derivation}']
        lines.extend(f'  {step.source} -> {step.target}: {step.describe()}' for step in self.chain)
        lines.append(f'  0-trace partner identity: {"verified" if self.pattern_identity else "FAILED"}')
        lines.append('')
        lines.append(f'verdict: {self.verdict}')
        lines.append('assumptions:')
        lines.extend(f'  - {a}' for a in self.assumptions)
        return '\n'.join(lines)


@dataclass(frozen=True)
class SharedInvariantReport:
    n: int
    partner: int
    alexander: LaurentPoly
    partner_equal: bool
    trace_partner: str
    sampled: Tuple[int, ...]
    collisions: Tuple[int, ...]
    status: str

    def to_json(self) -> dict:
        return {'n': self.n, 'partner': self.partner, 'alexander': laurent.to_text(self.alexander),
                'partnerEqual': self.partner_equal, 'tracePartner': self.trace_partner,
                'sampled': len(self.sampled), 'collisions': list(self.collisions), 'status': self.status}

    def to_text(self) -> str:
        return '\n'.join([
            f'Delta_{self.n} = {laurent.to_text(self.alexander)}',
            f'partner n = {self.partner} ({self.trace_partner}): '
            f'{"same" if self.partner_equal else "DIFFERENT"} Alexander polynomial',
            f'{len(self.sampled)} other members sampled, {len(self.collisions)} collisions'
            + (f': {list(self.collisions)}' if self.collisions else ''),
            f'status: {self.status}',
        ])


@dataclass(frozen=True)
class SliceReport:
    n: int
    determinant: int
    verdict: str
    reason: str
    certificates: Tuple[ChainStep, ...] = ()
    assumptions: Tuple[str, ...] = ()

    def to_json(self) -> dict:
        return {'n': self.n, 'determinant': self.determinant, 'verdict': self.verdict, 'reason': self.reason,
                'certificates': [step.to_json() for step in self.certificates],
                'assumptions': list(self.assumptions)}

    def to_text(self) -> str:
        lines = [f'(tau_{self.n} J)(U): {self.verdict}', f'  {self.reason}']
        lines.extend(f'  {step.source} -> {step.target}: {step.describe()}' for step in self.certificates)
        lines.append('assumptions:')
        lines.extend(f'  - {a}' for a in self.assumptions)
        return '\n'.join(lines)


@dataclass(frozen=True)
class InverseReport:
    pattern: str
    inverse: str
    inverse_of_inverse: str
    involutive: bool

    def to_json(self) -> dict:
        return {'pattern': self.pattern, 'inverse': self.inverse,
                'inverseOfInverse': self.inverse_of_inverse, 'involutive': self.involutive}

    def to_text(self) -> str:
        return '\n'.join([f'P          = {self.pattern}',
                          f'P^-1       = {self.inverse}',
                          f'(P^-1)^-1  = {self.inverse_of_inverse}',
                          f'involutive: {self.involutive}'])


# Pipeline

class ObstructionPipeline:
    ''' Certificates for the family (tau_n J)(U), configured from the merged config dict. '''

    def __init__(self, config=None, store: Optional[FixtureStore] = None, registry: Optional[PatternRegistry] = None):
        self.config = config or {}
        self.store = store or FixtureStore(self.config)
        self.registry = PatternRegistry.from_config(self.config) if registry is None else registry
        self.limit = int(self.config.get('lattice', {}).get('max_enumeration', DEFAULT_MAX_ENUMERATION))
        self._d_y0: Optional[DInvariant] = None

    def d_Y0(self) -> DInvariant:
        ''' d(S^3_1(5_2)), with the signature recomputed from the braid fixture. '''
        if self._d_y0 is not None:
            return self._d_y0
        name = self.config.get('fixtures', {}).get('y0_knot', '5_2')
        fixture = self.store.get(name)
        sigma = signature(seifert_matrix(fixture.braid))
        value = d_alternating_one_surgery(sigma)
        self._d_y0 = DInvariant(
            cover_label(0), Fraction(value),
            f'S^3_1({name}), sigma({name}) = {sigma}: 2 min(0, -ceil({-sigma}/4)) = {value}',
            AXIOMS['alternating-one-surgery'], {'knot': name, 'signature': sigma})
        log.info(f'[✓] d(Y0) = {value} from sigma({name}) = {sigma}')
        return self._d_y0

    def d_Y1(self, presentation: Optional[Sequence[Sequence[int]]] = None) -> DInvariant:
        ''' d(Y1) = 0 from a contractible filling, certified by its H1 presentation.

            :param presentation: H1 presentation matrix (default from obstruction.homology_ball_presentation)

            :return: DInvariant
        '''
        if presentation is None:
            presentation = self.config.get('obstruction', {}).get('homology_ball_presentation', [[1]])
        certificate = HomologyBallCertificate.from_rows(presentation)
        certificate.validate()
        log.info(f'[✓] d(Y1) = 0 (H1 presentation {[list(r) for r in certificate.presentation]})')
        return DInvariant(cover_label(1), Fraction(0),
                          f'bounds a homology ball, H1 presentation {[list(r) for r in certificate.presentation]}',
                          AXIOMS['homology-ball'], certificate.to_json())

    def monotonicity_certificate(self, k: int, direction: str = UP, d_base=None) -> List[ChainStep]:
        ''' d(Y0) <= d(Yk) (up) or d(Y-k) <= d(Y0) (down) through the chain cobordism W_k.

            The eta-lift of Y_{+-k} carries -+1/k; its chain expansion has linking matrix Q_k (up)
            or -Q_k (down), which is the intersection form of the cobordism from Y0.

            :param int k: k >= 1
            :param str direction: 'up' or 'down'
            :param d_base: d(Y0) to start from (default: recomputed)

            :return: list with one ChainStep
        '''
        if k < 1:
            raise ValueError(f'monotonicity needs k >= 1, got {k}')
        if direction not in (UP, DOWN):
            raise ValueError(f'direction must be {UP!r} or {DOWN!r}, got {direction!r}')
        j = k if direction == UP else -k
        diagram = double_cover_diagram(j)
        if not is_integer_homology_sphere(diagram):
            raise CertificateInvalid(f'{cover_label(j)} is not an integer homology sphere')
        chained = chain_attach(diagram, 'eta')
        form = IntForm(linking_matrix(chained, chain_names('eta', k)))
        expected = build_Qk(k) if direction == UP else -build_Qk(k)
        if form != expected:
            raise CertificateInvalid(f'chain form {form.rows()} differs from {expected.rows()}')

        base = self.d_Y0().value if d_base is None else Fraction(d_base)
        certificate = d_bound(base, form, 'negdef' if direction == UP else 'posdef', self.limit)
        source, target = cover_label(0), cover_label(j)
        log.info(f'[✓] {certificate.describe(source, target)}')
        return [ChainStep(source, target, certificate)]

    def general_monotonicity_certificate(self, n: int, k: int, direction: str = UP, d_base=None,
                                         source: str = 'Sigma_n(L)', target: Optional[str] = None) -> List[ChainStep]:
        ''' The same bound for an n-fold cover after an nk-fold twist along eta.

            Downstairs eta carries -+1/(nk) and links the branch locus once; it lifts to one curve with
            -+1/k. The hypotheses on the cover are recorded on the step, not checked.

            :param int n: cover degree, n >= 2
            :param int k: k >= 1
            :param str direction: 'up' (negative twist, negative-definite) or 'down'
            :param d_base: d of the source cover (default: d(Y0))

            :return: list with one ChainStep
        '''
        if k < 1:
            raise ValueError(f'monotonicity needs k >= 1, got {k}')
        if direction not in (UP, DOWN):
            raise ValueError(f'direction must be {UP!r} or {DOWN!r}, got {direction!r}')
        if n < 2:
            raise UnsupportedLift(f'cover degree must be at least 2, got {n}')
        sign = -1 if direction == UP else 1
        downstairs = BlackboardFraming.from_coefficient(Fraction(sign, n * k), writhe=0)
        (lift,) = lift_framing(downstairs, branch_linking=1, lift_writhe=0, degree=n)
        chained = chain_attach(SurgeryDiagram([SurgeryComponent('eta', lift.coefficient, lift.writhe)]), 'eta')
        form = IntForm(linking_matrix(chained))

        base = self.d_Y0().value if d_base is None else Fraction(d_base)
        certificate = d_bound(base, form, 'negdef' if direction == UP else 'posdef', self.limit)
        target = target or f'{source} after {sign * n * k} twists'
        log.debug(f'General monotonicity n={n}, k={k}: {certificate.describe(source, target)}')
        return [ChainStep(source, target, certificate, tuple(ASSUMPTIONS['general-monotonicity']))]

    def obstruct_pair(self, k: int) -> ObstructionReport:
        ''' Separate d(Sigma_2(K_k)) from d(Sigma_2(K'_k)).

            Down: one chain cobordism of rank k+1 from Y0 to Y-(k+1), the partner's cover.
            Up: k-1 unit steps Y1 -> Y2 -> ... -> Yk, each a double-cover twist along eta with Q_1.

            :param int k: k >= 1

            :return: ObstructionReport
        '''
        if k < 1:
            raise ValueError(f'obstruct_pair needs k >= 1, got {k}')
        y0, y1 = self.d_Y0(), self.d_Y1()
        upper_chain = tuple(self.monotonicity_certificate(k + 1, DOWN, y0.value))

        lower_chain = []
        current = y1.value
        for j in range(1, k):
            (step,) = self.general_monotonicity_certificate(2, 1, UP, current, cover_label(j), cover_label(j + 1))
            lower_chain.append(step)
            current = step.certificate.bound

        member, partner = FamilyMember(2 * k - 1), FamilyMember(-2 * k - 3)
        identity = trace_partner(member.pattern, 0, self.registry) == normalize(partner.pattern, self.registry)
        if not identity:
            log.warning(f'0-trace partner of {member.name} does not normalize to {partner.name}')

        assumptions = [AXIOMS['alternating-one-surgery'], ASSUMPTIONS['y0'],
                       AXIOMS['homology-ball'], ASSUMPTIONS['y1'], AXIOMS['posdef']]
        if lower_chain:
            assumptions.append(AXIOMS['negdef'])
            assumptions.extend(ASSUMPTIONS['general-monotonicity'])
        assumptions.extend([AXIOMS['rational-homology-cobordism'], ASSUMPTIONS['traces'], ASSUMPTIONS['reversal']])

        separated = upper_chain[-1].certificate.bound < (lower_chain[-1].certificate.bound if lower_chain else y1.value)
        verdict = NOT_CONCORDANT if separated and identity else INCONCLUSIVE
        report = ObstructionReport(k, member.name, partner.name, y0, y1, upper_chain, tuple(lower_chain),
                                   identity, verdict, _unique(assumptions))
        log.info(f'[✓] k={k}: {report.verdict} (upper {report.upper_bound}, lower {report.lower_bound})')
        return report

    def shared_invariant_check(self, n: int, radius: Optional[int] = None) -> SharedInvariantReport:
        ''' Compare Delta_n with its partner and with the members n' in [n - r, n + r].

            :param int n: twist parameter
            :param int radius: sample radius (default family.sample_radius)

            :return: SharedInvariantReport
        '''
        if radius is None:
            radius = int(self.config.get('family', {}).get('sample_radius', 20))
        member = FamilyMember(n)
        delta = member.alexander()
        partner_equal = equal_up_to_units(delta, family_alexander(member.partner))
        partner_text = to_text(trace_partner(member.pattern, 0, self.registry))

        sampled = tuple(m for m in range(n - radius, n + radius + 1) if m not in (n, member.partner))
        collisions = tuple(m for m in sampled if family_alexander(m) == delta)
        if collisions:
            log.warning(f'Alexander polynomial of n={n} also appears at {list(collisions)}')

        if member.partner == n:
            status = 'self-partnered'
        elif n % 2 and max(n, member.partner) >= 1:
            status = NOT_CONCORDANT
        else:
            status = INDISTINGUISHABLE
        return SharedInvariantReport(n, member.partner, delta, partner_equal, partner_text,
                                     sampled, collisions, status)

    def slice_obstruction(self, n: int) -> SliceReport:
        ''' Show (tau_n J)(U) is not slice.

            Even n: determinant 15 is not a square. Odd n <= -1: d of the double cover is at most -2,
            but a slice knot's cover is rational homology cobordant to S^3. Odd n >= 1: the 0-trace
            partner -4-n is odd and <= -5.

            :param int n: twist parameter

            :return: SliceReport
        '''
        member = FamilyMember(n)
        det = member.determinant()
        claims = [ASSUMPTIONS['four-genus']]
        if n % 2 == 0:
            if math.isqrt(det)**2 != det:
                return SliceReport(n, det, NOT_SLICE, f'determinant {det} is not a perfect square',
                                   (), _unique([ASSUMPTIONS['slice-determinant']] + claims))
            return SliceReport(n, det, INCONCLUSIVE, f'determinant {det} is a perfect square', (), tuple(claims))

        if n <= -1:
            j = (n + 1) // 2
            y0 = self.d_Y0()
            steps = [] if j == 0 else self.monotonicity_certificate(-j, DOWN, y0.value)
            upper = steps[-1].certificate.bound if steps else y0.value
            cobordant = ChainStep('S^3', cover_label(j), d_bound(0, IntForm([]), 'rational-homology-cobordism'),
                                  (ASSUMPTIONS['slice-cover'],))
            verdict = NOT_SLICE if upper < cobordant.certificate.bound else INCONCLUSIVE
            reason = (f'd({cover_label(j)}) <= {format_fraction(upper)}, '
                      f'but a slice knot would give d = {format_fraction(cobordant.certificate.bound)}')
            assumptions = [AXIOMS['alternating-one-surgery'], ASSUMPTIONS['y0']]
            if steps:
                assumptions.append(AXIOMS['posdef'])
            assumptions += [ASSUMPTIONS['slice-cover'], AXIOMS['rational-homology-cobordism']] + claims
            return SliceReport(n, det, verdict, reason, tuple(steps) + (cobordant,), _unique(assumptions))

        partner = self.slice_obstruction(member.partner)
        identity = trace_partner(member.pattern, 0, self.registry) == normalize(FamilyMember(member.partner).pattern,
                                                                                self.registry)
        verdict = partner.verdict if identity else INCONCLUSIVE
        reason = f'shares its 0-trace with (tau_{member.partner} J)(U): {partner.reason}'
        assumptions = [ASSUMPTIONS['traces'], ASSUMPTIONS['slice-trace']] + list(partner.assumptions)
        return SliceReport(n, det, verdict, reason, partner.certificates, _unique(assumptions))

    def concordance_inverse_report(self, expr) -> InverseReport:
        ''' bar(P*) and the check that inverting twice gives P back. '''
        e = parse_pattern(expr) if isinstance(expr, str) else expr
        inverse = concordance_inverse(e, self.registry)
        back = concordance_inverse(inverse, self.registry)
        return InverseReport(to_text(e), to_text(inverse), to_text(back), back == normalize(e, self.registry))


# Module-level entry points with a default pipeline

def d_Y0(config=None) -> DInvariant:
    return ObstructionPipeline(config).d_Y0()


def d_Y1(presentation=None, config=None) -> DInvariant:
    return ObstructionPipeline(config).d_Y1(presentation)


def monotonicity_certificate(k: int, direction: str = UP, d_base=None, config=None) -> List[ChainStep]:
    return ObstructionPipeline(config).monotonicity_certificate(k, direction, d_base)


def general_monotonicity_certificate(n: int, k: int, direction: str = UP, d_base=None, config=None) -> List[ChainStep]:
    return ObstructionPipeline(config).general_monotonicity_certificate(n, k, direction, d_base)


def obstruct_pair(k: int, config=None) -> ObstructionReport:
    return ObstructionPipeline(config).obstruct_pair(k)


def shared_invariant_check(n: int, radius: Optional[int] = None, config=None) -> SharedInvariantReport:
    return ObstructionPipeline(config).shared_invariant_check(n, radius)


def slice_obstruction(n: int, config=None) -> SliceReport:
    return ObstructionPipeline(config).slice_obstruction(n)


def concordance_inverse_report(expr, config=None) -> InverseReport:
    return ObstructionPipeline(config).concordance_inverse_report(expr)
