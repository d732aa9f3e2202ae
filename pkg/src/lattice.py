""" Symmetric integer bilinear forms: exact inertia, characteristic vectors, standard bases and d-bounds. """

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np

from .constants import (BOUND_KINDS, DEGENERATE, INDEFINITE, NEGATIVE_DEFINITE,
                        POSITIVE_DEFINITE)
from .errors import (CertificateInvalid, DimensionMismatch, InvalidMatrix, KindMismatch,
                     NotSymmetric, SearchLimitExceeded)

log = logging.getLogger(__name__)

DEFAULT_MAX_ENUMERATION = 2_000_000

# int64 evaluation is exact while |Q|max * |v|max^2 * k^2 stays below this
_INT64_SAFE = 2**62


def exact_int(x) -> int:
    ''' x as an int, if it is one; 2.0 and Fraction(4, 2) pass, 1.9 and '1' do not. '''
    try:
        value = int(x)
    except (TypeError, ValueError):
        raise InvalidMatrix(f'entry {x!r} is not an integer') from None
    if value != x:
        raise InvalidMatrix(f'entry {x!r} is not an integer')
    return value


def _int_matrix(rows) -> np.ndarray:
    try:
        rows = [list(r) for r in rows]
    except TypeError:
        raise InvalidMatrix('matrix rows must be sequences of integers') from None
    if not rows:
        return np.zeros((0, 0), dtype=object)
    size = len(rows)
    if any(len(r) != size for r in rows):
        raise DimensionMismatch(f'matrix is not square: {[len(r) for r in rows]} columns for {size} rows')
    return np.array([[exact_int(x) for x in r] for r in rows], dtype=object)


class IntForm:
    ''' A symmetric integer matrix Q viewed as a bilinear form on Z^k. '''
    __slots__ = ('matrix', '_small')

    def __init__(self, matrix):
        Q = _int_matrix(matrix)
        if not (Q == Q.T).all():
            raise NotSymmetric('intersection forms must be symmetric')
        self.matrix = Q
        largest = max((abs(x) for x in Q.flat), default=0)
        self._small = Q.astype(np.int64) if largest < 2**31 else None

    @property
    def rank(self) -> int:
        return self.matrix.shape[0]

    def rows(self) -> List[List[int]]:
        return [[int(x) for x in row] for row in self.matrix]

    def __neg__(self):
        return IntForm(-self.matrix)

    def __eq__(self, other):
        if not isinstance(other, IntForm):
            return NotImplemented
        return self.rows() == other.rows()

    def __hash__(self):
        return hash(tuple(map(tuple, self.rows())))

    def __repr__(self):
        return f'IntForm({self.rows()})'


def build_Qk(k: int) -> IntForm:
    ''' The chain form with diagonal (-1, -2, ..., -2) and -1 on the off-diagonals.

        :param int k: rank, k >= 1

        :return: IntForm Q_k
    '''
    if k < 1:
        raise ValueError(f'Q_k needs k >= 1, got {k}')
    Q = [[0] * k for _ in range(k)]
    for i in range(k):
        Q[i][i] = -1 if i == 0 else -2
        if i + 1 < k:
            Q[i][i + 1] = Q[i + 1][i] = -1
    return IntForm(Q)


def form_eval(f: IntForm, v: Sequence[int]) -> int:
    ''' v Q v^T, exactly. '''
    vec = [int(x) for x in v]
    if len(vec) != f.rank:
        raise DimensionMismatch(f'vector of length {len(vec)} for a rank {f.rank} form')
    if f.rank == 0:
        return 0
    largest = max(abs(x) for x in vec)
    if f._small is not None and max(1, int(np.abs(f._small).max())) * largest**2 * f.rank**2 < _INT64_SAFE:
        a = np.asarray(vec, dtype=np.int64)
        return int(a @ f._small @ a)
    a = np.array(vec, dtype=object)
    return int(a.dot(f.matrix).dot(a))


def pairing(f: IntForm, v: Sequence[int], w: Sequence[int]) -> int:
    ''' v Q w^T. '''
    if len(v) != f.rank or len(w) != f.rank:
        raise DimensionMismatch(f'vectors of length {len(v)}, {len(w)} for a rank {f.rank} form')
    a = np.array([int(x) for x in v], dtype=object)
    b = np.array([int(x) for x in w], dtype=object)
    return int(a.dot(f.matrix).dot(b)) if f.rank else 0


# Exact rational reductions

def _fraction_matrix(rows) -> np.ndarray:
    rows = [list(r) for r in rows]
    if not rows:
        return np.zeros((0, 0), dtype=object)
    return np.array([[Fraction(x) for x in r] for r in rows], dtype=object)


def inertia(matrix) -> Tuple[int, int, int]:
    ''' Count positive, negative and zero diagonal entries of a congruence diagonalization.

        Symmetric Gaussian reduction over the rationals; when no diagonal pivot is left,
        row/column i is replaced by i + j for an off-diagonal entry a_ij != 0.

        :param matrix: symmetric rational matrix (rows)

        :return: (positive, negative, zero)
    '''
    A = _fraction_matrix(matrix)
    if not (A == A.T).all():
        raise NotSymmetric('inertia is only defined for symmetric matrices')
    active = list(range(A.shape[0]))
    positive = negative = 0
    while active:
        pivot = next((i for i in active if A[i, i] != 0), None)
        if pivot is None:
            pair = next(((i, j) for i in active for j in active if i < j and A[i, j] != 0), None)
            if pair is None:
                break
            i, j = pair
            A[i, :] += A[j, :]
            A[:, i] += A[:, j]
            pivot = i
        d = A[pivot, pivot]
        if d > 0:
            positive += 1
        else:
            negative += 1
        active.remove(pivot)
        for r in active:
            if A[r, pivot] != 0:
                factor = A[r, pivot] / d
                A[r, :] -= factor * A[pivot, :]
                A[:, r] -= factor * A[:, pivot]
    zero = len(active)
    return positive, negative, zero


def exact_det(matrix) -> int:
    ''' Determinant of an integer matrix by fraction-based elimination. '''
    A = _fraction_matrix(_int_matrix(matrix))
    n = A.shape[0]
    det = Fraction(1)
    for c in range(n):
        pivot = next((r for r in range(c, n) if A[r, c] != 0), None)
        if pivot is None:
            return 0
        if pivot != c:
            A[[c, pivot]] = A[[pivot, c]]
            det = -det
        det *= A[c, c]
        for r in range(c + 1, n):
            if A[r, c] != 0:
                A[r, c:] -= (A[r, c] / A[c, c]) * A[c, c:]
    return int(det)


def definiteness(f: IntForm) -> str:
    ''' Classify by exact inertia; the rank 0 form counts as negative-definite (vacuously). '''
    positive, negative, zero = inertia(f.rows())
    if zero:
        return DEGENERATE
    if negative == f.rank:
        return NEGATIVE_DEFINITE
    if positive == f.rank:
        return POSITIVE_DEFINITE
    return INDEFINITE


def _ldl_positive(A: np.ndarray) -> Tuple[List[Fraction], List[List[Fraction]]]:
    ''' A = R^T D R for positive-definite A with R unit upper triangular. '''
    n = A.shape[0]
    d: List[Fraction] = []
    R = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for i in range(n):
        di = Fraction(A[i, i]) - sum((R[k][i]**2 * d[k] for k in range(i)), Fraction(0))
        if di <= 0:
            raise KindMismatch('form is not positive definite')
        d.append(di)
        for j in range(i + 1, n):
            s = Fraction(A[i, j]) - sum((R[k][i] * R[k][j] * d[k] for k in range(i)), Fraction(0))
            R[i][j] = s / di
    return d, R


def _integers_near(center: Fraction, radius2: Fraction) -> range:
    ''' Integers y with (y - center)^2 <= radius2, as a range (exact). '''
    if radius2 < 0:
        return range(0)
    s = math.sqrt(radius2)
    lo = math.floor(center - Fraction(s)) - 1
    hi = math.ceil(center + Fraction(s)) + 1
    while (lo - center)**2 > radius2 and lo <= hi:
        lo += 1
    while (hi - center)**2 > radius2 and hi >= lo:
        hi -= 1
    return range(lo, hi + 1)


def short_vectors(A, bound: Fraction, limit: int = DEFAULT_MAX_ENUMERATION) -> Iterator[Tuple[int, ...]]:
    ''' Enumerate every integer x with x A x^T <= bound for positive-definite A.

        Back-substitution through the LDL factorization fixes the last coordinate first;
        each coordinate ranges over the integers allowed by the remaining budget.

        :param A: positive-definite integer matrix
        :param Fraction bound: ellipsoid radius squared
        :param int limit: maximum number of lattice points to visit

        :return: iterator of integer tuples (includes the zero vector)
    '''
    A = _fraction_matrix(A)
    n = A.shape[0]
    if n == 0:
        yield ()
        return
    d, R = _ldl_positive(A)
    x = [0] * n
    visited = 0

    def descend(i: int, remaining: Fraction):
        nonlocal visited
        if i < 0:
            visited += 1
            if visited > limit:
                raise SearchLimitExceeded(f'more than {limit} lattice points inside x.A.x <= {bound}')
            yield tuple(x)
            return
        center = -sum((R[i][j] * x[j] for j in range(i + 1, n)), Fraction(0))
        for y in _integers_near(center, remaining / d[i]):
            x[i] = y
            yield from descend(i - 1, remaining - d[i] * (y - center)**2)
        x[i] = 0

    yield from descend(n - 1, Fraction(bound))


# Characteristic vectors

def is_characteristic(f: IntForm, v: Sequence[int]) -> bool:
    ''' v.w = w.w (mod 2) for every basis vector w. '''
    if len(v) != f.rank:
        raise DimensionMismatch(f'vector of length {len(v)} for a rank {f.rank} form')
    if f.rank == 0:
        return True
    products = f.matrix.dot(np.array([int(x) for x in v], dtype=object))
    return all((int(products[i]) - int(f.matrix[i, i])) % 2 == 0 for i in range(f.rank))


def _solve_mod2(M: List[List[int]], b: List[int]) -> Optional[List[int]]:
    n = len(M)
    rows = [[M[i][j] % 2 for j in range(n)] + [b[i] % 2] for i in range(n)]
    pivots = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, n) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        for i in range(n):
            if i != r and rows[i][c]:
                rows[i] = [a ^ b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    if any(row[n] for row in rows[r:]):
        return None
    x = [0] * n
    for i, c in enumerate(pivots):
        x[c] = rows[i][n]
    return x


def characteristic_representative(f: IntForm) -> Tuple[int, ...]:
    ''' A characteristic vector with 0/1 entries (one always exists for a symmetric form). '''
    x = _solve_mod2(f.rows(), [int(f.matrix[i, i]) for i in range(f.rank)])
    if x is None:
        raise CertificateInvalid('no characteristic vector found mod 2; the form is not symmetric')
    return tuple(x)


@dataclass(frozen=True)
class CharSearchResult:
    square: int
    witness: Tuple[int, ...]
    method: str                       # 'standard-basis' or 'ellipsoid-enumeration'
    search_bound: Optional[Fraction]  # x.A.x bound enumerated, A = -Q
    enumerated: int = 0


@dataclass(frozen=True)
class NotStandard:
    ''' Returned by diagonalize_to_standard when no standard basis was found. '''
    reason: str

    def __bool__(self):
        return False


def _chain_basis(k: int) -> np.ndarray:
    # rows of T^-1 where Q_k = -T T^T and (vT)_i = v_i + v_{i+1}
    return np.array([[(-1)**(i - j) if i >= j else 0 for j in range(k)] for i in range(k)], dtype=object)


def _complete_to_unimodular(y: Sequence[int]) -> np.ndarray:
    ''' Unimodular integer matrix whose first row is the primitive vector y. '''
    n = len(y)
    v = [int(a) for a in y]
    inverse = np.array([[int(i == j) for j in range(n)] for i in range(n)], dtype=object)
    while sum(1 for a in v if a) > 1:
        i = min((j for j in range(n) if v[j]), key=lambda j: abs(v[j]))
        for j in range(n):
            if j != i and v[j]:
                q = v[j] // v[i]
                v[j] -= q * v[i]
                inverse[i, :] += q * inverse[j, :]
    i = next(j for j in range(n) if v[j])
    if abs(v[i]) != 1:
        raise ValueError(f'{list(y)} is not primitive')
    if i != 0:
        v[0], v[i] = v[i], v[0]
        inverse[[0, i]] = inverse[[i, 0]]
    if v[0] == -1:
        inverse[0, :] = -inverse[0, :]
    return inverse


def _unit_vector(f: IntForm, basis: np.ndarray, sign: int, limit: int) -> Optional[Tuple[int, ...]]:
    ''' A vector of norm `sign` in the lattice spanned by `basis`, preferring basis vectors. '''
    gram = basis.dot(f.matrix).dot(basis.T)
    size = gram.shape[0]
    for i in range(size):
        if gram[i, i] == sign:
            return tuple(int(i == j) for j in range(size))
    for x in short_vectors(sign * gram, Fraction(1), limit):
        if any(x):
            return x
    return None


def diagonalize_to_standard(f: IntForm, limit: int = DEFAULT_MAX_ENUMERATION) -> Union[np.ndarray, NotStandard]:
    ''' Find unimodular P with P Q P^T = -I (negative-definite) or +I (positive-definite).

        Chain forms (Q_k and its negative) use the basis dual to the sum-of-squares coordinates
        v_1 + v_2, ..., v_{k-1} + v_k, v_k. Other forms are peeled one norm -+1 vector at a time;
        if no such vector remains the form is reported as NotStandard.

        :param IntForm f: definite form
        :param int limit: enumeration cap for the short-vector search

        :return: P as an integer object array, or NotStandard
    '''
    kind = definiteness(f)
    if kind not in (NEGATIVE_DEFINITE, POSITIVE_DEFINITE):
        return NotStandard(f'form is {kind}')
    k = f.rank
    if k == 0:
        return np.zeros((0, 0), dtype=object)
    sign = -1 if kind == NEGATIVE_DEFINITE else 1
    chain = build_Qk(k)
    if f == chain or f == -chain:
        return _chain_basis(k)

    basis = np.array([[int(i == j) for j in range(k)] for i in range(k)], dtype=object)
    for p in range(k):
        rest = basis[p:]
        y = _unit_vector(f, rest, sign, limit)
        if y is None:
            log.debug(f'No norm {sign} vector left after peeling {p} of {k}')
            return NotStandard(f'no vector of square {sign} in a rank {k - p} summand')
        rest = _complete_to_unimodular(y).dot(rest)
        head = rest[0]
        for r in range(1, rest.shape[0]):
            # project onto the orthogonal complement of head; 1/(head.head) = sign
            rest[r] = rest[r] - sign * pairing(f, rest[r], head) * head
        basis[p:] = rest
    gram = basis.dot(f.matrix).dot(basis.T)
    assert (gram == sign * np.eye(k, dtype=int)).all()
    return basis


def max_char_square(f: IntForm, limit: int = DEFAULT_MAX_ENUMERATION) -> CharSearchResult:
    ''' Maximum of xi.xi over characteristic xi for a negative-definite form.

        Standard forms give -rank with the all-ones witness in the standard basis. Otherwise every
        lattice point with -xi.xi no larger than that of a 0/1 characteristic vector is enumerated,
        which certifies optimality.

        :param IntForm f: negative-definite form

        :return: CharSearchResult
    '''
    if definiteness(f) != NEGATIVE_DEFINITE:
        raise KindMismatch(f'max_char_square needs a negative-definite form, got {definiteness(f)}')
    k = f.rank
    if k == 0:
        return CharSearchResult(0, (), 'standard-basis', None)

    P = diagonalize_to_standard(f, limit)
    if not isinstance(P, NotStandard):
        witness = tuple(int(x) for x in P.T.dot(np.ones(k, dtype=object)))
        log.debug(f'Standard basis found for rank {k}; char square {-k}')
        return CharSearchResult(-k, witness, 'standard-basis', None)

    start = characteristic_representative(f)
    bound = Fraction(-form_eval(f, start))
    A = -f.matrix
    best: Optional[Tuple[int, Tuple[int, ...]]] = None
    enumerated = 0
    for x in short_vectors(A, bound, limit):
        enumerated += 1
        if not is_characteristic(f, x):
            continue
        candidate = (-form_eval(f, x), x)
        if best is None or candidate < best:
            best = candidate
    log.debug(f'Enumerated {enumerated} lattice points with -x.x <= {bound}')
    return CharSearchResult(-best[0], best[1], 'ellipsoid-enumeration', bound, enumerated)


def min_char_square(f: IntForm, limit: int = DEFAULT_MAX_ENUMERATION) -> CharSearchResult:
    ''' Minimum of xi.xi over characteristic xi for a positive-definite form. '''
    if definiteness(f) != POSITIVE_DEFINITE and f.rank:
        raise KindMismatch(f'min_char_square needs a positive-definite form, got {definiteness(f)}')
    result = max_char_square(-f, limit)
    return CharSearchResult(-result.square, result.witness, result.method,
                            result.search_bound, result.enumerated)


# d-invariant bounds

@dataclass(frozen=True)
class BoundCertificate:
    ''' One application of a definite-cobordism inequality (or cobordism equality). '''
    kind: str
    dY0: Fraction
    rank: int
    char_square: int
    bound: Fraction
    witness: Tuple[int, ...]
    form: Tuple[Tuple[int, ...], ...]
    method: str = 'standard-basis'
    search_bound: Optional[Fraction] = None

    @property
    def relation(self) -> str:
        return BOUND_KINDS[self.kind]

    def describe(self, source: str = 'Y0', target: str = 'Y1') -> str:
        if self.kind == 'rational-homology-cobordism':
            return f'd({target}) = d({source}) = {_fmt(self.bound)}'
        sign = '+' if self.kind == 'negdef' else '-'
        return (f'd({target}) {self.relation} {_fmt(self.dY0)} + ({self.char_square} {sign} {self.rank})/4'
                f' = {_fmt(self.bound)}')

    def to_json(self) -> dict:
        return {
            'kind': self.kind,
            'dY0': _fmt(self.dY0),
            'rank': self.rank,
            'charSquare': self.char_square,
            'bound': _fmt(self.bound),
            'relation': self.relation,
            'witness': list(self.witness),
            'form': [list(r) for r in self.form],
            'method': self.method,
            'searchBound': None if self.search_bound is None else _fmt(self.search_bound),
        }

    @classmethod
    def from_json(cls, data: dict) -> 'BoundCertificate':
        return cls(
            kind=data['kind'],
            dY0=Fraction(data['dY0']),
            rank=int(data['rank']),
            char_square=int(data['charSquare']),
            bound=Fraction(data['bound']),
            witness=tuple(int(x) for x in data['witness']),
            form=tuple(tuple(int(x) for x in r) for r in data['form']),
            method=data.get('method', 'standard-basis'),
            search_bound=None if data.get('searchBound') is None else Fraction(data['searchBound']),
        )


def _fmt(value: Fraction) -> str:
    value = Fraction(value)
    return str(value.numerator) if value.denominator == 1 else f'{value.numerator}/{value.denominator}'


def d_bound(dY0, f: IntForm, kind: str, limit: int = DEFAULT_MAX_ENUMERATION) -> BoundCertificate:
    ''' Apply the d-invariant inequality for a cobordism with intersection form f.

        :param dY0: d-invariant of the incoming end (rational)
        :param IntForm f: intersection form of the cobordism
        :param str kind: 'negdef', 'posdef' or 'rational-homology-cobordism'

        :return: BoundCertificate for the outgoing end
    '''
    if kind not in BOUND_KINDS:
        raise KindMismatch(f'unknown bound kind {kind!r}')
    dY0 = Fraction(dY0)
    form = tuple(tuple(r) for r in f.rows())
    if kind == 'rational-homology-cobordism':
        if f.rank:
            raise KindMismatch(f'a rational homology cobordism has empty intersection form, got rank {f.rank}')
        return BoundCertificate(kind, dY0, 0, 0, dY0, (), form)

    expected = NEGATIVE_DEFINITE if kind == 'negdef' else POSITIVE_DEFINITE
    actual = definiteness(f)
    if f.rank == 0 or actual != expected:
        raise KindMismatch(f'{kind} bound needs a {expected} form, got {actual} of rank {f.rank}')
    if kind == 'negdef':
        result = max_char_square(f, limit)
        bound = dY0 + Fraction(result.square + f.rank, 4)
    else:
        result = min_char_square(f, limit)
        bound = dY0 + Fraction(result.square - f.rank, 4)
    return BoundCertificate(kind, dY0, f.rank, result.square, bound, result.witness, form,
                            result.method, result.search_bound)


def verify_certificate(cert: BoundCertificate, limit: int = DEFAULT_MAX_ENUMERATION) -> bool:
    ''' Re-derive a certificate from its stored form; raises CertificateInvalid on any mismatch. '''
    if cert.kind not in BOUND_KINDS:
        raise CertificateInvalid(f'unknown kind {cert.kind!r}')
    f = IntForm(cert.form)
    if f.rank != cert.rank:
        raise CertificateInvalid(f'rank {cert.rank} recorded for a rank {f.rank} form')
    if cert.kind == 'rational-homology-cobordism':
        if f.rank or cert.bound != cert.dY0:
            raise CertificateInvalid('cobordism certificate must have empty form and bound = dY0')
        return True

    expected = NEGATIVE_DEFINITE if cert.kind == 'negdef' else POSITIVE_DEFINITE
    if definiteness(f) != expected:
        raise CertificateInvalid(f'form is {definiteness(f)}, certificate claims {expected}')
    if not is_characteristic(f, cert.witness):
        raise CertificateInvalid(f'witness {cert.witness} is not characteristic')
    if form_eval(f, cert.witness) != cert.char_square:
        raise CertificateInvalid(f'witness square {form_eval(f, cert.witness)} != {cert.char_square}')
    optimum = max_char_square(f, limit) if cert.kind == 'negdef' else min_char_square(f, limit)
    if optimum.square != cert.char_square:
        raise CertificateInvalid(f'optimal characteristic square is {optimum.square}, not {cert.char_square}')
    offset = cert.char_square + cert.rank if cert.kind == 'negdef' else cert.char_square - cert.rank
    if cert.bound != cert.dY0 + Fraction(offset, 4):
        raise CertificateInvalid(f'bound {cert.bound} does not follow from dY0 {cert.dY0}')
    return True
