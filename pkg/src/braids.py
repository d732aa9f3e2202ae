"""
Knots as closed braids.
Seifert's algorithm on the closure gives one disc per strand and one half-twisted band per crossing;
the Seifert matrix comes from the loops running between consecutive bands of each column.
"""

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Tuple

import numpy as np
import sympy as sp

from . import laurent
from .config_manager import fixtures_path
from .constants import FIXTURE_VERSION
from .errors import Degenerate, FixtureError, InvalidBraid, NotAKnot
from .lattice import exact_det, inertia
from .laurent import LaurentPoly

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class BraidWord:
    ''' Braid on `strands` strands; letter i is sigma_|i| with crossing sign sign(i). '''
    strands: int
    letters: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, 'letters', tuple(int(x) for x in self.letters))
        if self.strands < 2:
            raise InvalidBraid(f'a braid needs at least 2 strands, got {self.strands}')
        for letter in self.letters:
            if letter == 0 or abs(letter) > self.strands - 1:
                raise InvalidBraid(f'letter {letter} out of range for {self.strands} strands')

    def permutation(self) -> List[int]:
        ''' Position reached by the strand starting at each position after one pass. '''
        perm = list(range(self.strands))
        position_of = list(range(self.strands))
        for letter in self.letters:
            i = abs(letter) - 1
            position_of[i], position_of[i + 1] = position_of[i + 1], position_of[i]
        for pos, strand in enumerate(position_of):
            perm[strand] = pos
        return perm

    def component_count(self) -> int:
        perm = self.permutation()
        seen = set()
        count = 0
        for start in range(self.strands):
            if start in seen:
                continue
            count += 1
            current = start
            while current not in seen:
                seen.add(current)
                current = perm[current]
        return count

    def is_knot(self) -> bool:
        return self.component_count() == 1

    def to_text(self) -> str:
        return ' '.join(str(x) for x in self.letters)


def parse_braid(text: str, strands: Optional[int] = None) -> BraidWord:
    ''' Parse whitespace-separated signed integers, e.g. "1 1 1".

        :param str text: braid word
        :param int strands: number of strands (default: one more than the largest generator)

        :return: BraidWord
    '''
    try:
        letters = [int(tok) for tok in text.split()]
    except ValueError as e:
        raise InvalidBraid(f'braid words are signed integers: {e}') from None
    if not letters and strands is None:
        raise InvalidBraid('empty braid word needs an explicit strand count')
    if strands is None:
        strands = max(abs(x) for x in letters) + 1
    return BraidWord(strands, tuple(letters))


@dataclass(frozen=True)
class SeifertMatrix:
    entries: Tuple[Tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return len(self.entries)

    @property
    def genus(self) -> int:
        return self.size // 2

    def as_array(self) -> np.ndarray:
        if not self.entries:
            return np.zeros((0, 0), dtype=object)
        return np.array(self.entries, dtype=object)

    def symmetrized(self) -> List[List[int]]:
        V = self.as_array()
        return (V + V.T).tolist()

    def intersection_form(self) -> List[List[int]]:
        V = self.as_array()
        return (V - V.T).tolist()

    def congruent(self, P) -> 'SeifertMatrix':
        ''' P V P^T for an integer matrix P. '''
        P = np.array(P, dtype=object)
        W = P.dot(self.as_array()).dot(P.T)
        return SeifertMatrix(tuple(tuple(int(x) for x in row) for row in W))


def seifert_matrix(b: BraidWord) -> SeifertMatrix:
    ''' Seifert matrix of the canonical surface of the braid closure.

        Loops run between consecutive bands (p, q) of one column. Entries:
        self-linking -1 for two positive bands, +1 for two negative ones, 0 when mixed;
        consecutive loops on a column link through the shared band, below or above the diagonal by its sign;
        loops on adjacent columns link +-1 when their band positions interleave.

        :param BraidWord b: braid whose closure is a knot

        :return: SeifertMatrix of size crossings - strands + 1
    '''
    if not b.is_knot():
        raise NotAKnot(f'closure of [{b.to_text()}] has {b.component_count()} components')

    columns: Dict[int, List[Tuple[int, int]]] = {i: [] for i in range(1, b.strands)}
    for pos, letter in enumerate(b.letters):
        columns[abs(letter)].append((pos, 1 if letter > 0 else -1))

    loops = []  # (column, (pos, sign) of first band, (pos, sign) of second band)
    for col in range(1, b.strands):
        bands = columns[col]
        loops.extend((col, bands[j], bands[j + 1]) for j in range(len(bands) - 1))

    size = len(loops)
    V = [[0] * size for _ in range(size)]
    for x, (col, first, second) in enumerate(loops):
        if first[1] == second[1]:
            V[x][x] = -first[1]
        if x + 1 < size and loops[x + 1][0] == col:
            if second[1] > 0:
                V[x + 1][x] = 1
            else:
                V[x][x + 1] = -1
        for y, (col2, low, high) in enumerate(loops):
            if col2 != col + 1:
                continue
            if low[0] < first[0] < high[0] < second[0]:
                V[y][x] = 1
            elif first[0] < low[0] < second[0] < high[0]:
                V[y][x] = -1

    matrix = SeifertMatrix(tuple(tuple(row) for row in V))
    if size and exact_det(matrix.intersection_form()) != 1:
        raise Degenerate(f'det(V - V^T) != 1 for [{b.to_text()}]')
    log.debug(f'Seifert matrix of size {size} for [{b.to_text()}]')
    return matrix


def alexander_from_seifert(V: SeifertMatrix) -> LaurentPoly:
    ''' normalize_alexander(det(V - t V^T)); 1 for the empty matrix. '''
    if V.size == 0:
        return laurent.ONE
    M = sp.Matrix([list(row) for row in V.entries])
    det = (M - laurent.t * M.T).det(method='berkowitz')
    return laurent.normalize_alexander(LaurentPoly.from_sympy(det, laurent.t))


def signature(V: SeifertMatrix) -> int:
    ''' Signature of V + V^T by exact inertia. '''
    positive, negative, zero = inertia(V.symmetrized())
    if zero:
        raise Degenerate('V + V^T is singular, not the Seifert matrix of a knot')
    return positive - negative


def determinant(V: SeifertMatrix) -> int:
    return abs(exact_det(V.symmetrized()))


# Fixtures

@dataclass(frozen=True)
class KnotFixture:
    name: str
    braid: BraidWord
    expected: Dict = field(default_factory=dict)
    provenance: str = ''
    identification: Optional[str] = None   # 'unverified identification' for stand-in encodings


class FixtureStore:
    ''' Versioned braid fixtures with the invariant values they must reproduce. '''

    def __init__(self, config=None, path=None):
        self.config = config or {}
        self.path = Path(path) if path else fixtures_path(self.config)
        self._fixtures: Optional[Dict[str, KnotFixture]] = None

    def _load(self) -> Dict[str, KnotFixture]:
        if self._fixtures is not None:
            return self._fixtures
        if not self.path.exists():
            raise FixtureError(f'fixture file missing: {self.path}')
        try:
            data = json.loads(self.path.read_text())
        except json.JSONDecodeError as e:
            raise FixtureError(f'fixture file {self.path} is not valid JSON: {e}') from None
        if data.get('version') != FIXTURE_VERSION:
            raise FixtureError(f'fixture version {data.get("version")} unsupported (expected {FIXTURE_VERSION})')
        fixtures = {}
        for entry in data.get('knots', []):
            try:
                braid = BraidWord(int(entry['strands']), tuple(entry['word']))
            except KeyError as e:
                raise FixtureError(f'fixture entry missing field {e}') from None
            except InvalidBraid as e:
                raise FixtureError(f'fixture {entry.get("name")}: {e}') from None
            fixtures[entry['name']] = KnotFixture(entry['name'], braid, entry.get('expected', {}),
                                                  entry.get('provenance', ''), entry.get('identification'))
        log.info(f'Loaded {len(fixtures)} knot fixtures from {self.path}')
        self._fixtures = fixtures
        return fixtures

    def names(self) -> List[str]:
        return sorted(self._load())

    def get(self, name: str) -> KnotFixture:
        fixtures = self._load()
        if name not in fixtures:
            raise FixtureError(f'no fixture named {name!r} in {self.path}')
        return fixtures[name]

    def verify(self, name: str) -> Dict[str, Tuple]:
        ''' Recompute every recorded invariant of a fixture.

            :param str name: fixture name

            :return: {invariant: (expected, computed)} for the mismatching invariants (empty if all agree)
        '''
        fixture = self.get(name)
        V = seifert_matrix(fixture.braid)
        computed = {
            'signature': signature(V),
            'determinant': determinant(V),
            'alexander': laurent.to_json(alexander_from_seifert(V)),
        }
        mismatches = {}
        for key, expected in fixture.expected.items():
            if key in computed and computed[key] != expected:
                mismatches[key] = (expected, computed[key])
        if mismatches:
            log.warning(f'Fixture {name} disagrees with its recorded values: {mismatches}')
        return mismatches
