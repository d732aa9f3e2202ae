import json

import pytest
import sympy as sp

from src import laurent
from src.braids import (BraidWord, FixtureStore, SeifertMatrix, alexander_from_seifert, determinant,
                        parse_braid, seifert_matrix, signature)
from src.errors import Degenerate, FixtureError, InvalidBraid, NotAKnot
from src.lattice import exact_det
from src.laurent import LaurentPoly, equal_up_to_units, poly_eval_int
from .conftest import random_unimodular


def test_parse_braid():
    b = parse_braid('1 1 1')
    assert b == BraidWord(2, (1, 1, 1))
    assert parse_braid('1 -2 1 -2').strands == 3
    assert parse_braid('1', strands=4).strands == 4


@pytest.mark.parametrize('text, strands', [('1 0 1', None), ('1 3', 3), ('a b', None), ('', None)])
def test_parse_braid_rejects(text, strands):
    with pytest.raises(InvalidBraid):
        parse_braid(text, strands)


def test_components():
    assert BraidWord(2, (1, 1)).component_count() == 2
    assert BraidWord(3, (1, 2)).is_knot()
    assert BraidWord(3, ()).component_count() == 3


def test_links_are_rejected():
    with pytest.raises(NotAKnot):
        seifert_matrix(parse_braid('1 1'))


def test_trefoil():
    V = seifert_matrix(parse_braid('1 1 1'))
    assert V.size == 2
    assert V.genus == 1
    assert signature(V) == -2
    assert determinant(V) == 3
    assert alexander_from_seifert(V).coefficients == {-1: 1, 0: -1, 1: 1}


def test_figure_eight():
    V = seifert_matrix(parse_braid('1 -2 1 -2'))
    assert signature(V) == 0
    assert determinant(V) == 5
    assert laurent.to_text(alexander_from_seifert(V)) == '-t^-1 + 3 - t'


def test_alexander_matches_determinant_expansion():
    for word in ('1 1 1', '1 -2 1 -2', '1 1 1 2 -1 2'):
        V = seifert_matrix(parse_braid(word))
        M = sp.Matrix([list(r) for r in V.entries])
        oracle = LaurentPoly.from_sympy((M - laurent.t * M.T).det(method='bareiss'))
        assert equal_up_to_units(alexander_from_seifert(V), oracle)


def test_unknot_has_empty_seifert_matrix():
    V = seifert_matrix(parse_braid('1'))
    assert V.size == 0
    assert signature(V) == 0
    assert determinant(V) == 1
    assert alexander_from_seifert(V) == laurent.ONE


def test_singular_symmetrization_is_degenerate():
    with pytest.raises(Degenerate):
        signature(SeifertMatrix(((0, 0), (0, 0))))


def test_congruence_preserves_invariants():
    V = seifert_matrix(parse_braid('1 1 1'))
    W = V.congruent([[1, 1], [0, 1]])
    assert signature(W) == signature(V)
    assert determinant(W) == determinant(V)
    assert exact_det(W.intersection_form()) == exact_det(V.intersection_form())


def _random_knot_braids(rng, count):
    braids = []
    while len(braids) < count:
        strands = int(rng.integers(3, 5))
        length = int(rng.integers(strands, 10))
        letters = tuple(int(g) * int(s) for g, s in zip(rng.integers(1, strands, size=length),
                                                          rng.choice([-1, 1], size=length)))
        b = BraidWord(strands, letters)
        if b.is_knot():
            braids.append(b)
    return braids


def test_random_knots_invariants(rng):
    for b in _random_knot_braids(rng, 40):
        V = seifert_matrix(b)
        delta = alexander_from_seifert(V)
        assert delta == delta.substitute_inverse()
        assert poly_eval_int(delta, 1) == 1
        assert determinant(V) == abs(poly_eval_int(delta, -1))
        assert determinant(V) % 2 == 1
        if V.size:
            W = V.congruent(random_unimodular(rng, V.size))
            assert signature(W) == signature(V)
            assert determinant(W) == determinant(V)
            M = sp.Matrix([list(r) for r in V.entries])
            oracle = LaurentPoly.from_sympy((M - laurent.t * M.T).det(method='bareiss'))
            assert equal_up_to_units(delta, oracle)



def test_all_fixtures_reproduce_recorded_invariants(store):
    assert set(store.names()) >= {'unknot', '3_1', '4_1', '5_2'}
    for name in store.names():
        assert store.verify(name) == {}


def test_fixture_seifert_invariants(store):
    for name in store.names():
        V = seifert_matrix(store.get(name).braid)
        if V.size:
            assert exact_det(V.intersection_form()) == 1
        assert determinant(V) % 2 == 1


def test_five_two_signature(store):
    assert signature(seifert_matrix(store.get('5_2').braid)) == -2


def test_missing_fixture(store):
    with pytest.raises(FixtureError):
        store.get('10_132')


def test_fixture_file_errors(tmp_path):
    with pytest.raises(FixtureError):
        FixtureStore(path=tmp_path / 'absent.json').names()

    bad_version = tmp_path / 'v9.json'
    bad_version.write_text(json.dumps({'version': 9, 'knots': []}))
    with pytest.raises(FixtureError):
        FixtureStore(path=bad_version).names()

    bad_word = tmp_path / 'word.json'
    bad_word.write_text(json.dumps({'version': 1, 'knots': [{'name': 'x', 'strands': 2, 'word': [3]}]}))
    with pytest.raises(FixtureError):
        FixtureStore(path=bad_word).names()


def test_mismatch_is_reported(tmp_path):
    path = tmp_path / 'knots.json'
    path.write_text(json.dumps({'version': 1, 'knots': [
        {'name': '3_1', 'strands': 2, 'word': [1, 1, 1], 'expected': {'signature': 2, 'determinant': 3}}]}))
    assert FixtureStore(path=path).verify('3_1') == {'signature': (2, -2)}


def test_env_override_selects_fixture_directory(tmp_path, monkeypatch):
    from src.config_manager import load_config

    (tmp_path / 'knots.json').write_text(json.dumps({'version': 1, 'knots': [
        {'name': 'only', 'strands': 2, 'word': [1, 1, 1]}]}))
    monkeypatch.setenv('CONCKIT_FIXTURES', str(tmp_path))
    assert FixtureStore(load_config()).names() == ['only']
