from fractions import Fraction

import pytest
import sympy as sp

from src import laurent
from src.errors import NotSymmetrizable
from src.laurent import (T, LaurentPoly, equal_up_to_units, normalize_alexander, poly_eval_int,
                         poly_mul, to_text)


def test_normalize_centres_and_fixes_sign():
    p = 4 * T**2 - 7 * T + 4
    q = normalize_alexander(p)
    assert q.coefficients == {-1: 4, 0: -7, 1: 4}
    assert to_text(q) == '4*t^-1 - 7 + 4*t'
    assert normalize_alexander(-p) == q


def test_normalize_flips_negative_value_at_one():
    p = -(T**2 - T + 1)
    q = normalize_alexander(p)
    assert q.coefficients == {-1: 1, 0: -1, 1: 1}
    assert poly_eval_int(q, 1) == 1


def test_normalize_is_idempotent():
    p = (T - 1)**2 * (T**4 + 1) + (2 * T**2 - 3 * T + 2) * T**2
    q = normalize_alexander(p)
    assert normalize_alexander(q) == q


def test_zero_at_one_prefers_positive_top_coefficient():
    p = -(T - 1)**2
    q = normalize_alexander(p)
    assert q.coefficients == {-1: 1, 0: -2, 1: 1}


@pytest.mark.parametrize('p', [T + 2, 1 + 2 * T + 3 * T**2, LaurentPoly()])
def test_not_symmetrizable(p):
    with pytest.raises(NotSymmetrizable):
        normalize_alexander(p)


def test_not_symmetrizable_is_a_value_error():
    with pytest.raises(ValueError):
        normalize_alexander(2 * T + T**3)


def test_equal_up_to_units():
    delta = LaurentPoly({-1: 1, 0: -1, 1: 1})
    assert equal_up_to_units(delta.shift(5), -delta)
    assert equal_up_to_units(-delta.shift(-3), delta)
    assert not equal_up_to_units(delta, LaurentPoly({-1: 2, 0: -3, 1: 2}))


def _random_poly(rng):
    exps = rng.integers(-4, 5, size=4)
    coeffs = rng.integers(-5, 6, size=4)
    return LaurentPoly({int(e): int(c) for e, c in zip(exps, coeffs)})


def test_ring_laws(rng):
    for _ in range(200):
        a, b, c = (_random_poly(rng) for _ in range(3))
        assert a + b == b + a
        assert a * b == b * a
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a - a == LaurentPoly()
        for x in (-3, -1, 2, 5):
            assert poly_eval_int(a * b, x) == poly_eval_int(a, x) * poly_eval_int(b, x)
            assert poly_eval_int(a + b, x) == poly_eval_int(a, x) + poly_eval_int(b, x)


def test_eval_is_exact():
    p = LaurentPoly({-2: 3, 0: 1, 1: -1})
    assert poly_eval_int(p, 2) == Fraction(3, 4) + 1 - 2
    assert poly_eval_int(p, -1) == 3 + 1 + 1
    with pytest.raises(ValueError):
        poly_eval_int(p, 0)


def test_mul_matches_sympy():
    a = LaurentPoly({-1: 2, 0: -3, 2: 1})
    b = LaurentPoly({0: 1, 1: 1})
    expected = LaurentPoly.from_sympy(sp.expand(a.to_sympy() * b.to_sympy()))
    assert poly_mul(a, b) == expected


def test_from_sympy_reads_negative_exponents():
    t = laurent.t
    p = LaurentPoly.from_sympy(4 / t - 7 + 4 * t)
    assert p.coefficients == {-1: 4, 0: -7, 1: 4}


def test_from_sympy_rejects_fractions():
    with pytest.raises(ValueError):
        LaurentPoly.from_sympy(laurent.t / 2)


def test_json_round_trip():
    p = LaurentPoly({-3: 1, -2: -1, 0: 1, 2: -1, 3: 1})
    assert laurent.to_json(p) == {'-3': 1, '-2': -1, '0': 1, '2': -1, '3': 1}
    assert laurent.from_json(laurent.to_json(p)) == p


def test_text_of_zero_and_constants():
    assert to_text(LaurentPoly()) == '0'
    assert to_text(laurent.ONE) == '1'
    assert to_text(LaurentPoly({-2: -1, 1: 1})) == '-t^-2 + t'
