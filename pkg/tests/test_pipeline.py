import json
from fractions import Fraction

import pytest

from src import laurent
from src.constants import (ASSUMPTIONS, DOWN, INDISTINGUISHABLE, NOT_CONCORDANT, NOT_SLICE, UP)
from src.errors import CertificateInvalid, InvalidSignature, UnsupportedLift
from src.lattice import build_Qk, verify_certificate
from src.pipeline import (FamilyMember, ObstructionPipeline, ObstructionReport, d_alternating_one_surgery,
                          family_alexander, family_determinant)


@pytest.fixture
def pipeline(config, store):
    return ObstructionPipeline(config, store)


def test_family_determinant():
    for n in range(-20, 21):
        assert family_determinant(n) == (1 if n % 2 else 15)


def test_family_alexander_is_shared_with_partner():
    for n in range(-12, 13):
        member = FamilyMember(n)
        assert member.partner == -4 - n
        assert family_alexander(n) == family_alexander(member.partner)


def test_family_alexander_separates_pairs():
    seen = {}
    for n in range(-2, 30):
        poly = family_alexander(n)
        assert poly not in seen.values()
        seen[n] = poly


def test_family_alexander_cache_is_bounded():
    family_alexander.cache_clear()
    for n in range(-520, 0):
        family_alexander(n)
    info = family_alexander.cache_info()
    assert info.maxsize == 1024
    assert info.currsize <= 1024


def test_family_alexander_values():
    assert laurent.to_text(family_alexander(-2)) == '4*t^-1 - 7 + 4*t'
    assert laurent.poly_eval_int(family_alexander(5), 1) == 1


def test_family_member_names():
    member = FamilyMember(3)
    assert member.name == 'twist(3, J)(U)'
    assert member.determinant() == 1


@pytest.mark.parametrize('sigma, d', [(-2, -2), (0, 0), (-4, -2), (2, 0), (-6, -4)])
def test_d_alternating_one_surgery(sigma, d):
    assert d_alternating_one_surgery(sigma) == d


def test_d_alternating_rejects_odd_signature():
    with pytest.raises(InvalidSignature):
        d_alternating_one_surgery(-3)


def test_d_Y0(pipeline):
    y0 = pipeline.d_Y0()
    assert y0.value == -2
    assert y0.manifold == 'Y0'
    assert y0.details == {'knot': '5_2', 'signature': -2}


@pytest.mark.parametrize('presentation', [[[1]], [[-1]], [[1, 2], [0, 1]]])
def test_d_Y1(pipeline, presentation):
    assert pipeline.d_Y1(presentation).value == 0


@pytest.mark.parametrize('presentation', [[[2]], [[1, 2]], [[0]], [], [[1.5]], [['a']]])
def test_d_Y1_rejects_non_balls(pipeline, presentation):
    with pytest.raises(CertificateInvalid):
        pipeline.d_Y1(presentation)


@pytest.mark.parametrize('k', [1, 3, 8])
def test_monotonicity_up(pipeline, k):
    (step,) = pipeline.monotonicity_certificate(k, UP)
    assert (step.source, step.target) == ('Y0', f'Y{k}')
    cert = step.certificate
    assert cert.kind == 'negdef'
    assert cert.form == tuple(map(tuple, build_Qk(k).rows()))
    assert cert.char_square == -k
    assert cert.bound == -2
    assert verify_certificate(cert)


def test_monotonicity_down(pipeline):
    (step,) = pipeline.monotonicity_certificate(2, DOWN)
    assert step.target == 'Y-2'
    assert step.certificate.kind == 'posdef'
    assert step.certificate.bound == -2
    assert step.describe() == 'd(Y-2) <= -2 + (2 - 2)/4 = -2'


def test_monotonicity_rejects_bad_arguments(pipeline):
    with pytest.raises(ValueError):
        pipeline.monotonicity_certificate(0)
    with pytest.raises(ValueError):
        pipeline.monotonicity_certificate(2, 'sideways')


def test_general_monotonicity_matches_double_cover(pipeline):
    (general,) = pipeline.general_monotonicity_certificate(2, 2, UP)
    (special,) = pipeline.monotonicity_certificate(2, UP)
    assert general.certificate == special.certificate
    assert general.assumptions == tuple(ASSUMPTIONS['general-monotonicity'])


def test_general_monotonicity_other_degrees(pipeline):
    (step,) = pipeline.general_monotonicity_certificate(3, 1, UP, d_base=Fraction(1, 2))
    assert step.certificate.rank == 1
    assert step.certificate.bound == Fraction(1, 2)
    (step,) = pipeline.general_monotonicity_certificate(2, 5, DOWN, d_base=0)
    assert step.certificate.kind == 'posdef'
    assert step.certificate.rank == 5
    assert step.certificate.bound == 0
    with pytest.raises(UnsupportedLift):
        pipeline.general_monotonicity_certificate(1, 2)


@pytest.mark.parametrize('k', list(range(1, 11)))
def test_obstruct_pair(pipeline, k):
    report = pipeline.obstruct_pair(k)
    assert report.verdict == NOT_CONCORDANT
    assert report.knot == f'twist({2 * k - 1}, J)(U)'
    assert report.partner == f'twist({-2 * k - 3}, J)(U)'
    assert report.pattern_identity
    assert report.upper_bound == -2
    assert report.lower_bound == 0
    assert report.upper_chain[-1].target == f'Y-{k + 1}'
    assert len(report.lower_chain) == k - 1
    if report.lower_chain:
        assert report.lower_chain[-1].target == f'Y{k}'
    assert report.validate()

    data = json.loads(json.dumps(report.to_json()))
    assert data['separation'] == {'upper': '-2', 'lower': '0', 'strict': True}
    again = ObstructionReport.from_json(data)
    assert again == report
    assert again.validate()


def test_obstruction_text(pipeline):
    text = pipeline.obstruct_pair(2).to_text()
    assert 'd(Y-3) <= d(Y0) = -2 < 0 = d(Y1) <= d(Y2)' in text
    assert f'verdict: {NOT_CONCORDANT}' in text


def test_tampered_report_fails_validation(pipeline):
    data = pipeline.obstruct_pair(2).to_json()
    data['dY0']['value'] = '0'
    with pytest.raises(CertificateInvalid):
        ObstructionReport.from_json(data).validate()

    data = pipeline.obstruct_pair(3).to_json()
    data['dChain'][1]['certificate']['dY0'] = '1'
    data['dChain'][1]['certificate']['bound'] = '1'
    with pytest.raises(CertificateInvalid):
        ObstructionReport.from_json(data).validate()


def _forge(data, change):
    change(data)
    return ObstructionReport.from_json(data)


@pytest.mark.parametrize('change', [
    lambda d: d['dY1'].update(value='7'),
    lambda d: d['dY1'].update(value='-3'),
    lambda d: d['dY1']['details'].update(presentation=[[2]]),
    lambda d: d['dY1']['details'].update(presentation=[]),
    lambda d: d['dY1']['details'].update(presentation=[[1.5]]),
    lambda d: d['dY1']['details'].pop('presentation'),
    lambda d: d.update(patternIdentity=False),
    lambda d: d.update(pair=d['pair'][::-1]),
    lambda d: d.update(pair=[d['pair'][0], 'twist(-7, J)(U)']),
    lambda d: d.update(k=4),
    lambda d: d.update(k=0),
    lambda d: d['dChain'][0].update(to='Y-5'),
    lambda d: d['dChain'].pop(),
    lambda d: d['dChain'][1].update({'from': 'Y2', 'to': 'Y3'}),
], ids=['dY1-value', 'dY1-negative', 'dY1-not-a-ball', 'dY1-empty', 'dY1-fraction', 'dY1-missing',
        'identity', 'swapped-pair', 'wrong-partner', 'other-k', 'zero-k', 'upper-target', 'short-lower-chain',
        'lower-endpoints'])
def test_forged_report_fails_validation(pipeline, change):
    data = json.loads(json.dumps(pipeline.obstruct_pair(3).to_json()))
    assert ObstructionReport.from_json(json.loads(json.dumps(data))).validate()
    with pytest.raises(CertificateInvalid):
        _forge(data, change).validate()


def test_forged_ball_and_identity_fail_together(pipeline):
    def change(d):
        d['dY1']['value'] = '5'
        d['dY1']['details'] = {'presentation': [[3]], 'determinant': 3}
        d['patternIdentity'] = False
        d['dChain'] = d['dChain'][:1]

    with pytest.raises(CertificateInvalid):
        _forge(pipeline.obstruct_pair(2).to_json(), change).validate()


def test_not_concordant_needs_recomputed_identity(pipeline):
    report = pipeline.obstruct_pair(1)
    forged = ObstructionReport(report.k, report.knot, report.partner, report.d_y0, report.d_y1,
                               report.upper_chain, report.lower_chain, False, NOT_CONCORDANT, report.assumptions)
    with pytest.raises(CertificateInvalid, match='recomputed'):
        forged.validate()



def test_shared_invariant_check(pipeline):
    report = pipeline.shared_invariant_check(1, radius=10)
    assert report.partner == -5
    assert report.partner_equal
    assert report.trace_partner == 'twist(-5, J)'
    assert report.collisions == ()
    assert report.status == NOT_CONCORDANT
    assert len(report.sampled) == 19

    assert pipeline.shared_invariant_check(0, radius=4).status == INDISTINGUISHABLE
    assert pipeline.shared_invariant_check(-2, radius=4).status == 'self-partnered'
    assert pipeline.shared_invariant_check(-1, radius=4).status == INDISTINGUISHABLE


@pytest.mark.parametrize('n', [-6, -2, 0, 4])
def test_even_members_are_not_slice_by_determinant(pipeline, n):
    report = pipeline.slice_obstruction(n)
    assert report.verdict == NOT_SLICE
    assert report.determinant == 15
    assert ASSUMPTIONS['slice-determinant'] in report.assumptions


@pytest.mark.parametrize('n', [-1, -3, -7, 1, 3])
def test_odd_members_are_not_slice_by_d_invariant(pipeline, n):
    report = pipeline.slice_obstruction(n)
    assert report.verdict == NOT_SLICE
    assert report.certificates[-1].source == 'S^3'
    for step in report.certificates:
        assert verify_certificate(step.certificate)
    if n >= 1:
        assert ASSUMPTIONS['slice-trace'] in report.assumptions


def test_concordance_inverse_report(pipeline):
    report = pipeline.concordance_inverse_report('J')
    assert report.inverse == 'twist(4, bar(J))'
    assert report.inverse_of_inverse == 'J'
    assert report.involutive
    assert report.to_json()['involutive'] is True
