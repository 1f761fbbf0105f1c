from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from flagpush.approx import approx_table, rows_to_certificate
from flagpush.certify import (CertificateError, FiltrationCertificate, FormalClass,
                              check_limit_hypothesis, compose_cover, example_surface_invariants,
                              frobenius_scale, gap_check, gap_threshold, parse_rational)


def cert_from_gaps(gaps, mu=0, r=2):
    # quotient degrees mu + g and mu - g keep the sum at 2 mu
    return FiltrationCertificate.build(
        r, 2, mu, [(1, [Fraction(mu) + g, Fraction(mu) - g]) for g in gaps])


def test_one_over_m_holds():
    v = check_limit_hypothesis(cert_from_gaps([Fraction(1, m) for m in range(1, 9)]))
    assert v.holds and v.constant == 1


def test_constant_gap_fails():
    v = check_limit_hypothesis(cert_from_gaps([Fraction(1, 2)] * 4))
    assert not v.holds and v.violating_index == 1


def test_negative_gap_fails():
    cert = cert_from_gaps([1, Fraction(1, 2)])
    # valid certificates cannot produce this (max >= mean); corrupt one after ingestion
    object.__setattr__(cert, "mu", Fraction(5))
    v = check_limit_hypothesis(cert)
    assert not v.holds and v.violating_index == 0 and "inconsistent" in v.reason


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=7),
                         min_size=3, max_size=3), min_size=1, max_size=5))
def test_valid_certificates_have_nonnegative_gaps(qdegs):
    mu = Fraction(sum(qdegs[0]), 3)
    entries = [(1, q[:2] + [3 * mu - q[0] - q[1]]) for q in qdegs]
    v = check_limit_hypothesis(FiltrationCertificate.build(3, 2, mu, entries))
    assert all(g >= 0 for g in v.gaps)


def test_empty_and_invalid():
    with pytest.raises(CertificateError):
        check_limit_hypothesis(FiltrationCertificate.build(2, 1, 0, []))
    with pytest.raises(CertificateError):
        FiltrationCertificate.build(2, 1, 0, [(0, [0, 0])])
    with pytest.raises(CertificateError):
        FiltrationCertificate.build(2, 1, 0, [(1, [1, 0])])
    with pytest.raises(CertificateError):
        FiltrationCertificate.build(2, 1, 0, [(1, [1, -1, 0])])


def test_json_round_trip_and_errors():
    cert = cert_from_gaps([Fraction(1, 3), Fraction(1, 6)], mu=Fraction(1, 2))
    again = FiltrationCertificate.from_json(cert.to_json())
    assert again == cert
    for text in ["{", "[]", '{"r": 2, "d": 1, "mu": "0"}',
                 '{"r": 2, "d": 1, "mu": "0.5", "entries": []}',
                 '{"r": 2, "d": 1, "mu": "0", "entries": [{"deg_f": "1"}]}']:
        with pytest.raises(CertificateError):
            FiltrationCertificate.from_json(text)


def test_parse_rational():
    assert parse_rational("3/6") == Fraction(1, 2)
    assert parse_rational(4) == 4
    for bad in ["0.5", "1e3", "x", True, 0.5, "1/0"]:
        with pytest.raises(CertificateError):
            parse_rational(bad)


def test_gap_check():
    assert gap_check("1/1000", 2).accepted
    assert not gap_check("6/10", 2).accepted
    assert gap_check("1/1000", 3).threshold == Fraction(1, 6)
    assert not gap_check(Fraction(1, 2), 2).accepted
    with pytest.raises(ValueError):
        gap_check(0, 2)
    assert [gap_threshold(r) for r in range(2, 7)] == [Fraction(1, r * (r - 1)) for r in range(2, 7)]
    assert all(gap_threshold(r) > gap_threshold(r + 1) for r in range(2, 20))


def test_compose_cover():
    assert compose_cover(Fraction(1, 10), 1, 2) == FormalClass(Fraction(1, 10), Fraction(1, 2))
    assert compose_cover(0, 2, 3) == FormalClass(0, Fraction(2, 3))
    assert compose_cover(Fraction(1, 3), 4, 4).c1E == 1
    with pytest.raises(ValueError):
        compose_cover(0, 0, 2)


@given(st.fractions(max_denominator=50), st.fractions(max_denominator=50), st.integers(1, 5))
def test_compose_cover_additive(a, b, s):
    r = 5
    lhs = compose_cover(a + b, s, r)
    rhs = compose_cover(a, s, r) + compose_cover(b, s, r)
    # additive in the c1(A) slot; the c1(E) slot is s/r on every cover
    assert lhs.c1A == rhs.c1A
    assert lhs.c1E == compose_cover(a, s, r).c1E == Fraction(s, r)


def test_frobenius():
    cert = cert_from_gaps([Fraction(1, m) for m in range(1, 5)], mu=Fraction(1, 3))
    doubled = frobenius_scale(cert, 2, 1)
    assert doubled.mu == Fraction(2, 3)
    assert [e.qdeg for e in doubled.entries] == [tuple(2 * q for q in e.qdeg) for e in cert.entries]
    assert [e.deg_f for e in doubled.entries] == [e.deg_f for e in cert.entries]
    assert frobenius_scale(cert, 3, 0) == cert
    assert frobenius_scale(frobenius_scale(cert, 3, 2), 3, 1) == frobenius_scale(cert, 3, 3)
    assert check_limit_hypothesis(doubled).holds == check_limit_hypothesis(cert).holds
    flat = cert_from_gaps([Fraction(1, 2)] * 3)
    assert check_limit_hypothesis(frobenius_scale(flat, 5, 2)).holds is False


@settings(max_examples=40, deadline=None)
@given(st.lists(st.fractions(min_value=0, max_value=5, max_denominator=20), min_size=1, max_size=6),
       st.fractions(min_value=Fraction(1, 10), max_value=10, max_denominator=10))
def test_scale_invariance(gaps, lam):
    cert = cert_from_gaps(gaps, mu=Fraction(1, 4))
    scaled = FiltrationCertificate.build(
        2, 2, cert.mu, [(e.deg_f * lam, [q * lam for q in e.qdeg]) for e in cert.entries])
    assert check_limit_hypothesis(scaled).holds == check_limit_hypothesis(cert).holds


@pytest.mark.parametrize("r", [2, 3, 4])
def test_table_certificates_hold(r):
    cert = rows_to_certificate(approx_table(r, "ones", range(1, 21), [1]))
    assert check_limit_hypothesis(cert).holds
    assert check_limit_hypothesis(FiltrationCertificate.from_json(cert.to_json())).holds


def test_surface_examples():
    inv = example_surface_invariants(1, 0)
    assert (inv.c1, inv.c2, inv.discriminant, inv.numerically_flat) == (0, -1, -4, False)
    assert any("Hodge" in v for v in inv.violations)
    deg = example_surface_invariants(0, 0)
    assert "L^2 == 0" in deg.violations and deg.numerically_flat
    neg = example_surface_invariants(-2, 0)
    assert (neg.c2, neg.discriminant, neg.violations) == (2, 8, ())
    assert "L.H != 0" in example_surface_invariants(-1, 3).violations
