from fractions import Fraction

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from nhosc.specfun import (SeriesControl, SeriesError, hermite_h, hyp_pfq, pochhammer,
                           ratio_series, series_f1, series_f2, series_h1, series_h2)

mp.mp.dps = 40


def frac_pfq(a, b, x, n_terms):
    """Exact rational partial sum of pFq."""
    total, term = Fraction(0), Fraction(1)
    for n in range(n_terms):
        total += term
        num = Fraction(1)
        for ai in a:
            num *= ai + n
        den = Fraction(n + 1)
        for bj in b:
            den *= bj + n
        term = term * num * x / den
    return total


# frozen oracle values (mpmath, 40 digits)
ORACLES = [
    ([1], [2], 3.0, float(mp.hyp1f1(1, 2, 3))),
    ([], [1, 2], 4.0, float(mp.hyper([], [1, 2], 4))),
    ([], [1, 2], -4.0, float(mp.hyper([], [1, 2], -4))),
    ([3], [1, 1, 1], 2.5, float(mp.hyper([3], [1, 1, 1], 2.5))),
    ([2.5], [1], 6.0, float(mp.hyp1f1(2.5, 1, 6))),
    ([1], [0.3], -7.0, float(mp.hyp1f1(1, 0.3, -7))),
]


@pytest.mark.parametrize("a,b,x,ref", ORACLES)
def test_pfq_frozen_oracles(a, b, x, ref):
    assert hyp_pfq(a, b, x) == pytest.approx(ref, rel=1e-12, abs=1e-14)


def test_pfq_terminating_series_matches_fraction():
    # 2F1(-4, 1/2; 3/2; 2/3) terminates after five terms
    exact = frac_pfq([Fraction(-4), Fraction(1, 2)], [Fraction(3, 2)], Fraction(2, 3), 6)
    assert hyp_pfq([-4, 0.5], [1.5], 2 / 3) == pytest.approx(float(exact), rel=1e-14)


def test_pfq_rational_partial_sum():
    exact = frac_pfq([Fraction(1)], [Fraction(1, 2), Fraction(2)], Fraction(1, 3), 60)
    assert hyp_pfq([1], [0.5, 2], 1 / 3) == pytest.approx(float(exact), rel=1e-14)


@settings(max_examples=40, deadline=None)
@given(a=st.floats(0.1, 8), b=st.floats(0.1, 8), x=st.floats(-25, 25))
def test_1f1_against_mpmath(a, b, x):
    ref = float(mp.hyp1f1(a, b, x))
    assert abs(hyp_pfq([a], [b], x) - ref) <= 1e-11 * max(1.0, abs(ref))


@settings(max_examples=40, deadline=None)
@given(x=st.floats(-30, 30))
def test_0f2_against_mpmath(x):
    ref = float(mp.hyper([], [1, 2], x))
    assert abs(hyp_pfq([], [1, 2], x) - ref) <= 1e-11 * max(1.0, abs(ref))


def test_pfq_vectorized_matches_scalar():
    xs = np.array([-3.0, 0.0, 0.5, 4.0])
    v = hyp_pfq([1.5], [2.0], xs)
    assert np.allclose(v, [hyp_pfq([1.5], [2.0], x) for x in xs], rtol=1e-15)


def test_pfq_rejects_bad_parameters():
    with pytest.raises(ValueError):
        hyp_pfq([1], [0], 1.0)
    with pytest.raises(ValueError):
        hyp_pfq([1], [-2], 1.0)
    with pytest.raises(ValueError):
        hyp_pfq([1, 1, 1], [1], 0.1)


def test_series_control_validation_and_exhaustion():
    with pytest.raises(ValueError):
        SeriesControl(max_terms=0)
    with pytest.raises(ValueError):
        SeriesControl(rel_tol=0)
    with pytest.raises(SeriesError):
        hyp_pfq([], [1], 400.0, SeriesControl(max_terms=5))


def test_ratio_series_geometric():
    assert ratio_series(1.0, lambda n, x: x, 0.5) == pytest.approx(2.0, rel=1e-14)


def brute(x, term, n=150):
    """Direct partial sum in 40-digit arithmetic, plus the sum of |terms|."""
    terms = [term(k) * mp.mpf(x) ** k for k in range(n)]
    return float(mp.fsum(terms)), float(mp.fsum(abs(t) for t in terms))


@pytest.mark.parametrize("w", [0.5, 1.0, 5.0, 20.0])
@pytest.mark.parametrize("x", [-2.0, 0.3, 3.0])
def test_auxiliary_series_against_direct_sums(w, x):
    p = lambda k: mp.rf(w, k)
    f = mp.factorial
    f1 = brute(x, lambda k: mp.sqrt((k + 2) / (p(k) * p(k + 1))))
    f2 = brute(x, lambda k: mp.sqrt((k + 2) * (k + 3) / (p(k) * p(k + 2))))
    h1 = brute(x, lambda k: mp.sqrt(p(k) * p(k + 1) * (k + 2)) / (f(k) * f(k + 1)))
    h2 = brute(x, lambda k: mp.sqrt(p(k) * p(k + 2) * (k + 2) * (k + 3)) / (f(k) * f(k + 2)))
    for got, (ref, cond) in ((series_f1(w, x), f1), (series_f2(w, x), f2),
                             (series_h1(w, x), h1), (series_h2(w, x), h2)):
        # alternating sums lose accuracy in proportion to sum |t_k|
        assert abs(got - ref) <= 1e-12 * abs(ref) + 1e-14 * cond


@pytest.mark.parametrize("n", [0, 1, 2, 5, 12])
def test_hermite_matches_numpy(n):
    x = np.linspace(-3, 3, 13)
    ref = np.polynomial.hermite.hermval(x, [0] * n + [1])
    assert np.allclose(hermite_h(n, x), ref, rtol=1e-13, atol=1e-10)


def test_pochhammer():
    assert pochhammer(3.0, 0) == 1.0
    assert pochhammer(3.0, 4) == 3 * 4 * 5 * 6
    assert pochhammer(0.5, 3) == pytest.approx(float(mp.rf(0.5, 3)), rel=1e-15)
    with pytest.raises(ValueError):
        pochhammer(1.0, -1)
