import cmath
import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from nhosc import states as S
from nhosc.algebra import NATURAL, BiState, LadderKind, add, apply_ladder, displacement_series

z_strategy = st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False)


def eigen_dev(s, kind, z):
    d = add(apply_ladder(s, kind, "lower"), s, 1, -z)
    return float(np.max(np.abs(d.coeffs[:-3])))


@settings(max_examples=30, deadline=None)
@given(z=z_strategy)
def test_natural_coherent_eigenvalue(z):
    assert eigen_dev(S.natural_coherent(z, 80), NATURAL, z) < 1e-10


@settings(max_examples=30, deadline=None)
@given(z=z_strategy, w=st.floats(0.2, 25))
def test_distorted_coherent_eigenvalue(z, w):
    assert eigen_dev(S.distorted_coherent(z, w, 80), LadderKind.distorted(w), z) < 1e-10


@settings(max_examples=30, deadline=None)
@given(z=st.complex_numbers(max_magnitude=2, allow_nan=False, allow_infinity=False),
       w=st.floats(0.0, 10))
def test_displaced_matches_series(z, w):
    ser = displacement_series(z, w, 120)
    assert np.max(np.abs(ser.coeffs - S.displaced_coherent(z, w, 120).coeffs)) < 1e-10


FAMILY_CASES = [
    ("binomial", {"K": 7, "eta": 0.3, "r": 2}),
    ("poisson", {"z": [1.2, -0.4], "r": 1}),
    ("natural_coherent", {"z": [2.0, 1.0]}),
    ("distorted_coherent", {"z": 1.5, "w": 0.7}),
    ("displaced_coherent", {"z": [0.3, 1.0], "w": 4.0}),
    ("photon_added", {"alpha": 1.1, "r": 3}),
    ("cat_natural", {"z": 2.5, "parity": -1}),
    ("cat_distorted", {"z": [1.0, 1.0], "w": 5.0, "parity": 1}),
    ("cat_displaced", {"z": 0.8, "w": 2.0, "parity": -1}),
]


@pytest.mark.parametrize("family,params", FAMILY_CASES)
def test_families_normalized(family, params):
    s = S.make_state(S.FamilySpec(family, params))
    assert s.norm2() == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("family,params", FAMILY_CASES)
def test_json_roundtrip(family, params):
    s = S.make_state(S.FamilySpec(family, params))
    back = S.state_from_json(S.state_to_json(s, family, params))
    assert back.offset_r == s.offset_r
    assert np.max(np.abs(back.coeffs - s.coeffs)) < 1e-14


def test_binomial_frozen_coefficients():
    s = S.binomial(3, 0.5)
    assert np.allclose(s.coeffs, np.sqrt([1, 3, 3, 1]) / math.sqrt(8), atol=1e-15)


@settings(max_examples=50, deadline=None)
@given(K=st.integers(0, 30), eta=st.floats(0, 1), r=st.integers(0, 8))
def test_binomial_mean_energy(K, eta, r):
    s = S.binomial(K, eta, r)
    assert S.mean_energy(s) == pytest.approx(S.binomial_mean_energy(K, eta, r), abs=1e-11)


def test_energy_anchor():
    assert S.binomial_mean_energy(10, 0.5, 0) == 9


def test_poisson_energy_radius():
    for r in (0, 1, 2):
        s = S.poisson(E_b=9, r=r)
        assert S.mean_energy(s) == pytest.approx(9, abs=1e-10)
    assert S.poisson_radius(9, 1) == pytest.approx(2.0)


def test_natural_coherent_norm_oracle():
    z = 1.7 - 0.4j
    zeta2 = abs(z) ** 2 / 8
    ref = [mp.mpf(zeta2) ** k / (mp.factorial(k) ** 2 * mp.factorial(k + 1)) for k in range(4)]
    ref = np.array([float(v) for v in ref]) / float(mp.hyper([], [1, 2], zeta2))
    s = S.natural_coherent(z, 60)
    assert np.allclose(np.abs(s.coeffs[:4]) ** 2, ref, rtol=1e-13)


def test_cat_parity_support():
    even = S.cat_distorted(1.3, 2.0, 1, 40)
    odd = S.cat_distorted(1.3, 2.0, -1, 40)
    assert np.all(even.coeffs[1::2] == 0) and np.all(odd.coeffs[::2] == 0)
    with pytest.raises(ValueError):
        S.cat_natural(0.0, -1)


def test_photon_added_is_glauber_at_r0():
    a = 0.9 * cmath.exp(0.3j)
    s = S.photon_added(a, 0, 40)
    k = np.arange(40)
    ref = np.exp(-abs(a) ** 2 / 2) * a ** k / np.sqrt([float(math.factorial(j)) for j in k])
    assert np.allclose(s.coeffs, ref, atol=1e-15)


def test_dim_too_small_raises():
    with pytest.raises(ValueError):
        S.poisson(4.0, 0, dim=5)


def test_family_validation():
    with pytest.raises(ValueError):
        S.FamilySpec("squeezed")
    with pytest.raises(ValueError):
        S.distorted_coherent(1.0, 0.0)
    with pytest.raises(ValueError):
        S.binomial(3, 1.5)


def test_theta_phases():
    s = S.binomial(4, 0.5, 0, theta=np.arange(5) * 0.1)
    assert np.allclose(np.angle(s.coeffs), np.arange(5) * 0.1)


def test_eigen_basis_default():
    assert S.make_state(S.FamilySpec("poisson", {"z": 1.0})).basis == "eigen"
    assert isinstance(S.make_state(S.FamilySpec("cat_natural")), BiState)
