import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.linalg import expm

from nhosc import metrics as M
from nhosc import states as S
from nhosc.algebra import BiState, LadderKind

rng_seed = 2024


def test_classify_patterns():
    assert M.classify(-1, -1) == "A_squeezed"
    assert M.classify(1, 1) == "B_squeezed"
    assert M.classify(0, 0) == "minimal"
    assert M.classify(1, -1) == "none"
    assert list(M.classify(np.array([-1, 1]), np.array([-1, 1]))) == ["A_squeezed", "B_squeezed"]


def test_report_reconstruction():
    rep = M.VarianceReport.from_variances(0.3, 0.7, 0.5)
    assert rep.reconstruction_error() < 1e-15
    assert rep.classification == "A_squeezed"


FAMILY_QUAD = sorted(k for k in M.CLOSED_FORMS if k[0] != "binomial")


@pytest.mark.parametrize("family,quad", FAMILY_QUAD)
def test_closed_form_vs_oracle(family, quad):
    rng = np.random.default_rng(rng_seed)
    worst = 0.0
    for _ in range(50):
        z = complex(*rng.uniform(-2.5, 2.5, 2))
        w = float(rng.uniform(0.3, 20))
        par = int(rng.choice([1, -1]))
        spec = S.FamilySpec(family, {"z": [z.real, z.imag], "w": w, "parity": par}, 200)
        cf = M.variance_closed_form(spec, quad)
        ref = M.variance_oracle(S.make_state(spec), M.family_kind(spec, quad))
        worst = max(worst, abs(cf.U1 - ref.U1), abs(cf.U2 - ref.U2), abs(cf.bound - ref.bound))
    assert worst < 1e-8


def test_binomial_closed_form_vs_oracle():
    rng = np.random.default_rng(rng_seed)
    for _ in range(50):
        K, r = int(rng.integers(1, 15)), int(rng.integers(0, 5))
        eta, w = float(rng.uniform(0, 1)), float(rng.uniform(0, 20))
        cf = M.binomial_closed_form(K, eta, r, w)
        ref = M.variance_oracle(S.binomial(K, eta, r), LadderKind.distorted(w))
        assert abs(cf.var_A - ref.var_A) < 1e-10 and abs(cf.var_B - ref.var_B) < 1e-10
        assert abs(cf.bound - ref.bound) < 1e-12


def test_binomial_literal_bound_is_reported():
    cf = M.binomial_closed_form(10, 0.5, 1, 3.0)
    assert "bound_literal" in cf.extra
    assert cf.extra["bound_literal"] == pytest.approx(M.binomial_iw_literal(1, 3.0) / 4)


def test_closed_form_missing():
    with pytest.raises(ValueError):
        M.variance_closed_form(S.FamilySpec("poisson", {"z": 1}), "distorted")


# Mandel parameter -------------------------------------------------------

@pytest.mark.parametrize("alpha", [0.3, 1.0, 2.0])
def test_mandel_glauber_zero(alpha):
    assert abs(M.mandel_q(S.photon_added(alpha, 0, 80))) < 1e-8


@pytest.mark.parametrize("n", [1, 2, 7])
def test_mandel_fock(n):
    assert M.mandel_q(BiState(n, [1.0])) == -1


@settings(max_examples=30, deadline=None)
@given(eta=st.floats(0.01, 1.0))
def test_mandel_binomial_r0(eta):
    assert M.mandel_q(S.binomial(10, eta, 0)) == pytest.approx(-eta, abs=1e-10)


def test_mandel_undefined_for_vacuum():
    with pytest.raises(ValueError):
        M.mandel_q(BiState(0, [1.0]))


# beam splitter ----------------------------------------------------------

def random_state(rng, K, r):
    c = rng.normal(size=K + 1) + 1j * rng.normal(size=K + 1)
    return BiState(r, c / np.linalg.norm(c), "oscillator")


@settings(max_examples=40, deadline=None)
@given(K=st.integers(0, 12), r=st.integers(0, 4), T=st.floats(0, 1), phi=st.floats(0, 6.3),
       seed=st.integers(0, 10 ** 6))
def test_purity_formula_vs_partial_trace(K, r, T, phi, seed):
    inp = M.PurityInputs(random_state(np.random.default_rng(seed), K, r), T, phi)
    assert abs(M.beamsplitter_purity(inp) - M.beamsplitter_purity_oracle(inp)) < 1e-10


def test_purity_negative_index_terms_cancel():
    rng = np.random.default_rng(1)
    s = random_state(rng, 6, 3)
    inp = M.PurityInputs(s, 0.6, 0.4)
    extra = rng.normal(size=3) + 1j * rng.normal(size=3)
    assert M.beamsplitter_purity(inp, extra) == pytest.approx(M.beamsplitter_purity(inp), abs=1e-12)


def test_beamsplitter_matches_generator_exponential():
    # B = exp[theta (a1+ a2 e^{i phi} - a1 a2+ e^{-i phi})], cos theta = T
    N = 8
    a = np.diag(np.sqrt(np.arange(1, N)), 1)
    a1, a2 = np.kron(a, np.eye(N)), np.kron(np.eye(N), a)
    T, phi = 0.6, 0.7
    th = math.acos(T)
    U = expm(th * (a1.T @ a2 * np.exp(1j * phi) - a1 @ a2.T * np.exp(-1j * phi)))
    s = random_state(np.random.default_rng(5), 3, 1)
    vin = np.zeros(N * N, dtype=complex)
    for j, c in enumerate(s.coeffs):
        vin[(j + 1) * N] = c
    out = (U @ vin).reshape(N, N)
    assert np.max(np.abs(out[:5, :5] - M.beamsplitter_output(s, T, phi))) < 1e-13


def test_purity_endpoints_and_phase():
    s = S.binomial(10, 0.4, 1).with_basis("oscillator")
    for T in (0.0, 1.0):
        assert abs(M.beamsplitter_purity(M.PurityInputs(s, T))) < 1e-12
    ref = M.beamsplitter_purity(M.PurityInputs(s, 0.5))
    for phi in (0.3, 1.7, 4.0):
        assert M.beamsplitter_purity(M.PurityInputs(s, 0.5, phi)) == pytest.approx(ref, abs=1e-12)


def test_fock_one_purity_frozen():
    assert M.beamsplitter_purity(M.PurityInputs(BiState(1, [1.0], "oscillator"), math.sqrt(0.5))) == pytest.approx(0.5, abs=1e-14)


def test_purity_requires_oscillator_basis():
    with pytest.raises(ValueError):
        M.beamsplitter_purity(M.PurityInputs(BiState(1, [1.0]), 0.5))
    with pytest.raises(ValueError):
        M.PurityInputs(BiState(1, [1.0], "oscillator"), 1.5)


# Wigner -----------------------------------------------------------------

def test_wigner_fock_one_origin():
    g = M.wigner(BiState(1, [1.0], "oscillator"), np.array([0.0]), np.array([0.0]))
    assert g.values[0, 0] == pytest.approx(-1 / math.pi, abs=1e-10)


def test_wigner_vacuum_closed_form():
    ax = np.linspace(-3, 3, 13)
    g = M.wigner(BiState(0, [1.0], "oscillator"), ax, ax)
    X, P = np.meshgrid(ax, ax)
    assert np.max(np.abs(g.values - np.exp(-X ** 2 - P ** 2) / math.pi)) < 1e-10


def test_wigner_normalization_and_marginal():
    s = S.binomial(10, 0.4, 1).with_basis("oscillator")
    ax = np.linspace(-7, 7, 161)
    g = M.wigner(s, ax, ax)
    assert abs(g.integral() - 1) < 1e-3
    assert np.max(np.abs(g.x_marginal() - np.abs(M.wavefunction(s, ax)) ** 2)) < 1e-3
    assert g.values.min() < 0


def test_wigner_glauber_peak_and_positivity():
    s = S.photon_added(1.0 + 0.5j, 0, 60).with_basis("oscillator")
    ax = np.linspace(-5, 5, 201)
    g = M.wigner(s, ax, ax)
    i, j = np.unravel_index(np.argmax(g.values), g.values.shape)
    assert ax[j] == pytest.approx(math.sqrt(2), abs=0.05)
    assert ax[i] == pytest.approx(math.sqrt(2) * 0.5, abs=0.05)
    assert g.values.min() > -1e-6


# squeezing geography ----------------------------------------------------

def test_natural_no_squeeze_radius_frozen():
    assert M.no_squeeze_radius() == pytest.approx(6.375, abs=0.05)


def test_natural_far_field_squeezing():
    U1, U2, _ = M.u_closed_form("natural_coherent", "physical", np.array([30, 30j]))
    assert M.classify(U1[0].real, U2[0].real) == "A_squeezed"
    assert M.classify(U1[1].real, U2[1].real) == "B_squeezed"


def test_squeeze_map_shape_and_counts():
    ax = np.linspace(-3, 3, 7)
    g = M.squeeze_map("distorted_coherent", "physical", ax, ax, w=20.0)
    assert g.values.shape == (7, 7)
    assert sum(g.counts().values()) == 49


def test_cat_natural_intervals_complementary():
    res = M.cat_natural_interlacing(16.0)
    ends = sorted(x for iv in res["even"] + res["odd"] for x in iv)
    assert len(res["even"]) >= 1 and len(res["odd"]) >= 1
    # the even and odd runs tile the sampled axis without overlap
    for a, b in zip(ends[1:-1:2], ends[2::2]):
        assert 0 < b - a < 0.01


def test_squeezing_intervals_helper():
    t = np.arange(6.0)
    assert M.squeezing_intervals(t, [0, 1, 1, 0, 1, 1]) == [(1.0, 2.0), (4.0, 5.0)]
