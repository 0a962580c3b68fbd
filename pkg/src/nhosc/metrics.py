"""Nonclassicality diagnostics.

Variance decomposition
    (Delta A)^2 = bound + U1,  (Delta B)^2 = bound - U2,
with bound = |<C>|/2 for [A, B] = iC.  Both U positive means B is squeezed,
both negative means A is squeezed, both zero is a minimal-uncertainty state.

Closed forms are given for the families where they exist, alongside the
operator oracle that computes the same numbers from ladder actions.  The
Mandel parameter, beam-splitter linear entropy (formula and two-mode
oracle) and the Wigner function complete the set.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate
from scipy.special import gammaln

from .algebra import (NATURAL, OSCILLATOR, BiState, LadderKind, identity_factor,
                      quadrature_moments)
from .oscillator import phi_table
from .specfun import (hyp_pfq, series_f1, series_f2, series_h1, series_h2)
from .states import NATURAL_SCALE, FamilySpec, make_state

CLASSES = ("minimal", "A_squeezed", "B_squeezed", "none")


def classify(U1, U2, atol: float = 1e-12):
    """Squeezing class from the sign pattern of (U1, U2); works on arrays."""
    U1 = np.asarray(U1, dtype=float)
    U2 = np.asarray(U2, dtype=float)
    out = np.full(np.broadcast(U1, U2).shape, "none", dtype=object)
    out[(U1 > atol) & (U2 > atol)] = "B_squeezed"
    out[(U1 < -atol) & (U2 < -atol)] = "A_squeezed"
    out[(np.abs(U1) <= atol) & (np.abs(U2) <= atol)] = "minimal"
    return out.item() if out.ndim == 0 else out


@dataclass(frozen=True)
class VarianceReport:
    var_A: float
    var_B: float
    bound: float
    U1: float
    U2: float
    classification: str
    extra: dict | None = None

    @classmethod
    def from_u(cls, U1: float, U2: float, bound: float, extra=None, atol=1e-12):
        U1, U2, bound = float(U1), float(U2), float(bound)
        return cls(bound + U1, bound - U2, bound, U1, U2, classify(U1, U2, atol), extra)

    @classmethod
    def from_variances(cls, var_A: float, var_B: float, bound: float, extra=None, atol=1e-12):
        return cls.from_u(var_A - bound, bound - var_B, bound, extra, atol)

    def reconstruction_error(self) -> float:
        return max(abs(self.var_A - self.bound - self.U1), abs(self.var_B - self.bound + self.U2))


# ----------------------------------------------------------------------
# operator oracle

QUADRATURE_KINDS = ("natural", "distorted", "physical")


def quadrature_kind(quadratures: str, w: float = 1.0) -> LadderKind:
    if quadratures == "natural":
        return NATURAL
    if quadratures == "distorted":
        return LadderKind("distorted", w)
    if quadratures == "physical":
        return OSCILLATOR
    raise ValueError(f"quadratures must be one of {QUADRATURE_KINDS}")


def variance_oracle(s: BiState, kind: LadderKind) -> VarianceReport:
    """Variances from explicit ladder actions (physical quadratures: kind oscillator)."""
    m = quadrature_moments(s, kind)
    return VarianceReport.from_variances(m.var_X, m.var_P, m.bound)


# ----------------------------------------------------------------------
# closed forms

def _F(a, b, x):
    return hyp_pfq(a, b, x)


def binomial_m_sums(c: np.ndarray, r: int, w: float):
    """(M1, M2, M3) for real binomial coefficients c_0..c_K."""
    c = np.asarray(c, dtype=float)
    K = c.size - 1
    k = np.arange(K + 1)
    om1 = 1.0 - ((k == r) & (r == 0))
    om2 = om1 - ((k == 1) & (r == 0)) - ((k == 0) & (r == 1))
    kk = k[:max(K - 1, 0)]
    M1 = float(np.sum(om1[:kk.size] * c[2:] * c[:kk.size]
                      * np.sqrt(np.maximum((kk + r + w - 1) * (kk + r + w), 0.0))))
    M2 = float(np.sum((k + r + w - 2) * om2 * c ** 2))
    kk = k[:K]
    M3 = float(np.sum(om1[:K] * c[1:] * c[:K] * np.sqrt(np.maximum(kk + r + w - 1, 0.0))))
    return M1, M2, M3


def binomial_iw_literal(r: int, w: float) -> float:
    """Single-level <I_w> for the binomial packet: 1 - delta_{r0} + delta_{r1}(w - 1)."""
    return 1.0 - (r == 0) + (r == 1) * (w - 1)


def binomial_closed_form(K: int, eta: float, r: int, w: float) -> VarianceReport:
    """Distorted-quadrature variances of the optimized binomial state (theta_k = 0).

    U1 = (M1 + M2)/2 - M3^2 and U2 = (M1 - M2)/2.  The bound uses <I_w>
    over the full packet; the single-level value is kept in
    ``extra['bound_literal']``.
    """
    from .states import binomial
    s = binomial(K, eta, r)
    c = s.coeffs.real
    M1, M2, M3 = binomial_m_sums(c, r, w)
    iw = float(np.sum(c ** 2 * identity_factor(LadderKind("distorted", w), s.levels)))
    extra = {"M1": M1, "M2": M2, "M3": M3,
             "bound_literal": 0.25 * abs(binomial_iw_literal(r, w))}
    return VarianceReport.from_u(0.5 * (M1 + M2) - M3 ** 2, 0.5 * (M1 - M2), 0.25 * abs(iw), extra)


def natural_f(x):
    """f = 0F2(2,3;x)/0F2(1,2;x) - 2 [0F2(2,2;x)/0F2(1,2;x)]^2 with x = |z|^2."""
    F12 = _F([], [1, 2], x)
    return _F([], [2, 3], x) / F12 - 2 * (_F([], [2, 2], x) / F12) ** 2


def u_natural_coherent_physical(z):
    """Physical quadratures of |z>: U1 = 1 + Re(zeta)^2 f, U2 = -(1 + Im(zeta)^2 f).

    zeta = z / (2 sqrt 2) and f is evaluated at |zeta|^2.
    """
    z = np.asarray(z, dtype=complex) / NATURAL_SCALE
    f = natural_f(np.abs(z) ** 2)
    return 1 + z.real ** 2 * f, -(1 + z.imag ** 2 * f), np.full(z.shape, 0.5)


def u_cat_natural(z, parity: int):
    """Natural quadratures of the natural cats.

    U1 = [Re(z)^2 F+ -/+ Im(z)^2 F-] / D,  U2 = -[Im(z)^2 F+ -/+ Re(z)^2 F-] / D,
    D = F+ +/- F-, F+- = 0F2(1,2; +-x), x = |z|^2/8.  The bound is
    (<A A+> - <A+ A>)/4 with <A A+> = 16 [G(x) +/- G(-x)]/D,
    G = 1F3(3;1,1,1;.), and <A+ A> = |z|^2 (F+ -/+ F-)/D.
    """
    z = np.asarray(z, dtype=complex)
    x = np.abs(z) ** 2 / NATURAL_SCALE ** 2
    Fp, Fm = _F([], [1, 2], x), _F([], [1, 2], -x)
    s = parity
    D = Fp + s * Fm
    re2, im2 = z.real ** 2, z.imag ** 2
    U1 = (re2 * Fp - s * im2 * Fm) / D
    U2 = -(im2 * Fp - s * re2 * Fm) / D
    aad = 16 * (_F([3], [1, 1, 1], x) + s * _F([3], [1, 1, 1], -x)) / D
    ada = np.abs(z) ** 2 * (Fp - s * Fm) / D
    return U1, U2, 0.25 * np.abs(aad - ada)


def u_distorted_coherent_physical(z, w: float):
    """Physical quadratures of |z, w> with the f1, f2 series."""
    z = np.asarray(z, dtype=complex)
    x = np.abs(z) ** 2
    N = _F([1], [w], x)
    f1, f2, F2 = series_f1(w, x), series_f2(w, x), _F([2], [w], x)
    re_z2 = (z * z).real
    U1 = (re_z2 * f2 + F2) / N - 2 * (z.real * f1 / N) ** 2
    U2 = (re_z2 * f2 - F2) / N + 2 * (z.imag * f1 / N) ** 2
    return U1, U2, np.full(z.shape, 0.5)


def u_cat_distorted(z, w: float, parity: int):
    """Distorted quadratures of the distorted cats.

    U1 = [Re(z)^2 F+ -/+ Im(z)^2 F-]/D, U2 = -[Im(z)^2 F+ -/+ Re(z)^2 F-]/D,
    F+- = 1F1(1,w;+-|z|^2), bound (1 + (w-1)(1 +/- 1)/D)/4.
    """
    z = np.asarray(z, dtype=complex)
    x = np.abs(z) ** 2
    Fp, Fm = _F([1], [w], x), _F([1], [w], -x)
    s = parity
    D = Fp + s * Fm
    re2, im2 = z.real ** 2, z.imag ** 2
    U1 = (re2 * Fp - s * im2 * Fm) / D
    U2 = -(im2 * Fp - s * re2 * Fm) / D
    bound = 0.25 * np.abs(1 + (w - 1) * (1 + s) / D)
    return U1, U2, bound


def u_cat_distorted_physical(z, w: float, parity: int):
    """Physical quadratures of the distorted cats (oscillator limit)."""
    z = np.asarray(z, dtype=complex)
    x = np.abs(z) ** 2
    s = parity
    D = _F([1], [w], x) + s * _F([1], [w], -x)
    f2 = series_f2(w, x) + s * series_f2(w, -x)
    F2 = _F([2], [w], x) + s * _F([2], [w], -x)
    re_z2 = (z * z).real
    return (re_z2 * f2 + F2) / D, (re_z2 * f2 - F2) / D, np.full(z.shape, 0.5)


def u_displaced_physical(z, w: float):
    """Physical quadratures of |z, w>_d with the h1, h2 series and N = 1F1(w,1;|z|^2)."""
    z = np.asarray(z, dtype=complex)
    x = np.abs(z) ** 2
    N = _F([w], [1], x)
    h1, h2, G = series_h1(w, x), series_h2(w, x), _F([2, w], [1, 1], x)
    re_z2 = (z * z).real
    U1 = (re_z2 * h2 + G) / N - 2 * (z.real * h1 / N) ** 2
    U2 = (re_z2 * h2 - G) / N + 2 * (z.imag * h1 / N) ** 2
    return U1, U2, np.full(z.shape, 0.5)


def u_cat_displaced_physical(z, w: float, parity: int):
    """Physical quadratures of the displaced cats, denominator 1F1(w,1;.)."""
    z = np.asarray(z, dtype=complex)
    x = np.abs(z) ** 2
    s = parity
    D = _F([w], [1], x) + s * _F([w], [1], -x)
    h2 = series_h2(w, x) + s * series_h2(w, -x)
    G = _F([2, w], [1, 1], x) + s * _F([2, w], [1, 1], -x)
    re_z2 = (z * z).real
    return (re_z2 * h2 + G) / D, (re_z2 * h2 - G) / D, np.full(z.shape, 0.5)


def _displaced_moments(z, w: float, parity: int | None):
    """(<C>, <C^2>, <C C+>, <I_w>) for displaced states or their cats."""
    z = np.asarray(z, dtype=complex)
    x = np.abs(z) ** 2

    def comb(a, b, sign_x=True):
        if parity is None:
            return _F(a, b, x)
        return _F(a, b, x) + parity * _F(a, b, -x)

    D = comb([w], [1])
    if parity is None:
        mC = z * w * _F([w + 1], [2], x) / D
        norm_term = 1 / D
    else:
        mC = np.zeros_like(z)
        norm_term = (1 + parity) / D
    mC2 = z * z * w * (w + 1) / 2 * comb([w + 2], [3]) / D
    mCCd = w * comb([w + 1], [1]) / D
    mI = 1 + (w - 1) * norm_term
    return mC, mC2, mCCd, mI


def u_displaced_distorted(z, w: float, parity: int | None = None):
    """Distorted quadratures of displaced states (parity None) or displaced cats.

    <C> = z w 1F1(w+1,2;x)/N, <C^2> = z^2 w(w+1)/2 1F1(w+2,3;x)/N,
    <C C+> = w 1F1(w+1,1;x)/N, <I_w> = 1 + (w-1)/N, N = 1F1(w,1;x); for the
    cats every 1F1(.;x) becomes 1F1(.;x) +/- 1F1(.;-x) and <C> = 0.
    """
    mC, mC2, mCCd, mI = _displaced_moments(z, w, parity)
    mCdC = mCCd - mI
    U1 = 0.5 * mC2.real + 0.5 * mCdC - mC.real ** 2
    U2 = 0.5 * mC2.real - 0.5 * mCdC + mC.imag ** 2
    return U1, U2, 0.25 * np.abs(mI)


CLOSED_FORMS = {
    ("binomial", "distorted"),
    ("natural_coherent", "physical"),
    ("cat_natural", "natural"),
    ("distorted_coherent", "physical"),
    ("cat_distorted", "distorted"),
    ("cat_distorted", "physical"),
    ("displaced_coherent", "physical"),
    ("displaced_coherent", "distorted"),
    ("cat_displaced", "physical"),
    ("cat_displaced", "distorted"),
}


def u_closed_form(family: str, quadratures: str, z, w: float = 1.0, parity: int = 1):
    """Vectorized (U1, U2, bound) over an array of z for the coherent-type families."""
    key = (family, quadratures)
    if key not in CLOSED_FORMS or family == "binomial":
        raise ValueError(f"no closed form for {key}; use variance_oracle")
    if family == "natural_coherent":
        return u_natural_coherent_physical(z)
    if family == "cat_natural":
        return u_cat_natural(z, parity)
    if family == "distorted_coherent":
        return u_distorted_coherent_physical(z, w)
    if family == "cat_distorted":
        if quadratures == "distorted":
            return u_cat_distorted(z, w, parity)
        return u_cat_distorted_physical(z, w, parity)
    if family == "displaced_coherent":
        if quadratures == "physical":
            return u_displaced_physical(z, w)
        return u_displaced_distorted(z, w, None)
    if quadratures == "physical":
        return u_cat_displaced_physical(z, w, parity)
    return u_displaced_distorted(z, w, parity)


def _zparam(p, key="z", default=0):
    v = p.get(key, default)
    if isinstance(v, (list, tuple)):
        return complex(v[0], v[1])
    return complex(v)


def variance_closed_form(spec: FamilySpec, quadratures: str) -> VarianceReport:
    """VarianceReport from the closed form for (family, quadratures)."""
    key = (spec.family, quadratures)
    if key not in CLOSED_FORMS:
        raise ValueError(f"no closed form for {key}; use variance_oracle")
    p = spec.parameters
    if spec.family == "binomial":
        if p.get("theta") is not None and np.any(np.asarray(p["theta"]) != 0):
            raise ValueError("binomial closed form assumes theta_k = 0")
        return binomial_closed_form(int(p.get("K", 10)), float(p.get("eta", 0.5)),
                                    int(p.get("r", 0)), float(p.get("w", 1.0)))
    U1, U2, b = u_closed_form(spec.family, quadratures, _zparam(p, "z", 0 if "cat" not in spec.family else 1),
                              float(p.get("w", 1.0)), int(p.get("parity", 1)))
    return VarianceReport.from_u(float(np.real(U1)), float(np.real(U2)), float(np.real(b)))


def family_kind(spec: FamilySpec, quadratures: str) -> LadderKind:
    return quadrature_kind(quadratures, float(spec.parameters.get("w", 1.0)))


# ----------------------------------------------------------------------
# Mandel parameter

def mandel_q(s: BiState) -> float:
    """Q = (Delta N)^2/<N> - 1 with N = k + r on coefficient k."""
    p = np.abs(s.coeffs) ** 2
    p = p / p.sum()
    n = s.levels.astype(float)
    mean = float(np.sum(p * n))
    if mean <= 0:
        raise ValueError("Mandel parameter undefined for <N> = 0")
    var = float(np.sum(p * n * n)) - mean ** 2
    return var / mean - 1


# ----------------------------------------------------------------------
# beam splitter

@dataclass(frozen=True)
class PurityInputs:
    state: BiState
    T: float
    phi: float = 0.0

    def __post_init__(self):
        if not 0 <= self.T <= 1:
            raise ValueError("T must lie in [0, 1]")

    @property
    def R(self) -> float:
        return math.sqrt(max(0.0, 1 - self.T ** 2))


def _require_oscillator(s: BiState):
    if s.basis != "oscillator":
        raise ValueError("beam-splitter and Wigner diagnostics need the oscillator basis; "
                         "use state.with_basis('oscillator') for the oscillator limit")


def _sqrt_binom(M: int) -> np.ndarray:
    k = np.arange(M)[:, None]
    p = np.arange(M)[None, :]
    return np.exp(0.5 * (gammaln(k + p + 1) - gammaln(k + 1) - gammaln(p + 1)))


def gamma_matrix(c: np.ndarray, r: int, T: float, phi: float = 0.0, negative=None) -> np.ndarray:
    """Gamma_{k,p} = e^{-i(phi-pi)p} R^p T^k sqrt((k+p)!/(k!p!)) c_{k+p-r} for k, p <= K+r.

    ``negative`` supplies c_j for j < 0 (index -j-1); these entries are
    formal and cancel in the purity.  Entries with k+p-r > K are zero.
    """
    c = np.asarray(c, dtype=complex)
    K = c.size - 1
    M = K + r + 1
    R = math.sqrt(max(0.0, 1 - T * T))
    k = np.arange(M)[:, None]
    p = np.arange(M)[None, :]
    idx = k + p - r
    ext = np.zeros(max(r, 1), dtype=complex) if negative is None else np.asarray(negative, dtype=complex)
    cc = np.zeros((M, M), dtype=complex)
    pos = (idx >= 0) & (idx <= K)
    cc[pos] = c[idx[pos]]
    neg = idx < 0
    cc[neg] = ext[-idx[neg] - 1]
    with np.errstate(invalid="ignore"):
        tk = np.where(k == 0, 1.0, T ** k)
        rp = np.where(p == 0, 1.0, R ** p)
    phase = np.exp(-1j * (phi - math.pi) * p)
    return phase * rp * tk * _sqrt_binom(M) * cc


def _partial_sums(Ga: np.ndarray, Gb: np.ndarray) -> np.ndarray:
    """S[n, m, L] = sum_{p=0}^{L} Ga[n,p] conj(Gb[m,p])."""
    return np.cumsum(Ga[:, None, :] * np.conj(Gb)[None, :, :], axis=2)


def beamsplitter_purity(inp: PurityInputs, negative=None) -> float:
    """Linear entropy S_L = 1 - Tr rho_1^2 from the F, G, H partial sums.

    F_{n,m} sums p up to K+r-max(n,m), G_{n,m} up to r-1-max(n,m) and
    H_{n,m} up to min(K+r-n, r-1-m).
    """
    s = inp.state
    _require_oscillator(s)
    c = s.coeffs
    r = s.offset_r
    K = c.size - 1
    M = K + r + 1
    G = gamma_matrix(c, r, inp.T, inp.phi, negative)
    S = _partial_sums(G, G)
    n = np.arange(M)[:, None]
    m = np.arange(M)[None, :]

    def pick(lim):
        ok = lim >= 0
        out = np.zeros((M, M), dtype=complex)
        nn, mm = np.nonzero(ok)
        out[nn, mm] = S[nn, mm, np.minimum(lim[nn, mm], M - 1)]
        return out

    F = pick(K + r - np.maximum(n, m))
    Gs = pick(r - 1 - np.maximum(n, m))
    H = pick(np.minimum(K + r - n, r - 1 - m))
    tr = float(np.sum(np.abs(F[r:, r:]) ** 2))
    if r > 0:
        low = F[:r, :r] + Gs[:r, :r] - H[:r, :r] - np.conj(H[:r, :r]).T
        tr += float(np.sum(np.abs(low) ** 2))
        cross = F[:r, r:] - np.conj(H[r:, :r]).T
        tr += 2 * float(np.sum(np.abs(cross) ** 2))
    return 1 - tr


def beamsplitter_output(s: BiState, T: float, phi: float = 0.0) -> np.ndarray:
    """Two-mode output amplitudes out[k, p] for input sum_n c_n |phi_n> (x) |phi_0>.

    Built from the binomial expansion of (T a1+ - e^{-i phi} R a2+)^n |0,0>/sqrt(n!),
    level by level, independently of the Gamma bookkeeping.
    """
    R = math.sqrt(max(0.0, 1 - T * T))
    top = s.offset_r + s.coeffs.size
    out = np.zeros((top, top), dtype=complex)
    u = -np.exp(-1j * phi) * R
    for j, cn in enumerate(s.coeffs):
        n = j + s.offset_r
        for p in range(n + 1):
            k = n - p
            amp = math.exp(0.5 * (math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(p + 1)))
            out[k, p] += cn * amp * (T ** k if k else 1.0) * (u ** p if p else 1.0)
    return out


def beamsplitter_purity_oracle(inp: PurityInputs) -> float:
    """1 - Tr rho_1^2 with rho_1 from the explicit partial trace of the output vector."""
    _require_oscillator(inp.state)
    out = beamsplitter_output(inp.state, inp.T, inp.phi)
    rho1 = out @ out.conj().T
    return float(1 - np.real(np.trace(rho1 @ rho1)))


# ----------------------------------------------------------------------
# Wigner function

@dataclass(frozen=True, eq=False)
class WignerGrid:
    x_axis: np.ndarray
    p_axis: np.ndarray
    values: np.ndarray    # shape (len(p_axis), len(x_axis))

    def integral(self) -> float:
        return float(integrate.trapezoid(integrate.trapezoid(self.values, self.x_axis, axis=1), self.p_axis))

    def x_marginal(self) -> np.ndarray:
        return integrate.trapezoid(self.values, self.p_axis, axis=0)


def wavefunction(s: BiState, x) -> np.ndarray:
    """psi(x) = sum_k c_k phi_{k+r}(x) in the oscillator basis."""
    x = np.asarray(x, dtype=float)
    tab = phi_table(s.offset_r + s.coeffs.size - 1, x.reshape(-1))
    return (s.coeffs @ tab[s.offset_r:]).reshape(x.shape)


def wigner(s: BiState, x_axis, p_axis, dy: float | None = None) -> WignerGrid:
    """W(x,p) = (1/pi) int psi*(x+y) psi(x-y) e^{2ipy} dy, trapezoid in y."""
    _require_oscillator(s)
    x_axis = np.asarray(x_axis, dtype=float)
    p_axis = np.asarray(p_axis, dtype=float)
    n_max = s.offset_r + s.coeffs.size - 1
    reach = math.sqrt(2 * n_max + 1) + 8.0
    if dy is None:
        kmax = max(math.sqrt(2 * n_max + 1), float(np.max(np.abs(p_axis))), 1.0)
        dy = min(0.02, 0.3 / kmax)
    ny = int(math.ceil(reach / dy))
    y = np.arange(-ny, ny + 1) * dy
    wts = np.full(y.size, dy)
    wts[[0, -1]] *= 0.5
    E = np.exp(2j * np.outer(y, p_axis)) * wts[:, None]
    vals = np.empty((p_axis.size, x_axis.size))
    chunk = max(1, int(2e6 // (y.size * (n_max + 1))))
    for i0 in range(0, x_axis.size, chunk):
        xs = x_axis[i0:i0 + chunk]
        plus = wavefunction(s, xs[:, None] + y[None, :])
        minus = wavefunction(s, xs[:, None] - y[None, :])
        vals[:, i0:i0 + chunk] = (np.conj(plus) * minus @ E).real.T / math.pi
    return WignerGrid(x_axis, p_axis, vals)


# ----------------------------------------------------------------------
# phase-space squeezing maps

@dataclass(frozen=True, eq=False)
class PhaseSpaceGrid:
    re_axis: np.ndarray
    im_axis: np.ndarray
    values: np.ndarray      # shape (len(im_axis), len(re_axis))
    U1: np.ndarray | None = None
    U2: np.ndarray | None = None

    def counts(self) -> dict:
        vals, cnt = np.unique(self.values.astype(str), return_counts=True)
        return {str(v): int(c) for v, c in zip(vals, cnt)}


def squeeze_map(family: str, quadratures: str, re_axis, im_axis, w: float = 1.0,
                parity: int = 1, atol: float = 1e-12) -> PhaseSpaceGrid:
    """Per-cell squeezing class over a rectangular z grid using the closed forms."""
    re_axis = np.asarray(re_axis, dtype=float)
    im_axis = np.asarray(im_axis, dtype=float)
    Z = re_axis[None, :] + 1j * im_axis[:, None]
    U1, U2, _ = u_closed_form(family, quadratures, Z.reshape(-1), w, parity)
    U1 = np.real(U1).reshape(Z.shape)
    U2 = np.real(U2).reshape(Z.shape)
    return PhaseSpaceGrid(re_axis, im_axis, classify(U1, U2, atol), U1, U2)


def no_squeeze_radius(family: str = "natural_coherent", quadratures: str = "physical",
                      w: float = 1.0, parity: int = 1, t_max: float = 40.0,
                      width: float = 0.05, step: float = 0.05) -> float:
    """First radius on the positive real axis where the class leaves 'none'.

    Scans outward in ``step`` increments, then bisects the first change to
    an interval narrower than ``width``; returns the midpoint.
    """
    def cls(t):
        U1, U2, _ = u_closed_form(family, quadratures, np.array([t + 0j]), w, parity)
        return classify(float(np.real(U1[0])), float(np.real(U2[0])))

    t = step
    if cls(t) != "none":
        return 0.0
    while t < t_max:
        if cls(t + step) != "none":
            lo, hi = t, t + step
            while hi - lo >= width:
                mid = 0.5 * (lo + hi)
                if cls(mid) == "none":
                    lo = mid
                else:
                    hi = mid
            return 0.5 * (lo + hi)
        t += step
    return math.inf


def squeezing_intervals(t, mask) -> list:
    """Contiguous [start, end] runs of ``t`` where ``mask`` holds."""
    t = np.asarray(t)
    mask = np.asarray(mask, dtype=bool)
    out = []
    i = 0
    while i < t.size:
        if mask[i]:
            j = i
            while j + 1 < t.size and mask[j + 1]:
                j += 1
            out.append((float(t[i]), float(t[j])))
            i = j + 1
        else:
            i += 1
    return out


def cat_natural_interlacing(t_max: float = 16.0, n: int = 4001) -> dict:
    """Squeezing intervals of even and odd natural cats along the real axis."""
    t = np.linspace(1e-3, t_max, n)
    res = {}
    for name, parity in (("even", 1), ("odd", -1)):
        U1, U2, _ = u_cat_natural(t + 0j, parity)
        cls = classify(U1, U2)
        res[name] = squeezing_intervals(t, cls != "none")
    return res
