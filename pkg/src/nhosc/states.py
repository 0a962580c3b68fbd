"""Constructors for the superposition families.

Every constructor returns a normalized BiState.  Coefficients are built from
log-magnitudes so that large truncations stay finite; normalizations use the
hypergeometric closed forms.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import gammaln

from .algebra import BiState
from .specfun import hyp_pfq

FAMILIES = (
    "binomial", "poisson", "natural_coherent", "distorted_coherent",
    "displaced_coherent", "cat_natural", "cat_distorted", "cat_displaced",
    "photon_added",
)

TAIL_TOL = 1e-12
DIM_CAP = 512


@dataclass(frozen=True)
class FamilySpec:
    family: str
    parameters: dict = field(default_factory=dict)
    dim: int | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; expected one of {FAMILIES}")


def _klog_abs(z: complex, k: np.ndarray) -> np.ndarray:
    """k log|z| with the convention 0 log 0 = 0."""
    if z == 0:
        return np.where(k == 0, 0.0, -np.inf)
    return k * math.log(abs(z))


def _log_poch(w: float, k: np.ndarray) -> np.ndarray:
    if w == 0:
        return np.where(k == 0, 0.0, -np.inf)
    # (w)_k = w (w+1)_{k-1}; gammaln(w) overflows for subnormal w
    km1 = np.maximum(k - 1, 0)
    return np.where(k == 0, 0.0, math.log(w) + gammaln(w + 1 + km1) - gammaln(w + 1))


def _assemble(logmag: np.ndarray, z: complex, dim: int | None, what: str) -> np.ndarray:
    """Coefficients |c_k| e^{i k arg z}, truncated at the requested or automatic dim."""
    mag2 = np.exp(2 * logmag)
    tail = np.cumsum(mag2[::-1])[::-1]          # tail[D] = sum_{k >= D}
    beyond = max(0.0, 1.0 - float(np.sum(mag2)))
    if dim is None:
        ok = np.nonzero(np.append(tail[1:], 0.0) + beyond < TAIL_TOL)[0]
        if ok.size == 0 or beyond >= TAIL_TOL:
            raise ValueError(f"{what}: more than {DIM_CAP} levels needed for tail < {TAIL_TOL}")
        dim = int(ok[0]) + 1
    else:
        if dim < 1:
            raise ValueError("dim must be positive")
        rest = (float(tail[dim]) if dim < tail.size else 0.0) + beyond
        if rest >= TAIL_TOL:
            raise ValueError(f"{what}: dim={dim} leaves tail mass {rest:.2e} >= {TAIL_TOL}")
    k = np.arange(dim)
    mag = np.exp(logmag[:dim])
    return mag * np.exp(1j * k * np.angle(z)) if z != 0 else mag.astype(complex)


def _levels(dim, extra=0):
    return np.arange(max(dim or 0, DIM_CAP) + extra, dtype=float)


# finite family ---------------------------------------------------------

def binomial(K: int, eta: float, r: int = 0, theta=None) -> BiState:
    """Optimized binomial state sum_k sqrt(C(K,k) eta^k (1-eta)^{K-k}) e^{i theta_k} |psi_{k+r}>."""
    if int(K) != K or K < 0:
        raise ValueError("K must be a non-negative integer")
    if not 0 <= eta <= 1:
        raise ValueError("eta must lie in [0, 1]")
    if int(r) != r or r < 0:
        raise ValueError("r must be a non-negative integer")
    k = np.arange(K + 1, dtype=float)
    with np.errstate(divide="ignore"):
        le = np.log(eta) if eta > 0 else -np.inf
        l1 = np.log1p(-eta) if eta < 1 else -np.inf
    logc2 = gammaln(K + 1) - gammaln(k + 1) - gammaln(K - k + 1)
    with np.errstate(invalid="ignore"):
        logc2 = logc2 + np.where(k > 0, k * le, 0.0) + np.where(K - k > 0, (K - k) * l1, 0.0)
    mag = np.exp(0.5 * logc2)
    if theta is not None:
        theta = np.broadcast_to(np.asarray(theta, dtype=float), mag.shape)
        coeffs = mag * np.exp(1j * theta)
    else:
        coeffs = mag.astype(complex)
    return BiState(int(r), coeffs)


def binomial_mean_energy(K: int, eta: float, r: int) -> float:
    return 2 * (K * eta + r) - 1


# infinite families -----------------------------------------------------

def poisson_radius(E_b: float, r: int) -> float:
    """|z| of the optimized Poisson state with mean energy E_b: |z|^2 = (E_b + 1 - 2r)/2."""
    x = (E_b + 1 - 2 * r) / 2
    if x < 0:
        raise ValueError("E_b must be at least 2r - 1")
    return math.sqrt(x)


def poisson(z: complex | None = None, r: int = 0, E_b: float | None = None,
            dim: int | None = None) -> BiState:
    """Optimized Poisson state e^{-|z|^2/2} sum_k z^k/sqrt(k!) |psi_{k+r}>."""
    if z is None:
        if E_b is None:
            raise ValueError("give either z or E_b")
        z = poisson_radius(E_b, r)
    z = complex(z)
    k = _levels(dim)
    logmag = -0.5 * abs(z) ** 2 + _klog_abs(z, k) - 0.5 * gammaln(k + 1)
    return BiState(int(r), _assemble(logmag, z, dim, "poisson"))


NATURAL_SCALE = 2 * math.sqrt(2)


def natural_coherent(z: complex, dim: int | None = None) -> BiState:
    """Eigenvector of the natural lowering operator, A|z> = z|z>, offset 1.

    c_k = zeta^k / (k! sqrt((k+1)!)) / sqrt(0F2(1,2;|zeta|^2)) with
    zeta = z / (2 sqrt 2); the factor comes from A|psi_n> = 2(n-1) sqrt(2n) |psi_{n-1}>.
    """
    zeta = complex(z) / NATURAL_SCALE
    k = _levels(dim)
    norm = hyp_pfq([], [1, 2], abs(zeta) ** 2)
    logmag = _klog_abs(zeta, k) - gammaln(k + 1) - 0.5 * gammaln(k + 2) - 0.5 * math.log(norm)
    return BiState(1, _assemble(logmag, zeta, dim, "natural_coherent"))


def distorted_coherent(z: complex, w: float, dim: int | None = None) -> BiState:
    """c_k = z^k / sqrt((w)_k) / sqrt(1F1(1,w;|z|^2)), offset 1."""
    if not w > 0:
        raise ValueError("distorted coherent states need w > 0 (1F1(1,w;.) is undefined at w = 0)")
    z = complex(z)
    k = _levels(dim)
    norm = hyp_pfq([1], [w], abs(z) ** 2)
    logmag = _klog_abs(z, k) - 0.5 * _log_poch(w, k) - 0.5 * math.log(norm)
    return BiState(1, _assemble(logmag, z, dim, "distorted_coherent"))


def displaced_coherent(z: complex, w: float, dim: int | None = None) -> BiState:
    """c_k = z^k sqrt((w)_k) / k! / sqrt(1F1(w,1;|z|^2)), offset 1."""
    if w < 0:
        raise ValueError("w must be non-negative")
    z = complex(z)
    k = _levels(dim)
    norm = hyp_pfq([w], [1], abs(z) ** 2)
    logmag = _klog_abs(z, k) + 0.5 * _log_poch(w, k) - gammaln(k + 1) - 0.5 * math.log(norm)
    return BiState(1, _assemble(logmag, z, dim, "displaced_coherent"))


def photon_added(alpha: complex, r: int, dim: int | None = None) -> BiState:
    """c_k = sqrt((k+r)! / (1F1(r+1,1;|alpha|^2) r!)) alpha^k / k!, offset r."""
    if int(r) != r or r < 0:
        raise ValueError("r must be a non-negative integer")
    alpha = complex(alpha)
    k = _levels(dim)
    norm = hyp_pfq([r + 1], [1], abs(alpha) ** 2)
    logmag = (0.5 * (gammaln(k + r + 1) - gammaln(r + 1) - math.log(norm))
              + _klog_abs(alpha, k) - gammaln(k + 1))
    return BiState(int(r), _assemble(logmag, alpha, dim, "photon_added"))


def _cat(base: BiState, parity: int, ratio: float, extra: float = 1 / math.sqrt(2)) -> BiState:
    if parity not in (1, -1):
        raise ValueError("parity must be +1 or -1")
    den = 1 + parity * ratio
    if not den > 0:
        raise ValueError("zero-norm cat state (odd cat at z = 0)")
    k = np.arange(base.coeffs.size)
    sym = 1 + parity * (-1.0) ** k
    return BiState(base.offset_r, base.coeffs * sym * extra / math.sqrt(den))


def cat_natural(z: complex, parity: int = 1, dim: int | None = None) -> BiState:
    """[1 +- 0F2(1,2;-x)/0F2(1,2;x)]^{-1/2} (|z> +- |-z>)/sqrt(2), x = |z|^2/8."""
    x = abs(z) ** 2 / NATURAL_SCALE ** 2
    ratio = hyp_pfq([], [1, 2], -x) / hyp_pfq([], [1, 2], x)
    return _cat(natural_coherent(z, dim), parity, ratio)


def cat_distorted(z: complex, w: float, parity: int = 1, dim: int | None = None) -> BiState:
    """[1 +- 1F1(1,w;-|z|^2)/1F1(1,w;|z|^2)]^{-1/2} (|z,w> +- |-z,w>)/sqrt(2)."""
    x = abs(z) ** 2
    ratio = hyp_pfq([1], [w], -x) / hyp_pfq([1], [w], x)
    return _cat(distorted_coherent(z, w, dim), parity, ratio)


def cat_displaced(z: complex, w: float, parity: int = 1, dim: int | None = None) -> BiState:
    """[1 +- 1F1(w,1;-|z|^2)/1F1(w,1;|z|^2)]^{-1/2} (|z,w>_d +- |-z,w>_d)/sqrt(2).

    The 1/sqrt(2) is required for unit norm and is included here.
    """
    x = abs(z) ** 2
    ratio = hyp_pfq([w], [1], -x) / hyp_pfq([w], [1], x)
    return _cat(displaced_coherent(z, w, dim), parity, ratio)


# dispatch --------------------------------------------------------------

def _complex_param(p, key, default=None):
    v = p.get(key, default)
    if v is None:
        return None
    if isinstance(v, (list, tuple)):
        return complex(v[0], v[1])
    return complex(v)


def make_state(spec: FamilySpec) -> BiState:
    """Build the BiState described by ``spec``."""
    p = dict(spec.parameters)
    f = spec.family
    dim = spec.dim
    if f == "binomial":
        return binomial(int(p.get("K", 10)), float(p.get("eta", 0.5)), int(p.get("r", 0)),
                        p.get("theta"))
    if f == "poisson":
        E_b = p.get("E_b")
        return poisson(_complex_param(p, "z"), int(p.get("r", 0)),
                       None if E_b is None else float(E_b), dim)
    if f == "natural_coherent":
        return natural_coherent(_complex_param(p, "z", 0), dim)
    if f == "distorted_coherent":
        return distorted_coherent(_complex_param(p, "z", 0), float(p.get("w", 1)), dim)
    if f == "displaced_coherent":
        return displaced_coherent(_complex_param(p, "z", 0), float(p.get("w", 1)), dim)
    if f == "photon_added":
        return photon_added(_complex_param(p, "alpha", 0), int(p.get("r", 0)), dim)
    parity = int(p.get("parity", 1))
    if f == "cat_natural":
        return cat_natural(_complex_param(p, "z", 1), parity, dim)
    if f == "cat_distorted":
        return cat_distorted(_complex_param(p, "z", 1), float(p.get("w", 1)), parity, dim)
    return cat_displaced(_complex_param(p, "z", 1), float(p.get("w", 1)), parity, dim)


def mean_energy(s: BiState) -> float:
    """<H> = sum_k |c_k|^2 (2(k+r) - 1)."""
    p = np.abs(s.coeffs) ** 2
    return float(np.sum(p * (2 * s.levels - 1)))


def _jsonable(v):
    if isinstance(v, complex):
        return [v.real, v.imag]
    if isinstance(v, np.ndarray):
        return [_jsonable(x) for x in v.tolist()]
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, np.generic):
        return v.item()
    return v


def _r15(x: float) -> float:
    return float(f"{x:.15g}")


def state_to_dict(s: BiState, family: str = "", parameters: dict | None = None) -> dict:
    return {
        "family": family,
        "parameters": {k: _jsonable(v) for k, v in (parameters or {}).items()},
        "offset_r": s.offset_r,
        "basis": s.basis,
        "coeffs": [[_r15(c.real), _r15(c.imag)] for c in s.coeffs],
    }


def state_to_json(s: BiState, family: str = "", parameters: dict | None = None) -> str:
    return json.dumps(state_to_dict(s, family, parameters), indent=1)


def state_from_json(text: str) -> BiState:
    d = json.loads(text)
    c = np.array([complex(re, im) for re, im in d["coeffs"]])
    return BiState(int(d["offset_r"]), c, d.get("basis", "eigen"))
