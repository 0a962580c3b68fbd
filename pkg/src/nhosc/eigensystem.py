"""Non-Hermitian oscillator potentials and their bi-orthogonal eigenfunctions.

The potential family is

    V(x) = x^2 - 2 - 2 d/dx [ (b + 2a Erf(x) - i sqrt(pi) lam) / (sqrt(pi) alpha^2(x)) ]

with alpha^2(x) = e^{x^2} g(Erf x), g(u) = a u^2 + b u + c and 4ac - b^2 = pi lam^2.
The spectrum is E_n = 2n - 1.  Eigenfunctions are obtained in closed form
from the oscillator functions through a first-order intertwiner, and the
relevant pairing is the bi-product int f g dx (no complex conjugate).
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import numpy as np

from .oscillator import GridSpec, phi_table, simpson
from .specfun import erf

SQRT_PI = math.sqrt(math.pi)


@dataclass(frozen=True)
class ModelParams:
    """Potential parameters (a, b, c, lam) on the surface 4ac - b^2 = pi lam^2.

    This constraint is the one under which the potential, the intertwiner
    and psi_0 below are mutually consistent (the Riccati equation for the
    superpotential closes); see docs/conventions.md.
    """

    a: float
    b: float
    c: float
    lam: float

    def __post_init__(self):
        if min(self.a, self.b, self.c) < 0:
            raise ValueError("a, b, c must be non-negative")
        disc = 4 * self.a * self.c - self.b ** 2
        if abs(math.pi * self.lam ** 2 - disc) > 1e-12 * max(1.0, abs(disc)):
            raise ValueError(f"lambda={self.lam} violates 4ac - b^2 = pi lambda^2 (4ac - b^2 = {disc})")
        if self.g_min() <= 0:
            raise ValueError("a Erf^2 + b Erf + c must stay positive: singular parameter set")

    @classmethod
    def from_abc(cls, a: float, b: float, c: float, sign: int = 1) -> "ModelParams":
        """Solve the constraint for lam; ``sign`` picks the branch."""
        disc = 4 * a * c - b * b
        if disc < 0:
            if disc > -1e-12 * max(1.0, b * b):
                disc = 0.0
            else:
                raise ValueError("4ac - b^2 must be non-negative for real lambda")
        return cls(a, b, c, math.copysign(math.sqrt(disc / math.pi), sign))

    def g(self, u):
        return (self.a * u + self.b) * u + self.c

    def g_min(self) -> float:
        """Minimum of g on [-1, 1], the range of Erf."""
        cands = [-1.0, 1.0]
        if self.a > 0:
            u0 = -self.b / (2 * self.a)
            if -1 < u0 < 1:
                cands.append(u0)
        return min(self.g(u) for u in cands)


@dataclass(frozen=True)
class HermitianLimitParams:
    """Real (lam = 0) family written through gamma = sqrt(pi c / 4a)."""

    gamma: float

    def __post_init__(self):
        if abs(self.gamma) < SQRT_PI / 2:
            raise ValueError("|gamma| >= sqrt(pi)/2 is required (c >= a)")

    def to_model_params(self, a: float = 1.0) -> ModelParams:
        """Equivalent (a, 2 sqrt(ac), c, 0) for positive gamma."""
        if self.gamma <= 0:
            raise ValueError("only positive gamma maps onto non-negative (a, b, c)")
        c = 4 * a * self.gamma ** 2 / math.pi
        return ModelParams(a, 2 * math.sqrt(a * c), c, 0.0)


@dataclass(frozen=True, eq=False)
class SampledState:
    """Complex samples of a wavefunction on a uniform grid."""

    grid: GridSpec
    values: np.ndarray
    label: str = ""

    def __post_init__(self):
        v = np.array(self.values, dtype=complex).reshape(-1)
        if v.size != self.grid.n_points:
            raise ValueError("values length does not match grid")
        if not np.all(np.isfinite(v)):
            raise ValueError("non-finite samples")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            wr = csv.writer(fh, lineterminator="\n")
            wr.writerow(["x", "re", "im"])
            for xi, vi in zip(self.grid.x, self.values):
                wr.writerow([f"{xi:.15g}", f"{vi.real:.15g}", f"{vi.imag:.15g}"])

    @classmethod
    def from_csv(cls, path, label: str = "") -> "SampledState":
        data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
        x = data[:, 0]
        grid = GridSpec(float(x[0]), float(x[-1]), len(x))
        return cls(grid, data[:, 1] + 1j * data[:, 2], label)


def _erf_prime(x):
    return (2 / SQRT_PI) * np.exp(-x * x)


def alpha_fn(p: ModelParams, x):
    """alpha(x) = e^{x^2/2} sqrt(a Erf^2 + b Erf + c)."""
    g = p.g(erf(x))
    if np.any(g <= 0):
        raise ValueError("non-positive radicand in alpha")
    return np.exp(0.5 * np.asarray(x) ** 2) * np.sqrt(g)


def alpha_log_derivative(p: ModelParams, x):
    """alpha'/alpha = x + (2a Erf + b) e^{-x^2} / (sqrt(pi) g)."""
    x = np.asarray(x, dtype=float)
    e = erf(x)
    return x + (2 * p.a * e + p.b) * np.exp(-x * x) / (SQRT_PI * p.g(e))


def alpha_prime(p: ModelParams, x):
    return alpha_fn(p, x) * alpha_log_derivative(p, x)


def potential_v(p: ModelParams, x):
    """Complex potential V(x) with the bracket derivative done analytically."""
    x = np.asarray(x, dtype=float)
    e = erf(x)
    ep = _erf_prime(x)
    g = p.g(e)
    gp = (2 * p.a * e + p.b) * ep
    num = p.b + 2 * p.a * e - 1j * SQRT_PI * p.lam
    nump = 2 * p.a * ep
    ex = np.exp(-x * x)
    # q = num e^{-x^2} / (sqrt(pi) g)
    qp = (nump * ex / g - 2 * x * num * ex / g - num * ex * gp / g ** 2) / SQRT_PI
    return x * x - 2 - 2 * qp


def potential_bracket(p: ModelParams, x):
    """The bracketed term whose derivative enters V (for finite-difference checks)."""
    x = np.asarray(x, dtype=float)
    e = erf(x)
    return (p.b + 2 * p.a * e - 1j * SQRT_PI * p.lam) * np.exp(-x * x) / (SQRT_PI * p.g(e))


def hermitian_limit_potential(h: HermitianLimitParams, x):
    """V(x; gamma) = x^2 - 2 - 2 d/dx [ e^{-x^2} / (gamma + int_0^x e^{-y^2} dy) ]."""
    x = np.asarray(x, dtype=float)
    den = h.gamma + 0.5 * SQRT_PI * erf(x)
    if np.any(den == 0):
        raise ValueError("vanishing denominator")
    ex = np.exp(-x * x)
    d = -2 * x * ex / den - ex * ex / den ** 2
    return x * x - 2 - 2 * d


def phase_integral(p: ModelParams, x, anchor: float = 0.0):
    """int_anchor^x alpha^{-2}(y) dy in closed form.

    With u = Erf(y) the integral becomes (sqrt(pi)/2) int du / g(u).  For
    lam != 0 the discriminant 4ac - b^2 = pi lam^2 is positive, so the
    antiderivative is an arctangent.  Returns zeros when lam = 0, where the
    phase drops out of psi_0.
    """
    x = np.asarray(x, dtype=float)
    if p.lam == 0:
        return np.zeros_like(x)
    s = math.sqrt(4 * p.a * p.c - p.b ** 2)

    def prim(u):
        return 2 / s * np.arctan((2 * p.a * u + p.b) / s)

    return 0.5 * SQRT_PI * (prim(erf(x)) - prim(erf(anchor)))


def _ground_unnormalized(p: ModelParams, x, anchor: float = 0.0):
    x = np.asarray(x, dtype=float)
    amp = np.exp(-0.5 * x * x) / np.sqrt(p.g(erf(x)))
    if p.lam == 0:
        return amp.astype(complex)
    return amp * np.exp(1j * p.lam * phase_integral(p, x, anchor))


def kappa0(p: ModelParams, grid: GridSpec, anchor: float = 0.0) -> complex:
    """Bi-normalization constant of psi_0, chosen with Re > 0 (else Im > 0)."""
    u = _ground_unnormalized(p, grid.x, anchor)
    s = complex(simpson(u * u, grid.spacing))
    if not np.isfinite(s) or abs(s) < 1e-300:
        raise ArithmeticError("psi_0 bi-normalization integral vanished")
    k = 1 / np.sqrt(s)
    if k.real < 0 or (k.real == 0 and k.imag < 0):
        k = -k
    return complex(k)


def eigenstate(p: ModelParams, n: int, grid: GridSpec | None = None,
               anchor: float = 0.0, check_decay: bool = True) -> SampledState:
    """Sampled eigenfunction psi_n with energy 2n - 1.

    psi_{n+1} = (phi_n' + beta phi_n) / sqrt(2(n+1)),
    beta = -alpha'/alpha + i lam / alpha^2,
    and psi_0 = kappa_0 e^{-x^2/2} g^{-1/2} exp(i lam int_0^x alpha^{-2}).
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    grid = grid or GridSpec()
    x = grid.x
    if n == 0:
        vals = kappa0(p, grid, anchor) * _ground_unnormalized(p, x, anchor)
    else:
        m = n - 1
        tab = phi_table(m, x)
        dphi = -x * tab[m]
        if m > 0:
            dphi = dphi + math.sqrt(2.0 * m) * tab[m - 1]
        beta = -alpha_log_derivative(p, x) + 1j * p.lam * np.exp(-x * x) / p.g(erf(x))
        vals = (dphi + beta * tab[m]) / math.sqrt(2.0 * n)
    if check_decay and max(abs(vals[0]), abs(vals[-1])) >= 1e-10:
        raise ValueError(f"grid too narrow: |psi_{n}| at the endpoints is not below 1e-10")
    return SampledState(grid, vals, f"psi_{n}")


def biproduct(f: SampledState, g: SampledState) -> complex:
    """(bar f, g) = int f(x) g(x) dx by composite Simpson, no conjugation."""
    if f.grid != g.grid:
        raise ValueError("grid mismatch")
    return complex(simpson(f.values * g.values, f.grid.spacing))


def l2_norm2(f: SampledState) -> float:
    return float(simpson(np.abs(f.values) ** 2, f.grid.spacing))


def biorthonormality_matrix(p: ModelParams, n_max: int, grid: GridSpec) -> np.ndarray:
    states = [eigenstate(p, n, grid) for n in range(n_max + 1)]
    return np.array([[biproduct(s, t) for t in states] for s in states])


def eigen_residual(p: ModelParams, n: int, grid: GridSpec | None = None) -> float:
    """||(-D^2 + V) psi_n - (2n-1) psi_n||_inf / ||psi_n||_inf with a 5-point stencil."""
    grid = grid or GridSpec()
    psi = eigenstate(p, n, grid).values
    h = grid.spacing
    d2 = (-psi[4:] + 16 * psi[3:-1] - 30 * psi[2:-2] + 16 * psi[1:-3] - psi[:-4]) / (12 * h * h)
    core = psi[2:-2]
    res = -d2 + potential_v(p, grid.x[2:-2]) * core - (2 * n - 1) * core
    return float(np.max(np.abs(res)) / np.max(np.abs(psi)))


def sign_changes(values) -> int:
    """Number of sign changes of a real sequence, ignoring exact zeros."""
    v = np.asarray(values, dtype=float)
    v = v[v != 0]
    return int(np.count_nonzero(np.signbit(v[1:]) != np.signbit(v[:-1])))
