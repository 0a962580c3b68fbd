"""Harmonic-oscillator basis functions and ladder operators.

The ladder operators follow the normalization [a, a^dagger] = 2, so that

    a |phi_n>        = sqrt(2n)     |phi_{n-1}>
    a^dagger |phi_n> = sqrt(2(n+1)) |phi_{n+1}>

and x = (a^dagger + a)/2, p = i(a^dagger - a)/2 are the usual quadratures
with [x, p] = i.  See docs/conventions.md.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

PI_M14 = math.pi ** -0.25


@dataclass(frozen=True)
class GridSpec:
    """Uniform grid on [x_min, x_max] with ``n_points`` nodes."""

    x_min: float = -12.0
    x_max: float = 12.0
    n_points: int = 2001

    def __post_init__(self):
        if not self.x_min < self.x_max:
            raise ValueError("x_min must be smaller than x_max")
        if self.n_points < 16:
            raise ValueError("n_points must be at least 16")

    @property
    def spacing(self) -> float:
        return (self.x_max - self.x_min) / (self.n_points - 1)

    @property
    def x(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.n_points)


def simpson(y, dx: float):
    """Composite Simpson quadrature of samples on a uniform grid."""
    return integrate.simpson(y, dx=dx)


@dataclass(frozen=True, eq=False)
class FockVector:
    """Coefficients over the oscillator basis |phi_0>, |phi_1>, ..."""

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex).reshape(-1)
        if c.size < 1:
            raise ValueError("FockVector needs at least one coefficient")
        if not np.all(np.isfinite(c)):
            raise ValueError("FockVector coefficients must be finite")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def dim(self) -> int:
        return self.coeffs.size

    def norm2(self) -> float:
        return float(np.vdot(self.coeffs, self.coeffs).real)


def phi_table(n_max: int, x) -> np.ndarray:
    """Rows phi_0(x) ... phi_{n_max}(x), shape (n_max+1, len(x)).

    Uses the normalized recurrence, which never forms 2^n n! and so stays
    finite for large n.
    """
    x = np.atleast_1d(np.asarray(x, dtype=float))
    out = np.empty((n_max + 1, x.size))
    out[0] = PI_M14 * np.exp(-0.5 * x * x)
    if n_max >= 1:
        out[1] = math.sqrt(2.0) * x * out[0]
    for n in range(1, n_max):
        out[n + 1] = (math.sqrt(2.0 / (n + 1)) * x * out[n]
                      - math.sqrt(n / (n + 1)) * out[n - 1])
    return out


def phi_n(n: int, x):
    """Normalized oscillator eigenfunction phi_n(x)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n > 200:
        raise ValueError("phi_n supports n <= 200")
    scalar = np.ndim(x) == 0
    val = phi_table(n, x)[n]
    return float(val[0]) if scalar else val


def phi_n_prime(n: int, x):
    """Analytic derivative phi_n'(x) = -x phi_n + sqrt(2n) phi_{n-1}."""
    if n < 0:
        raise ValueError("n must be non-negative")
    scalar = np.ndim(x) == 0
    xa = np.atleast_1d(np.asarray(x, dtype=float))
    tab = phi_table(n, xa)
    d = -xa * tab[n]
    if n > 0:
        d = d + math.sqrt(2.0 * n) * tab[n - 1]
    return float(d[0]) if scalar else d


def lowering_matrix(dim: int) -> np.ndarray:
    """Matrix of a on span{phi_0..phi_{dim-1}}."""
    return np.diag(np.sqrt(2.0 * np.arange(1, dim)), 1)


def apply_osc_ladder(v: FockVector, direction: str) -> FockVector:
    """Apply a ('lower') or a^dagger ('raise'); raising grows the vector by one."""
    c = v.coeffs
    n = np.arange(c.size)
    if direction == "lower":
        out = np.zeros(c.size, dtype=complex)
        out[:-1] = np.sqrt(2.0 * n[1:]) * c[1:]
    elif direction == "raise":
        out = np.zeros(c.size + 1, dtype=complex)
        out[1:] = np.sqrt(2.0 * (n + 1)) * c
    else:
        raise ValueError(f"unknown direction {direction!r}")
    return FockVector(out)


def glauber_coeffs(alpha: complex, dim: int) -> np.ndarray:
    k = np.arange(dim)
    # log-space factorial keeps large dims finite
    logmag = k * np.log(abs(alpha)) if alpha != 0 else np.where(k == 0, 0.0, -np.inf)
    mag = np.exp(logmag - 0.5 * np.array([math.lgamma(j + 1) for j in k]) - 0.5 * abs(alpha) ** 2)
    return mag * np.exp(1j * k * np.angle(alpha))


def glauber_state(alpha: complex, dim: int) -> FockVector:
    """Truncated Glauber state, coefficients e^{-|a|^2/2} a^k / sqrt(k!).

    Under [a, a^dagger] = 2 this is an eigenvector of a with eigenvalue
    sqrt(2) alpha.
    """
    if dim < 1:
        raise ValueError("dim must be positive")
    c = glauber_coeffs(alpha, dim)
    mass = float(np.sum(np.abs(c) ** 2))
    if mass < 1 - 1e-12:
        raise ValueError(f"dim={dim} too small for alpha={alpha}: truncated norm {mass:.3e}")
    return FockVector(c)


def x_matrix(dim: int) -> np.ndarray:
    a = lowering_matrix(dim)
    return 0.5 * (a.T + a)


def p_matrix(dim: int) -> np.ndarray:
    a = lowering_matrix(dim)
    return 0.5j * (a.T - a)
