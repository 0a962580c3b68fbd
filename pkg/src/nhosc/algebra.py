"""Ladder algebras acting on coefficient vectors.

Three algebras are supported, all expressed through their action on the
eigenvectors |psi_n> (energy 2n - 1):

natural
    A|psi_n>  = 2(n-1) sqrt(2n) |psi_{n-1}>,   A+|psi_n> = 2n sqrt(2(n+1)) |psi_{n+1}>,
    both killing |psi_0>; [A, A+] = 2(3H+1)(H+1).
distorted(w)
    C|psi_n>  = sqrt(n-2+w) |psi_{n-1}>  (n >= 2),
    C+|psi_n> = sqrt(n-1+w) |psi_{n+1}>  (n >= 1); [C, C+] = I_w.
oscillator
    a|phi_n> = sqrt(2n) |phi_{n-1}>, [a, a+] = 2.

Expectation values are contractions sum_k u_k* v_k in coefficient space.
With the bi-orthogonal pairing this is the same number whether the state
lives in the psi or the phi basis, which is why the moments below never
touch a wavefunction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

BASES = ("eigen", "oscillator")
DIRECTIONS = ("lower", "raise", "identity_op")


@dataclass(frozen=True, eq=False)
class BiState:
    """Finite superposition sum_k coeffs[k] |psi_{k + offset_r}>."""

    offset_r: int
    coeffs: np.ndarray
    basis: str = "eigen"

    def __post_init__(self):
        if int(self.offset_r) != self.offset_r or self.offset_r < 0:
            raise ValueError("offset_r must be a non-negative integer")
        if self.basis not in BASES:
            raise ValueError(f"basis must be one of {BASES}")
        c = np.array(self.coeffs, dtype=complex).reshape(-1)
        if c.size == 0:
            c = np.zeros(1, dtype=complex)
        if not np.all(np.isfinite(c)):
            raise ValueError("coefficients must be finite")
        c.setflags(write=False)
        object.__setattr__(self, "offset_r", int(self.offset_r))
        object.__setattr__(self, "coeffs", c)

    @property
    def K(self) -> int:
        return self.coeffs.size - 1

    @property
    def levels(self) -> np.ndarray:
        """Absolute level index n = k + r of every coefficient."""
        return np.arange(self.coeffs.size) + self.offset_r

    def norm2(self) -> float:
        return float(np.sum(np.abs(self.coeffs) ** 2))

    def to_dense(self, dim: int | None = None) -> np.ndarray:
        """Coefficients over levels 0..dim-1."""
        top = self.offset_r + self.coeffs.size
        dim = top if dim is None else dim
        if dim < top and np.any(self.coeffs[dim - self.offset_r:] != 0):
            raise ValueError("dim too small for populated levels")
        out = np.zeros(dim, dtype=complex)
        n = min(top, dim) - self.offset_r
        if n > 0:
            out[self.offset_r:self.offset_r + n] = self.coeffs[:n]
        return out

    @classmethod
    def from_dense(cls, v, basis: str = "eigen") -> "BiState":
        return cls(0, v, basis)

    def with_basis(self, basis: str) -> "BiState":
        return BiState(self.offset_r, self.coeffs, basis)

    def scaled(self, s: complex) -> "BiState":
        return BiState(self.offset_r, s * self.coeffs, self.basis)


def inner(u: BiState, v: BiState) -> complex:
    """<u|v> = sum_n u_n* v_n aligned on absolute level index."""
    top = max(u.offset_r + u.coeffs.size, v.offset_r + v.coeffs.size)
    return complex(np.vdot(u.to_dense(top), v.to_dense(top)))


def add(u: BiState, v: BiState, alpha: complex = 1.0, beta: complex = 1.0) -> BiState:
    top = max(u.offset_r + u.coeffs.size, v.offset_r + v.coeffs.size)
    r = min(u.offset_r, v.offset_r)
    dense = alpha * u.to_dense(top) + beta * v.to_dense(top)
    return BiState(r, dense[r:], u.basis)


@dataclass(frozen=True)
class LadderKind:
    tag: str = "natural"
    w: float = field(default=1.0)

    def __post_init__(self):
        if self.tag not in ("natural", "distorted", "oscillator"):
            raise ValueError(f"unknown ladder kind {self.tag!r}")
        if self.w < 0:
            raise ValueError("w must be non-negative")

    @classmethod
    def natural(cls):
        return cls("natural")

    @classmethod
    def distorted(cls, w: float):
        return cls("distorted", w)

    @classmethod
    def oscillator(cls):
        return cls("oscillator")


NATURAL = LadderKind("natural")
OSCILLATOR = LadderKind("oscillator")


def lowering_factor(kind: LadderKind, n: np.ndarray) -> np.ndarray:
    """Matrix element <n-1| lower |n> on absolute levels n."""
    n = np.asarray(n, dtype=float)
    if kind.tag == "natural":
        return np.where(n >= 1, 2 * (n - 1) * np.sqrt(2 * n), 0.0)
    if kind.tag == "distorted":
        return np.where(n >= 2, np.sqrt(np.maximum(n - 2 + kind.w, 0.0)), 0.0)
    return np.sqrt(2 * n)


def raising_factor(kind: LadderKind, n: np.ndarray) -> np.ndarray:
    """Matrix element <n+1| raise |n>; equals lowering_factor(n+1)."""
    return lowering_factor(kind, np.asarray(n, dtype=float) + 1)


def identity_factor(kind: LadderKind, n: np.ndarray) -> np.ndarray:
    """Diagonal of the commutator [lower, raise] on level n."""
    n = np.asarray(n, dtype=float)
    if kind.tag == "natural":
        h = 2 * n - 1
        return 2 * (3 * h + 1) * (h + 1)
    if kind.tag == "distorted":
        return np.where(n == 0, 0.0, np.where(n == 1, kind.w, 1.0))
    return np.full_like(n, 2.0)


def energy(n):
    """Eigenvalue 2n - 1 of H on |psi_n>."""
    return 2 * np.asarray(n) - 1


def apply_ladder(s: BiState, kind: LadderKind, direction: str) -> BiState:
    """Apply the lowering, raising or commutator ('identity_op') operator."""
    n = s.levels
    c = s.coeffs
    if direction == "lower":
        if s.offset_r >= 1:
            return BiState(s.offset_r - 1, lowering_factor(kind, n) * c, s.basis)
        return BiState(0, lowering_factor(kind, n[1:]) * c[1:], s.basis)
    if direction == "raise":
        return BiState(s.offset_r + 1, raising_factor(kind, n) * c, s.basis)
    if direction == "identity_op":
        return BiState(s.offset_r, identity_factor(kind, n) * c, s.basis)
    raise ValueError(f"direction must be one of {DIRECTIONS}")


def ladder_matrices(kind: LadderKind, dim: int):
    """(lower, raise, identity_op, H) as dim x dim matrices on levels 0..dim-1."""
    n = np.arange(dim)
    low = np.zeros((dim, dim))
    low[n[:-1], n[1:]] = lowering_factor(kind, n[1:])
    ident = np.diag(identity_factor(kind, n))
    h = np.diag(2.0 * n + 1 if kind.tag == "oscillator" else energy(n).astype(float))
    return low, low.T.copy(), ident, h


def commutator_check(kind: LadderKind, dim: int) -> dict:
    """Max deviation of each commutation relation on the interior block.

    Keys: 'ladder' for [lower, raise] - identity_op, 'h_lower' for
    [H, lower] + 2 lower, 'h_raise' for [H, raise] - 2 raise.  The top two
    rows and columns are dropped since truncation corrupts them.
    """
    if dim < 4:
        raise ValueError("dim must be at least 4")
    low, up, ident, h = ladder_matrices(kind, dim)
    m = dim - 2
    dev = {
        "ladder": low @ up - up @ low - ident,
        "h_lower": h @ low - low @ h + 2 * low,
        "h_raise": h @ up - up @ h - 2 * up,
    }
    return {k: float(np.max(np.abs(v[:m, :m]))) for k, v in dev.items()}


@dataclass(frozen=True)
class QuadratureMoments:
    mean_X: float
    mean_P: float
    mean_X2: float
    mean_P2: float
    bound: float

    @property
    def var_X(self) -> float:
        return self.mean_X2 - self.mean_X ** 2

    @property
    def var_P(self) -> float:
        return self.mean_P2 - self.mean_P ** 2


def quadrature_moments(s: BiState, kind: LadderKind, tol: float = 1e-10) -> QuadratureMoments:
    """Moments of X = (L+ + L)/2 and P = i(L+ - L)/2 for the chosen algebra.

    The bound is |<[L, L+]>|/4, i.e. |<(3H+1)(H+1)>|/2 for the natural
    algebra, |<I_w>|/4 for the distorted one and 1/2 for the oscillator.
    """
    nrm = s.norm2()
    if abs(nrm - 1) > tol:
        raise ValueError(f"state not normalized (norm^2 = {nrm})")
    lo = apply_ladder(s, kind, "lower")
    up = apply_ladder(s, kind, "raise")
    xs = add(up, lo, 0.5, 0.5)
    ps = add(up, lo, 0.5j, -0.5j)
    c = inner(s, apply_ladder(s, kind, "identity_op"))
    return QuadratureMoments(
        mean_X=inner(s, xs).real,
        mean_P=inner(s, ps).real,
        mean_X2=xs.norm2(),
        mean_P2=ps.norm2(),
        bound=0.25 * abs(c),
    )


def displacement_series(z: complex, w: float, dim: int, fiducial: int = 1,
                        tail_tol: float = 1e-12) -> BiState:
    """D_w(z)|psi_fiducial> via the explicit series sum_n (z C+)^n / n!.

    The fiducial state is annihilated by C_w, so exp(-z* C_w) acts as the
    identity and only exp(z C_w+) needs expanding.  ``dim`` is the number
    of series terms kept; the result is normalized.
    """
    if fiducial not in (0, 1):
        raise ValueError("fiducial must be 0 or 1 (the states killed by C_w)")
    kind = LadderKind("distorted", w)
    term = BiState(fiducial, [1.0])
    acc = np.zeros(dim, dtype=complex)
    acc[0] = 1.0
    for n in range(1, dim):
        term = apply_ladder(term, kind, "raise").scaled(z / n)
        acc[n] = term.coeffs[0]
    total = float(np.sum(np.abs(acc) ** 2))
    if total == 0:
        raise ArithmeticError("zero state")
    if fiducial == 1 and abs(acc[-1]) ** 2 > tail_tol * total:
        raise ValueError(f"dim={dim} too small: series tail exceeds {tail_tol}")
    if fiducial == 0:
        acc = acc[:1]
    return BiState(fiducial, acc / math.sqrt(total))
