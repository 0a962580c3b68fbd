"""Special functions used throughout the package.

Hermite polynomials, rising Pochhammer symbols and generalized
hypergeometric series ``pFq`` evaluated by direct power series with
compensated summation.  Also the four auxiliary series that appear in the
variance formulas of the distorted and displaced coherent states.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy import special


class SeriesError(ArithmeticError):
    """Raised when a series cannot be evaluated to the requested tolerance."""


@dataclass(frozen=True)
class SeriesControl:
    """Truncation policy for power series.

    A series stops once the current term is below ``rel_tol`` times the
    running sum of absolute values and the terms have started to decrease.
    Hitting ``max_terms`` first is an error, never a silent truncation.
    """

    max_terms: int = 10000
    rel_tol: float = 1e-14

    def __post_init__(self):
        if int(self.max_terms) != self.max_terms or self.max_terms < 1:
            raise ValueError("max_terms must be a positive integer")
        if not self.rel_tol > 0:
            raise ValueError("rel_tol must be positive")


DEFAULT_CONTROL = SeriesControl()


def erf(x):
    """Error function (scalar or array)."""
    return special.erf(x)


def hermite_h(n: int, x):
    """Physicists' Hermite polynomial h_n(x) by three-term recurrence."""
    if n < 0:
        raise ValueError("n must be non-negative")
    x = np.asarray(x, dtype=float)
    h_prev = np.ones_like(x)
    if n == 0:
        return h_prev if h_prev.ndim else float(h_prev)
    h = 2.0 * x
    for k in range(1, n):
        h_prev, h = h, 2.0 * x * h - 2.0 * k * h_prev
    return h if h.ndim else float(h)


def pochhammer(w: float, k: int) -> float:
    """Rising factorial (w)_k = w (w+1) ... (w+k-1)."""
    if k < 0:
        raise ValueError("k must be non-negative")
    out = 1.0
    for j in range(k):
        out *= w + j
    return out


def _is_nonpositive_int(b: float) -> bool:
    return b <= 0 and float(b).is_integer()


def ratio_series(t0, ratio: Callable[[int, np.ndarray], np.ndarray], x,
                 ctrl: SeriesControl | None = None):
    """Sum ``t0 + t1 + ...`` where ``t_{n+1} = t_n * ratio(n, x)``.

    Works elementwise on array ``x``.  Neumaier summation keeps the rounding
    error independent of the number of terms, which matters for the
    alternating series met with negative arguments.
    """
    ctrl = ctrl or DEFAULT_CONTROL
    x = np.asarray(x, dtype=float)
    scalar = x.ndim == 0
    x = np.atleast_1d(x)
    term = np.broadcast_to(np.asarray(t0, dtype=float), x.shape).astype(float)
    total = term.copy()
    comp = np.zeros_like(total)
    abs_sum = np.abs(term)
    prev_abs = np.abs(term)
    done = np.zeros(x.shape, dtype=bool)
    for n in range(ctrl.max_terms):
        if done.all():
            break
        term = term * ratio(n, x)
        # Neumaier step
        t = total + term
        big = np.abs(total) >= np.abs(term)
        comp += np.where(big, (total - t) + term, (term - t) + total)
        total = t
        a = np.abs(term)
        abs_sum = abs_sum + a
        done |= (a <= ctrl.rel_tol * abs_sum) & (a <= prev_abs)
        prev_abs = a
    else:
        if not done.all():
            raise SeriesError(
                f"series did not reach rel_tol={ctrl.rel_tol} in {ctrl.max_terms} terms")
    out = total + comp
    if not np.all(np.isfinite(out)):
        raise SeriesError("series overflowed")
    return float(out[0]) if scalar else out


def hyp_pfq(numerators: Sequence[float], denominators: Sequence[float], x,
            ctrl: SeriesControl | None = None):
    """Generalized hypergeometric series pFq(a; b; x) for real x.

    Parameters
    ----------
    numerators, denominators : sequences of float
        Upper parameters a_i and lower parameters b_j.
    x : float or ndarray
        Real argument; negative values give an alternating series.
    ctrl : SeriesControl, optional
        Truncation policy, defaults to rel_tol 1e-14 and 10000 terms.
    """
    a = [float(v) for v in numerators]
    b = [float(v) for v in denominators]
    for bj in b:
        if _is_nonpositive_int(bj):
            raise ValueError(f"denominator parameter {bj} is a non-positive integer")
    if len(a) > len(b) + 1:
        raise ValueError("divergent series: p > q + 1")

    def ratio(n, xx):
        num = 1.0
        for ai in a:
            num *= ai + n
        den = float(n + 1)
        for bj in b:
            den *= bj + n
        return xx * (num / den)

    if len(a) == 1 and len(b) == 1:
        # Kummer: 1F1(a;b;x) = e^x 1F1(b-a;b;-x) avoids cancellation for x < 0
        xs = np.asarray(x, dtype=float)
        if np.any(xs < 0):
            neg = xs < 0
            out = np.empty(xs.shape)
            if np.any(~neg):
                out[~neg] = ratio_series(1.0, ratio, xs[~neg], ctrl)
            out[neg] = np.exp(xs[neg]) * hyp_pfq([b[0] - a[0]], b, -xs[neg], ctrl)
            return out if xs.ndim else float(out)

    return ratio_series(1.0, ratio, x, ctrl)


# Auxiliary series of the variance formulas.  Each is written as a ratio
# series; the leading term and term ratio follow from the defining sums.

def series_f1(w: float, x, ctrl=None):
    """f1(w, x) = sum_n x^n sqrt((n+2) / ((w)_n (w)_{n+1}))."""
    def ratio(n, xx):
        return xx * math.sqrt((n + 3) / ((n + 2) * (w + n) * (w + n + 1)))
    return ratio_series(math.sqrt(2.0 / w), ratio, x, ctrl)


def series_f2(w: float, x, ctrl=None):
    """f2(w, x) = sum_n x^n sqrt((n+2)(n+3) / ((w)_n (w)_{n+2}))."""
    def ratio(n, xx):
        return xx * math.sqrt((n + 4) / (n + 2)) / math.sqrt((w + n) * (w + n + 2))
    return ratio_series(math.sqrt(6.0 / (w * (w + 1))), ratio, x, ctrl)


def series_h1(w: float, x, ctrl=None):
    """h1(w, x) = sum_n x^n/n! sqrt((w)_n (w)_{n+1} (n+2)) / (n+1)!."""
    def ratio(n, xx):
        return xx / (n + 1) * math.sqrt((w + n) * (w + n + 1) * (n + 3) / (n + 2)) / (n + 2)
    return ratio_series(math.sqrt(2.0 * w), ratio, x, ctrl)


def series_h2(w: float, x, ctrl=None):
    """h2(w, x) = sum_n x^n/n! sqrt((w)_n (w)_{n+2} (n+2)(n+3)) / (n+2)!."""
    def ratio(n, xx):
        return xx / (n + 1) * math.sqrt((w + n) * (w + n + 2) * (n + 4) / (n + 2)) / (n + 3)
    return ratio_series(math.sqrt(6.0 * w * (w + 1)) / 2.0, ratio, x, ctrl)
