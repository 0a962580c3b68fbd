"""Self-test suites run by ``nhosc selftest``.

Every check records its tolerance and the observed deviation so the JSON
report can be read without rerunning anything.  The quick level trims the
sweeps; the full level runs them at the sizes used by the acceptance suite.
"""

from __future__ import annotations

import math
import time
from dataclasses import asdict, dataclass

import numpy as np
from scipy import special

from . import algebra as A
from . import metrics as M
from . import states as S
from .eigensystem import (GridSpec, ModelParams, biorthonormality_matrix,
                          eigen_residual)
from .specfun import hyp_pfq


@dataclass
class CheckResult:
    name: str
    tolerance: float
    observed: float
    passed: bool
    seconds: float


def _run(name, tol, fn) -> CheckResult:
    t0 = time.perf_counter()
    try:
        obs = float(fn())
    except Exception:  # a crash is a failed check, not a crashed selftest
        obs = math.nan
    return CheckResult(name, tol, obs, bool(obs <= tol), time.perf_counter() - t0)


def reference_params() -> ModelParams:
    return ModelParams.from_abc(2.0, 2.0, 1.0)


def _biortho(n_max, n_points):
    m = biorthonormality_matrix(reference_params(), n_max, GridSpec(-12, 12, n_points))
    return np.max(np.abs(m - np.eye(n_max + 1)))


def _residual(n_max, n_points):
    g = GridSpec(-12, 12, n_points)
    return max(eigen_residual(reference_params(), n, g) for n in range(n_max + 1))


def _commutators():
    kinds = [A.NATURAL, A.OSCILLATOR] + [A.LadderKind.distorted(w) for w in (0.5, 1, 5, 20)]
    return max(max(A.commutator_check(k, 16).values()) for k in kinds)


def _eigen_dev(s, kind, z):
    lo = A.apply_ladder(s, kind, "lower")
    d = A.add(lo, s, 1, -z)
    return float(np.max(np.abs(d.coeffs[:-3])))


def _coherent():
    z = 1.3 * np.exp(1j * math.pi / 5)
    dev = _eigen_dev(S.natural_coherent(z, 60), A.NATURAL, z)
    for w in (0.5, 1, 5, 20):
        dev = max(dev, _eigen_dev(S.distorted_coherent(z, w, 60), A.LadderKind.distorted(w), z))
        ser = A.displacement_series(z, w, 60)
        dev = max(dev, np.max(np.abs(ser.coeffs - S.displaced_coherent(z, w, 60).coeffs)))
    return dev


def _hypergeometric(n):
    rng = np.random.default_rng(7)
    dev = 0.0
    for _ in range(n):
        a, b = rng.uniform(0.2, 6, 2)
        x = rng.uniform(-10, 20)
        ref = special.hyp1f1(a, b, x)
        dev = max(dev, abs(hyp_pfq([a], [b], x) - ref) / max(1.0, abs(ref)))
        ref0 = special.hyp0f1(b, x)
        dev = max(dev, abs(hyp_pfq([], [b], x) - ref0) / max(1.0, abs(ref0)))
    return dev


def _mean_energy(n):
    rng = np.random.default_rng(11)
    dev = abs(S.binomial_mean_energy(10, 0.5, 0) - 9)
    for _ in range(n):
        K, r = int(rng.integers(1, 20)), int(rng.integers(0, 6))
        eta = float(rng.uniform(0, 1))
        dev = max(dev, abs(S.binomial_mean_energy(K, eta, r) - S.mean_energy(S.binomial(K, eta, r))))
    return dev


def _mandel():
    dev = max(abs(M.mandel_q(S.photon_added(a, 0, 80))) for a in (0.5, 1.0, 2.0))
    for eta in (0.1, 0.5, 0.9):
        dev = max(dev, abs(M.mandel_q(S.binomial(10, eta, 0)) + eta))
    dev = max(dev, abs(M.mandel_q(A.BiState(3, [1.0])) + 1))
    return dev


def _purity(Ks, rs, Ts):
    rng = np.random.default_rng(3)
    dev = 0.0
    for K in Ks:
        for r in rs:
            c = rng.normal(size=K + 1) + 1j * rng.normal(size=K + 1)
            s = A.BiState(r, c / np.linalg.norm(c), "oscillator")
            for T in Ts:
                inp = M.PurityInputs(s, T, float(rng.uniform(0, 2 * math.pi)))
                dev = max(dev, abs(M.beamsplitter_purity(inp) - M.beamsplitter_purity_oracle(inp)))
    return dev


def variance_sweep(n: int, seed: int = 5) -> float:
    """Max |closed form - operator oracle| over every closed-form family."""
    rng = np.random.default_rng(seed)
    dev = 0.0
    for fam, quad in sorted(M.CLOSED_FORMS):
        for _ in range(n):
            if fam == "binomial":
                K, r = int(rng.integers(1, 15)), int(rng.integers(0, 5))
                eta, w = float(rng.uniform(0, 1)), float(rng.uniform(0, 10))
                cf = M.binomial_closed_form(K, eta, r, w)
                ref = M.variance_oracle(S.binomial(K, eta, r), A.LadderKind.distorted(w))
            else:
                z = complex(*rng.uniform(-2, 2, 2))
                w = float(rng.uniform(0.3, 10))
                par = int(rng.choice([1, -1]))
                params = {"z": [z.real, z.imag], "w": w, "parity": par}
                spec = S.FamilySpec(fam, params, 160)
                cf = M.variance_closed_form(spec, quad)
                ref = M.variance_oracle(S.make_state(spec), M.family_kind(spec, quad))
            dev = max(dev, abs(cf.U1 - ref.U1), abs(cf.U2 - ref.U2), abs(cf.bound - ref.bound))
    return dev


def _wigner():
    ax = np.linspace(-6, 6, 81)
    g = M.wigner(A.BiState(1, [1.0], "oscillator"), np.array([0.0]), np.array([0.0]))
    dev = abs(g.values[0, 0] + 1 / math.pi)
    s = S.binomial(10, 0.4, 1).with_basis("oscillator")
    g = M.wigner(s, ax, ax)
    dev = max(dev, abs(g.integral() - 1))
    return dev


def run_selftest(full: bool = False) -> dict:
    """Run the suites; returns {level, passed, checks: [...]}."""
    n_max, pts = (8, 4001) if full else (4, 4001)
    sweep = 50 if full else 8
    checks = [
        _run(f"biorthonormality n<={n_max} grid {pts}", 1e-6, lambda: _biortho(n_max, pts)),
        _run(f"eigen_residual n<={n_max} grid {pts}", 1e-5, lambda: _residual(n_max, pts)),
        _run("commutators dim 16", 1e-10, _commutators),
        _run("coherent eigenrelations and displacement series", 1e-10, _coherent),
        _run("hypergeometric series vs scipy", 1e-10, lambda: _hypergeometric(sweep)),
        _run("binomial mean energy closed form", 1e-12, lambda: _mean_energy(sweep)),
        _run("Mandel anchors", 1e-8, _mandel),
        _run("purity formula vs two-mode oracle", 1e-10,
             lambda: _purity(range(0, 13, 1 if full else 4), range(0, 5 if full else 3),
                             (0.2, math.sqrt(0.5), 0.9))),
        _run("variance closed forms vs oracle", 1e-8, lambda: variance_sweep(sweep)),
        _run("Wigner anchors", 1e-3, _wigner),
    ]
    return {"level": "full" if full else "quick",
            "passed": all(c.passed for c in checks),
            "checks": [asdict(c) for c in checks]}
