"""Figure data generation.

Each figure id maps to a caption, a parameter record with its
defaults, and a builder that writes CSV (curves) and JSON (grids) files.
Output is deterministic: fixed grids, fixed summation order and numbers
written with 15 significant digits.
"""

from __future__ import annotations

import csv
import hashlib
import json
import math
import os
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.optimize import brentq

from . import metrics as M
from . import states as S
from .algebra import LadderKind

CURVE_POINTS = 201
GRID_POINTS = 161


def fmt(v) -> str:
    v = float(v)
    if math.isnan(v):
        return "nan"
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return f"{v:.15g}"


def _clean(obj):
    """Round floats to 15 significant digits for JSON output (NaN -> None)."""
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _clean(obj.tolist())
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, (np.integer, int)):
        return int(obj)
    if isinstance(obj, (np.floating, float)):
        v = float(obj)
        return None if not math.isfinite(v) else float(f"{v:.15g}")
    if isinstance(obj, complex):
        return [_clean(obj.real), _clean(obj.imag)]
    return obj


class Writer:
    """Collects output files and their SHA-256 checksums."""

    def __init__(self, out_dir: str, svg: bool = False):
        self.out_dir = out_dir
        self.svg = svg
        self.files: list[str] = []
        self.summary: dict = {}
        os.makedirs(out_dir, exist_ok=True)

    def _path(self, name):
        self.files.append(name)
        return os.path.join(self.out_dir, name)

    def csv(self, name: str, header: list[str], columns: list) -> None:
        cols = [np.asarray(c) for c in columns]
        with open(self._path(name), "w", newline="") as fh:
            wr = csv.writer(fh, lineterminator="\n")
            wr.writerow(header)
            for row in zip(*cols):
                wr.writerow([fmt(v) for v in row])

    def json(self, name: str, obj) -> None:
        with open(self._path(name), "w") as fh:
            json.dump(_clean(obj), fh, indent=1, sort_keys=True)
            fh.write("\n")

    def heatmap(self, name: str, x, y, values, title: str = "") -> None:
        if not self.svg:
            return
        import matplotlib
        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
        matplotlib.rcParams["svg.hashsalt"] = "nhosc"
        fig, ax = plt.subplots(figsize=(4, 3.4))
        im = ax.pcolormesh(x, y, values, shading="auto")
        fig.colorbar(im, ax=ax)
        ax.set_title(title, fontsize=8)
        fig.tight_layout()
        fig.savefig(self._path(name), metadata={"Date": None})
        plt.close(fig)

    def checksums(self) -> dict:
        out = {}
        for name in self.files:
            with open(os.path.join(self.out_dir, name), "rb") as fh:
                out[name] = hashlib.sha256(fh.read()).hexdigest()
        return out


@dataclass
class Figure:
    fid: str
    caption: str
    defaults: dict
    build: Callable[[dict, Writer], None] = field(repr=False)


FIGURES: dict[str, Figure] = {}


def figure(fid: str, caption: str, **defaults):
    def deco(fn):
        FIGURES[fid] = Figure(fid, caption, defaults, fn)
        return fn
    return deco


def _lin(lo, hi, n):
    return np.linspace(float(lo), float(hi), int(n))


def _q_or_nan(s):
    try:
        return M.mandel_q(s)
    except ValueError:
        return float("nan")


def _wigner_json(w: Writer, name: str, s, half_width: float, n: int, label: dict):
    axis = _lin(-half_width, half_width, n)
    g = M.wigner(s.with_basis("oscillator"), axis, axis)
    w.json(name, {"label": label, "x_axis": axis, "p_axis": axis,
                  "values": g.values, "integral": g.integral(),
                  "min": float(g.values.min()), "max": float(g.values.max()),
                  "layout": "values[i][j] = W(x_axis[j], p_axis[i])"})
    w.heatmap(name.replace(".json", ".svg"), axis, axis, g.values, str(label))
    return g


def _map_json(w: Writer, name: str, grid: M.PhaseSpaceGrid, label: dict):
    w.json(name, {"label": label, "re_axis": grid.re_axis, "im_axis": grid.im_axis,
                  "classification": grid.values.tolist(), "U1": grid.U1, "U2": grid.U2,
                  "counts": grid.counts(),
                  "layout": "entry[i][j] is z = re_axis[j] + i im_axis[i]"})
    if w.svg:
        code = {"none": 0, "A_squeezed": 1, "B_squeezed": 2, "minimal": 3, "undefined": -1}
        w.heatmap(name.replace(".json", ".svg"), grid.re_axis, grid.im_axis,
                  np.vectorize(code.get)(grid.values).astype(float), str(label))


# --- binomial states ----------------------------------------------------

@figure("VB", "Distorted-quadrature variances of optimized binomial states, K=10, rows r=0,2",
        K=10, r=[0, 2], w=[0, 1, 5], n_points=CURVE_POINTS)
def _vb(p, w):
    eta = _lin(0, 1, p["n_points"])
    for r in p["r"]:
        for ww in p["w"]:
            reps = [M.binomial_closed_form(p["K"], e, r, ww) for e in eta]
            w.csv(f"VB_r{r}_w{fmt(ww)}.csv",
                  ["eta", "E_b", "var_X", "var_P", "bound", "bound_literal", "U1", "U2"],
                  [eta, [S.binomial_mean_energy(p["K"], e, r) for e in eta],
                   [x.var_A for x in reps], [x.var_B for x in reps], [x.bound for x in reps],
                   [x.extra["bound_literal"] for x in reps], [x.U1 for x in reps],
                   [x.U2 for x in reps]])


@figure("WB", "Wigner functions of optimized binomial states, K=10, E_b=9",
        K=10, cases=[[0.5, 0], [0.4, 1], [0.3, 2]], half_width=7.0, n_grid=GRID_POINTS)
def _wb(p, w):
    out = {}
    for eta, r in p["cases"]:
        s = S.binomial(p["K"], eta, int(r))
        g = _wigner_json(w, f"WB_eta{fmt(eta)}_r{int(r)}.json", s, p["half_width"], p["n_grid"],
                         {"K": p["K"], "eta": eta, "r": r, "E_b": S.mean_energy(s)})
        out[f"eta={fmt(eta)},r={int(r)}"] = {"min": float(g.values.min()), "integral": g.integral()}
    w.summary["wigner"] = out


@figure("QB", "Mandel parameter of optimized binomial states vs eta, K=10, r=0,1,2",
        K=10, r=[0, 1, 2], n_points=CURVE_POINTS)
def _qb(p, w):
    eta = _lin(0, 1, p["n_points"])
    cols, head = [eta], ["eta"]
    for r in p["r"]:
        cols.append([_q_or_nan(S.binomial(p["K"], e, r).with_basis("oscillator")) for e in eta])
        head.append(f"Q_r{r}")
    w.csv("QB.csv", head, cols)
    w.summary["Q_at_eta1"] = {h: float(c[-1]) for h, c in zip(head[1:], cols[1:])}


def _purity_T(s, T, phi=0.0):
    return M.beamsplitter_purity(M.PurityInputs(s.with_basis("oscillator"), float(T), phi))


@figure("PuB1", "Purity vs transmission T for binomial states, K=10, E_b=9",
        K=10, cases=[[0.5, 0], [0.4, 1], [0.3, 2]], n_points=CURVE_POINTS, phi=0.0)
def _pub1(p, w):
    T = _lin(0, 1, p["n_points"])
    cols, head, argmax = [T], ["T"], {}
    for eta, r in p["cases"]:
        s = S.binomial(p["K"], eta, int(r))
        vals = np.array([_purity_T(s, t, p["phi"]) for t in T])
        cols.append(vals)
        name = f"S_eta{fmt(eta)}_r{int(r)}"
        head.append(name)
        argmax[name] = float(T[int(np.argmax(vals))])
    w.csv("PuB1.csv", head, cols)
    w.summary["argmax_T"] = argmax


@figure("PuB2", "Purity vs eta at T=sqrt(0.5) for binomial states, K=10, r=0,1,2",
        K=10, r=[0, 1, 2], T=math.sqrt(0.5), n_points=CURVE_POINTS)
def _pub2(p, w):
    eta = _lin(0, 1, p["n_points"])
    cols, head = [eta], ["eta"]
    for r in p["r"]:
        cols.append([_purity_T(S.binomial(p["K"], e, r), p["T"]) for e in eta])
        head.append(f"S_r{r}")
    w.csv("PuB2.csv", head, cols)


# --- Poisson and photon-added states ------------------------------------

@figure("VP", "Distorted-quadrature variances of optimized Poisson states, rows r=1,2",
        r=[1, 2], w=[0, 1, 5], z_max=5.0, n_points=CURVE_POINTS)
def _vp(p, w):
    z = _lin(0, p["z_max"], p["n_points"])
    for r in p["r"]:
        for ww in p["w"]:
            kind = LadderKind("distorted", ww)
            reps = [M.variance_oracle(S.poisson(zz, r), kind) for zz in z]
            w.csv(f"VP_r{r}_w{fmt(ww)}.csv", ["z", "var_X", "var_P", "bound", "U1", "U2"],
                  [z, [x.var_A for x in reps], [x.var_B for x in reps], [x.bound for x in reps],
                   [x.U1 for x in reps], [x.U2 for x in reps]])


@figure("QP", "Mandel parameter of optimized Poisson states vs real z, r=0,1,2",
        r=[0, 1, 2], z_max=5.0, n_points=CURVE_POINTS)
def _qp(p, w):
    z = _lin(0, p["z_max"], p["n_points"])
    cols, head = [z], ["z"]
    for r in p["r"]:
        cols.append([_q_or_nan(S.poisson(zz, r)) for zz in z])
        head.append(f"Q_r{r}")
    w.csv("QP.csv", head, cols)


@figure("WP", "Wigner functions of optimized Poisson states, E_b=9: |z|=sqrt5 r=0, 2 r=1, sqrt3 r=2",
        E_b=9, r=[0, 1, 2], half_width=7.0, n_grid=GRID_POINTS)
def _wp(p, w):
    for r in p["r"]:
        zz = S.poisson_radius(p["E_b"], r)
        _wigner_json(w, f"WP_r{r}.json", S.poisson(zz, r), p["half_width"], p["n_grid"],
                     {"E_b": p["E_b"], "r": r, "z": zz})


def photon_added_alpha_for_energy(E_b: float, r: int) -> float:
    """|alpha| giving the photon-added state mean energy E_b."""
    f = lambda a: S.mean_energy(S.photon_added(a, r)) - E_b
    if f(0.0) > 0:
        raise ValueError("E_b below the photon-added ground value 2r - 1")
    hi = 1.0
    while f(hi) < 0:
        hi *= 2
    return brentq(f, 0.0, hi, xtol=1e-14)


@figure("PuP", "Purity of photon-added vs Poisson states: (a) E_b=9 vs T, r=2,4; (b) T=sqrt(0.5) vs z, r=4,6",
        E_b=9, r_a=[2, 4], r_b=[4, 6], T_b=math.sqrt(0.5), z_max=3.0, n_points=CURVE_POINTS)
def _pup(p, w):
    T = _lin(0, 1, p["n_points"])
    cols, head, alphas = [T], ["T"], {}
    for r in p["r_a"]:
        a = photon_added_alpha_for_energy(p["E_b"], r)
        alphas[f"r{r}"] = a
        pa = S.photon_added(a, r)
        po = S.poisson(S.poisson_radius(p["E_b"], r), r)
        cols += [[_purity_T(pa, t) for t in T], [_purity_T(po, t) for t in T]]
        head += [f"S_photon_added_r{r}", f"S_poisson_r{r}"]
    w.csv("PuP_a.csv", head, cols)
    z = _lin(0, p["z_max"], p["n_points"])
    cols, head = [z], ["z"]
    for r in p["r_b"]:
        cols += [[_purity_T(S.photon_added(zz, r), p["T_b"]) for zz in z],
                 [_purity_T(S.poisson(zz, r), p["T_b"]) for zz in z]]
        head += [f"S_photon_added_r{r}", f"S_poisson_r{r}"]
    w.csv("PuP_b.csv", head, cols)
    w.summary["photon_added_alpha"] = alphas


# --- natural coherent states --------------------------------------------

@figure("LEN", "Natural coherent states: (a) purity vs |z| for T^2=0.1,0.3,0.5; (b) Mandel Q",
        T=[math.sqrt(0.1), math.sqrt(0.3), math.sqrt(0.5)], z_max=10.0, n_points=CURVE_POINTS)
def _len(p, w):
    z = _lin(0, p["z_max"], p["n_points"])
    sts = [S.natural_coherent(zz) for zz in z]
    cols, head = [z], ["z"]
    for t in p["T"]:
        cols.append([_purity_T(s, t) for s in sts])
        head.append(f"S_T2_{fmt(round(t * t, 12))}")
    w.csv("LEN_a.csv", head, cols)
    w.csv("LEN_b.csv", ["z", "Q"], [z, [_q_or_nan(s) for s in sts]])


@figure("SqN", "Squeezing regions of physical quadratures for natural coherent states",
        half_width=10.0, n_grid=GRID_POINTS)
def _sqn(p, w):
    ax = _lin(-p["half_width"], p["half_width"], p["n_grid"])
    g = squeeze_map_safe("natural_coherent", "physical", ax, ax)
    _map_json(w, "SqN_map.json", g, {"family": "natural_coherent", "quadratures": "physical"})
    rad = M.no_squeeze_radius("natural_coherent", "physical")
    w.summary["no_squeeze_radius"] = rad
    w.summary["radius_in_4_6"] = bool(4 <= rad <= 6)
    w.json("SqN_summary.json", {"no_squeeze_radius_real_axis": rad,
                                "bisection_width": 0.05})


@figure("WN", "Wigner functions of natural coherent states, z = 0, 30, 30i",
        z=[[0, 0], [30, 0], [0, 30]], half_width=8.0, n_grid=GRID_POINTS)
def _wn(p, w):
    for zr, zi in p["z"]:
        z = complex(zr, zi)
        _wigner_json(w, f"WN_z{fmt(zr)}_{fmt(zi)}.json", S.natural_coherent(z), p["half_width"],
                     p["n_grid"], {"z": z})


def squeeze_map_safe(family, quadratures, re_axis, im_axis, w=1.0, parity=1):
    """squeeze_map with cells where the closed form is undefined marked 'undefined'."""
    with np.errstate(divide="ignore", invalid="ignore"):
        g = M.squeeze_map(family, quadratures, re_axis, im_axis, w, parity)
    bad = ~(np.isfinite(g.U1) & np.isfinite(g.U2))
    if bad.any():
        vals = g.values.copy()
        vals[bad] = "undefined"
        g = M.PhaseSpaceGrid(g.re_axis, g.im_axis, vals, g.U1, g.U2)
    return g


@figure("CatN1", "Natural cats: (a) Mandel Q vs |z|; (b) squeezing regions of natural quadratures",
        z_max=16.0, n_points=CURVE_POINTS, half_width=16.0, n_grid=GRID_POINTS)
def _catn1(p, w):
    z = _lin(0, p["z_max"], p["n_points"])
    q_even = [_q_or_nan(S.cat_natural(zz, 1)) for zz in z]
    q_odd = [_q_or_nan(S.cat_natural(zz, -1)) if zz > 0 else float("nan") for zz in z]
    w.csv("CatN1_a.csv", ["z", "Q_even", "Q_odd"], [z, q_even, q_odd])
    ax = _lin(-p["half_width"], p["half_width"], p["n_grid"])
    for name, parity in (("even", 1), ("odd", -1)):
        g = squeeze_map_safe("cat_natural", "natural", ax, ax, parity=parity)
        _map_json(w, f"CatN1_b_{name}.json", g, {"family": "cat_natural", "parity": parity})
    inter = M.cat_natural_interlacing(p["z_max"])
    w.json("CatN1_intervals.json", inter)
    w.summary["real_axis_intervals"] = inter


@figure("CatN2", "Wigner functions of even and odd natural cats, theta=0, |z|=1,3,5",
        z=[1.0, 3.0, 5.0], half_width=8.0, n_grid=GRID_POINTS)
def _catn2(p, w):
    for zz in p["z"]:
        for name, parity in (("even", 1), ("odd", -1)):
            _wigner_json(w, f"CatN2_{name}_z{fmt(zz)}.json", S.cat_natural(zz, parity),
                         p["half_width"], p["n_grid"], {"z": zz, "parity": parity})


# --- distorted coherent states ------------------------------------------

@figure("Sqw", "Distorted coherent states: (a) Mandel Q vs |z|, w=1,5,20; (b) squeezing regions at w=20",
        w=[1.0, 5.0, 20.0], z_max=10.0, n_points=CURVE_POINTS, map_w=20.0, half_width=10.0,
        n_grid=GRID_POINTS)
def _sqw(p, w):
    z = _lin(0, p["z_max"], p["n_points"])
    cols, head = [z], ["z"]
    for ww in p["w"]:
        cols.append([_q_or_nan(S.distorted_coherent(zz, ww)) for zz in z])
        head.append(f"Q_w{fmt(ww)}")
    w.csv("Sqw_a.csv", head, cols)
    ax = _lin(-p["half_width"], p["half_width"], p["n_grid"])
    g = squeeze_map_safe("distorted_coherent", "physical", ax, ax, w=p["map_w"])
    _map_json(w, "Sqw_b_map.json", g, {"family": "distorted_coherent", "w": p["map_w"]})


@figure("Quadw", "Squeezing regions of distorted quadratures for the even distorted cat, w=20",
        w=20.0, half_width=10.0, n_grid=GRID_POINTS)
def _quadw(p, w):
    ax = _lin(-p["half_width"], p["half_width"], p["n_grid"])
    g = squeeze_map_safe("cat_distorted", "distorted", ax, ax, w=p["w"], parity=1)
    _map_json(w, "Quadw_map.json", g, {"family": "cat_distorted", "w": p["w"], "parity": 1})


def _axis_curves(w: Writer, prefix: str, family: str, quadratures: str, ws, t):
    cols_re, cols_im, head = [t], [t], ["t"]
    for ww in ws:
        U1r, U2r, _ = M.u_closed_form(family, quadratures, t + 0j, ww, 1)
        U1i, U2i, _ = M.u_closed_form(family, quadratures, 1j * t, ww, 1)
        cols_re += [np.real(U1r), np.real(U2r)]
        cols_im += [np.real(U1i), np.real(U2i)]
        head += [f"U1_w{fmt(ww)}", f"U2_w{fmt(ww)}"]
    w.csv(f"{prefix}_real_axis.csv", head, cols_re)
    w.csv(f"{prefix}_imag_axis.csv", head, cols_im)


@figure("Catw", "U functions of physical quadratures for the even distorted cat, w=1,5,20",
        w=[1.0, 5.0, 20.0], z_max=6.0, n_points=CURVE_POINTS)
def _catw(p, w):
    _axis_curves(w, "Catw", "cat_distorted", "physical", p["w"], _lin(0, p["z_max"], p["n_points"]))


@figure("WCatw1", "Wigner functions of even and odd distorted cats, w=1,5, |z|=1,2,3",
        w=[1.0, 5.0], z=[1.0, 2.0, 3.0], half_width=8.5, n_grid=GRID_POINTS)
def _wcatw1(p, w):
    for ww in p["w"]:
        for zz in p["z"]:
            for name, parity in (("even", 1), ("odd", -1)):
                _wigner_json(w, f"WCatw1_w{fmt(ww)}_{name}_z{fmt(zz)}.json",
                             S.cat_distorted(zz, ww, parity), p["half_width"], p["n_grid"],
                             {"w": ww, "z": zz, "parity": parity})


@figure("CatD", "U functions of distorted quadratures for the even displaced cat, w=1,5,20",
        w=[1.0, 5.0, 20.0], z_max=4.0, n_points=CURVE_POINTS)
def _catd(p, w):
    t = _lin(0, p["z_max"], p["n_points"])
    _axis_curves(w, "CatD", "cat_displaced", "distorted", p["w"], t)
    sq = {}
    for ww in p["w"]:
        cls = []
        for z in np.concatenate([t + 0j, 1j * t]):
            U1, U2, _ = M.u_closed_form("cat_displaced", "distorted", np.array([z]), ww, 1)
            cls.append(M.classify(np.real(U1[0]), np.real(U2[0])))
        sq[f"w={fmt(ww)}"] = int(sum(c in ("A_squeezed", "B_squeezed") for c in cls))
    w.summary["squeezed_axis_samples"] = sq


FIGURE_IDS = tuple(FIGURES)


def parse_value(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        return text


def run_figure(fid: str, out_dir: str = ".", overrides: dict | None = None,
               svg: bool = False) -> dict:
    """Write the data files of figure ``fid`` and its manifest; return the manifest."""
    if fid not in FIGURES:
        raise KeyError(f"unknown figure id {fid!r}; choose from {', '.join(FIGURE_IDS)}")
    fig = FIGURES[fid]
    params = dict(fig.defaults)
    for k, v in (overrides or {}).items():
        if k not in params:
            raise KeyError(f"figure {fid} has no parameter {k!r} (known: {', '.join(params)})")
        params[k] = v
    w = Writer(os.path.join(out_dir, fid), svg)
    fig.build(params, w)
    manifest = {"figure_id": fid, "caption": fig.caption, "parameters": params,
                "files": list(w.files), "checksums": w.checksums(), "summary": w.summary}
    with open(os.path.join(w.out_dir, "manifest.json"), "w") as fh:
        json.dump(_clean(manifest), fh, indent=1, sort_keys=True)
        fh.write("\n")
    return _clean(manifest)
