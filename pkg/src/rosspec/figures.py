"""Figure rendering for the CLI report paths.

Each renderer takes already-computed results and writes one PNG next to
the delimited output; nothing here feeds back into the numbers.  The Agg
backend is forced so rendering works headless.
"""
from __future__ import annotations

from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)
import numpy as np  # noqa: E402

from .ball import PropositionReport
from .compare import TheoremReport
from .sturm import EigenResult

_DPI = 150


def _save(fig, path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)
    return path


def render_eig(res: EigenResult, path: Path) -> Path:
    prof = res.profile
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    ax.plot(prof.grid, prof.values, label="profile")
    ax.plot(prof.grid, prof.derivs, label="derivative", alpha=0.7)
    ax.axhline(0.0, color="gray", lw=0.6)
    ax.set_xlabel("r")
    ax.set_title(
        f"{res.problem.space.label()}  ell={res.ell} index={res.index}  "
        f"lambda={res.lam:.6g}"
    )
    ax.legend()
    return _save(fig, path)


def render_steklov(radii: Sequence[float], sigma_r: Sequence[float],
                   R: float, path: Path) -> Path:
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    ax.semilogx(radii, sigma_r, marker="o")
    ax.axhline(1.0, color="gray", lw=0.8, ls="--", label="small-radius limit")
    ax.axvline(R, color="tab:red", lw=0.8, ls=":", label=f"R = {R:g}")
    ax.set_xlabel("R")
    ax.set_ylabel("sigma1 * R")
    ax.set_title("first Steklov eigenvalue, scaled by radius")
    ax.legend()
    return _save(fig, path)


def render_check(reports: Sequence[PropositionReport], path: Path) -> Path:
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    alphas = [rep.alpha for rep in reports]
    names = [e.name for e in reports[0].entries]
    for pos, name in enumerate(names):
        margins = [rep.entries[pos].margin for rep in reports]
        ax.plot(alphas, margins, marker="o", ms=3, label=name)
    ax.set_yscale("symlog", linthresh=1e-8)
    ax.axhline(0.0, color="gray", lw=0.6)
    ax.set_xlabel("alpha")
    ax.set_ylabel("margin")
    rep = reports[0]
    ax.set_title(f"structural check margins, {rep.space.label()} R={rep.R:g}")
    ax.legend(fontsize=7)
    return _save(fig, path)


def render_verify(rep: TheoremReport, path: Path) -> Path:
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9.6, 4.0))
    asym = np.array([row.asymmetry for row in rep.rows])
    gaps = np.array([row.gap for row in rep.rows])
    ax1.loglog(asym, gaps, "o", label="gap")
    if rep.fitted_constant is not None:
        xs = np.geomspace(asym.min(), asym.max(), 50)
        ax1.loglog(xs, rep.fitted_constant * xs ** 2, "--",
                   label="fitted quadratic floor")
    ax1.set_xlabel("asymmetry")
    ax1.set_ylabel("eigenvalue gap")
    ax1.legend()
    inner = [row.r_inner for row in rep.rows]
    ax2.plot(inner, [row.lam2_domain for row in rep.rows], "o-", label="annulus")
    ax2.plot(inner, [row.rayleigh_bound for row in rep.rows], "s-",
             label="transplanted bound", alpha=0.8)
    ax2.axhline(rep.lam2_ball, color="tab:red", ls="--", label="matched ball")
    ax2.set_xlabel("inner radius")
    ax2.set_ylabel("second eigenvalue")
    ax2.legend(fontsize=8)
    fig.suptitle(f"{rep.space.label()}  alpha={rep.alpha:.6g}", y=1.0)
    return _save(fig, path)


def render_sweep(records: Sequence[dict], path: Path) -> Path:
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    groups: dict[tuple, list[tuple[float, float]]] = {}
    for rec in records:
        key = (rec["kind"], rec["alpha"], rec["ell"], rec["index"])
        groups.setdefault(key, []).append((rec["R2"], rec["lambda"]))
    for (kind, alpha, ell, index), pts in groups.items():
        pts.sort()
        ax.plot([p[0] for p in pts], [p[1] for p in pts], marker="o", ms=3,
                label=f"{kind} a={alpha:g} ell={ell} i={index}")
    ax.set_xlabel("R")
    ax.set_ylabel("lambda")
    ax.set_title("eigenvalue sweep")
    ax.legend(fontsize=6)
    return _save(fig, path)
