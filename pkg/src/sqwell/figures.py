"""Rendered overview panels for one well, written next to their CSV data.

One PNG stacks the five standard views: time delay, traversal length,
trapping probability, the two scaled cross sections, and the phases
reduced mod pi.  Dashed vertical lines mark the refined maxima of l;
dotted lines mark the real parts of the resonance poles.  The same
figure_data rows back both the plot and the CSV file, so the picture and
the numbers cannot drift apart.
"""

from __future__ import annotations

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .core import PotentialWell
from .experiments import FigureData, figure_data

__all__ = ["render_figure_panels"]


def _csv_text(data: FigureData, digits: int = 8) -> str:
    lines = [",".join(data.columns)]
    for row in data.rows:
        cells = [
            cell if isinstance(cell, str) else format(cell, f".{digits}g")
            for cell in row
        ]
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def _break_wraps(values: np.ndarray, jump: float) -> np.ndarray:
    """Copy with NaN inserted after each wrap so mod-pi curves plot cleanly."""
    out = np.array(values, dtype=float)
    drops = np.flatnonzero(np.abs(np.diff(out)) > jump)
    out[drops + 1] = np.nan
    return out


def _robust_limits(values: np.ndarray) -> tuple[float, float]:
    """Central-percentile limits so divergent tails do not flatten the panel."""
    lo, hi = np.percentile(values, [2.0, 98.0])
    pad = 0.1 * (hi - lo) if hi > lo else 1.0
    return float(lo - pad), float(hi + pad)


def render_figure_panels(
    well: PotentialWell,
    k_min: float,
    k_max: float,
    n: int,
    directory: str | Path,
) -> list[Path]:
    """Write scattering_panels.png and figure_data.csv; return both paths."""
    data = figure_data(well, k_min, k_max, n)
    out_dir = Path(directory)
    out_dir.mkdir(parents=True, exist_ok=True)

    csv_path = out_dir / "figure_data.csv"
    csv_path.write_text(_csv_text(data), encoding="utf-8")

    sample = np.array(
        [row[:-1] for row in data.sample_rows], dtype=float
    )  # k, tau, ell, p, st, sp, theta_mod, phi_mod
    ks = sample[:, 0]
    ell_marks = [row[0] for row in data.marker_rows if row[-1].startswith("ell_peak")]
    pole_marks = [row[0] for row in data.marker_rows if row[-1].startswith("pole_re")]

    fig, axes = plt.subplots(5, 1, figsize=(7.0, 12.5), sharex=True)

    axes[0].plot(ks, sample[:, 1], lw=1.0)
    axes[0].axhline(0.0, color="0.6", lw=0.6)
    axes[0].set_ylim(*_robust_limits(sample[:, 1]))
    axes[0].set_ylabel("tau(k)")

    axes[1].plot(ks, sample[:, 2], lw=1.0)
    axes[1].axhline(2.0 * well.a, color="0.6", lw=0.6)
    axes[1].set_ylabel("l(k)")

    axes[2].plot(ks, sample[:, 3], lw=1.0)
    axes[2].set_ylabel("P(k)")

    axes[3].plot(ks, sample[:, 4], lw=1.0, label="sigma_theta")
    axes[3].plot(ks, sample[:, 5], lw=1.0, label="sigma_phi")
    axes[3].set_ylabel("scaled cross sections")
    axes[3].legend(loc="upper right", fontsize=8)

    axes[4].plot(ks, _break_wraps(sample[:, 6], 2.5), lw=1.0, label="theta mod pi")
    axes[4].plot(ks, _break_wraps(sample[:, 7], 2.5), lw=1.0, label="phi mod pi")
    axes[4].set_ylim(0.0, math.pi)
    axes[4].set_ylabel("phases mod pi")
    axes[4].set_xlabel("k")
    axes[4].legend(loc="upper right", fontsize=8)

    for ax in axes:
        for k_pk in ell_marks:
            ax.axvline(k_pk, color="k", ls="--", lw=0.6)
        for kappa in pole_marks:
            ax.axvline(kappa, color="tab:red", ls=":", lw=0.8)

    fig.suptitle(f"a={well.a:g}, v0={well.v0:g}, alpha={well.alpha:.4f}")
    fig.tight_layout(rect=(0, 0, 1, 0.985))
    png_path = out_dir / "scattering_panels.png"
    fig.savefig(png_path, dpi=150)
    plt.close(fig)

    return [png_path, csv_path]
