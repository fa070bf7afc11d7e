"""Peak scanning, refinement, and per-resonance bookkeeping.

The resonant structure of the real-k scattering functions is organized by
the unitary ladder, the exact peak positions of sigma_phi where
cos(qa) = 0.  Each ladder point s_n closes a window (s_{n-1}, s_n] that
holds the n-th resonance: the traversal length l peaks just below s_n,
the time delay tau just below that, and the trapping probability P just
above s_n.  Scanning happens on dense grids, every detected interior
maximum is refined by golden-section search (function values only), and
the per-window winners are collected into ResonanceRecord entries with
the nearest S-matrix pole attached.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

from .core import (
    K_MIN,
    NumericalError,
    PotentialWell,
    phase_resonant_mod_pi,
    sigma_phi,
    sigma_phi_complement,
    sigma_peak_positions,
    time_delay,
    trapping_probability,
    traversal_length,
)
from .poles import PoleSearchConfig, find_poles

__all__ = [
    "KGrid",
    "PeakHit",
    "ResonanceRecord",
    "sample_grid",
    "golden_max",
    "local_maxima",
    "first_ell_peak",
    "resonance_report",
]

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0

# Samples per unit wave number for resonance scans; doubled adaptively.
DEFAULT_PER_UNIT = 4096


@dataclass
class KGrid:
    """A scanned function: ordered wave numbers, values, and the scan source."""

    k_min: float
    k_max: float
    ks: np.ndarray
    values: np.ndarray
    adaptive: bool
    fn: Callable[[np.ndarray], np.ndarray] | None = field(default=None, repr=False)

    def __post_init__(self) -> None:
        self.ks = np.asarray(self.ks, dtype=float)
        self.values = np.asarray(self.values, dtype=float)
        if self.ks.ndim != 1 or self.ks.shape != self.values.shape:
            raise ValueError("ks and values must be matching one-dimensional arrays")
        if self.k_min < K_MIN:
            raise ValueError(f"k_min must be at least {K_MIN:g}, got {self.k_min!r}")
        if self.ks.size > 1 and not np.all(np.diff(self.ks) > 0):
            raise ValueError("grid wave numbers must be strictly increasing")

    @property
    def samples(self) -> list[tuple[float, float]]:
        return list(zip(self.ks.tolist(), self.values.tolist()))

    @property
    def step(self) -> float:
        return (self.k_max - self.k_min) / (self.ks.size - 1)


@dataclass(frozen=True)
class PeakHit:
    """One local maximum; boundary=True marks an edge maximum (not refined)."""

    k: float
    value: float
    boundary: bool


@dataclass(frozen=True)
class ResonanceRecord:
    """Peak positions of l, tau, P, sigma_phi for one resonance window.

    k_tau = 0.0 with tau_boundary=True encodes a time delay whose maximum
    sits at the k -> 0 edge instead of at an interior point.  kappa and
    modulus describe the nearest resonance pole (its real part and its
    distance from the origin).
    """

    n: int
    k_star: float
    k_tau: float
    k_p: float
    k_sigma: float
    phi_at_kstar: float
    ell_ratio: float
    kappa: float
    modulus: float
    tau_boundary: bool = False


def _interior_max_mask(values: np.ndarray) -> np.ndarray:
    return (values[1:-1] > values[:-2]) & (values[1:-1] > values[2:])


def sample_grid(
    fn: Callable[[np.ndarray], np.ndarray],
    k_min: float,
    k_max: float,
    per_unit: int = DEFAULT_PER_UNIT,
    adaptive: bool = True,
    max_samples: int = 1 << 21,
) -> KGrid:
    """Scan fn on [k_min, k_max], doubling density until the maxima count settles."""
    if not (k_max > k_min):
        raise ValueError(f"need k_max > k_min, got [{k_min!r}, {k_max!r}]")
    n = max(64, int(math.ceil((k_max - k_min) * per_unit)) + 1)
    ks = np.linspace(k_min, k_max, n)
    vals = np.asarray(fn(ks), dtype=float)
    if adaptive:
        count = int(np.count_nonzero(_interior_max_mask(vals)))
        while 2 * (n - 1) + 1 <= max_samples:
            n2 = 2 * (n - 1) + 1
            ks2 = np.linspace(k_min, k_max, n2)
            vals2 = np.asarray(fn(ks2), dtype=float)
            count2 = int(np.count_nonzero(_interior_max_mask(vals2)))
            ks, vals, n = ks2, vals2, n2
            if count2 == count:
                break
            count = count2
    return KGrid(k_min=k_min, k_max=k_max, ks=ks, values=vals, adaptive=adaptive, fn=fn)


def golden_max(
    fn: Callable[[float], float], lo: float, hi: float, tol: float = 1e-10
) -> float:
    """Position of the maximum of a unimodal fn on [lo, hi] to bracket width tol."""
    if not (hi > lo):
        raise ValueError(f"need hi > lo, got [{lo!r}, {hi!r}]")
    c = hi - _INV_PHI * (hi - lo)
    d = lo + _INV_PHI * (hi - lo)
    fc = float(fn(c))
    fd = float(fn(d))
    while hi - lo > tol:
        if fc >= fd:
            hi, d, fd = d, c, fc
            c = hi - _INV_PHI * (hi - lo)
            fc = float(fn(c))
        else:
            lo, c, fc = c, d, fd
            d = lo + _INV_PHI * (hi - lo)
            fd = float(fn(d))
    return 0.5 * (lo + hi)


def _parabolic_polish(fn: Callable[[float], float], k: float) -> float:
    """One three-point parabolic vertex step after golden-section.

    Golden-section stalls once the function flattens into float noise
    around the maximum (a plateau of order sqrt(eps) times the peak
    width).  Sampling at +-h with h well above the plateau recovers the
    vertex from curvature instead, cutting the error to ~1e-11 while
    still using nothing but function values.
    """
    h = 1e-6 * max(1.0, abs(k))
    if k - h <= K_MIN:
        return k
    fm = float(fn(k - h))
    f0 = float(fn(k))
    fp = float(fn(k + h))
    den = fm - 2.0 * f0 + fp
    if not (den < 0.0):
        return k
    shift = 0.5 * h * (fm - fp) / den
    if abs(shift) >= h:
        return k
    return k + shift


def local_maxima(grid: KGrid, tol: float = 1e-10) -> list[PeakHit]:
    """All maxima of a scanned grid: interior ones refined, edge ones flagged.

    Interior sample triples whose middle value is strictly greatest are
    refined by golden-section search over the bracketing samples when the
    grid carries its source function; otherwise the sample itself is
    returned.  A first or last sample exceeding its sole neighbor is
    reported with boundary=True.
    """
    ks, vals = grid.ks, grid.values
    if ks.size < 3:
        raise ValueError("need at least 3 samples to classify maxima")
    if grid.fn is not None:
        scalar = lambda x: float(grid.fn(np.asarray(x, dtype=float)))
    hits: list[PeakHit] = []
    if vals[0] > vals[1]:
        hits.append(PeakHit(k=float(ks[0]), value=float(vals[0]), boundary=True))
    for i in np.flatnonzero(_interior_max_mask(vals)) + 1:
        if grid.fn is None:
            hits.append(PeakHit(k=float(ks[i]), value=float(vals[i]), boundary=False))
        else:
            k_pk = golden_max(scalar, float(ks[i - 1]), float(ks[i + 1]), tol=tol)
            k_pk = _parabolic_polish(scalar, k_pk)
            hits.append(PeakHit(k=k_pk, value=scalar(k_pk), boundary=False))
    if vals[-1] > vals[-2]:
        hits.append(PeakHit(k=float(ks[-1]), value=float(vals[-1]), boundary=True))
    return hits


def first_ell_peak(well: PotentialWell, n: int = 4097) -> tuple[float, float]:
    """(k, l/2a) of the largest traversal-length maximum below the first ladder point.

    The scan covers (K_MIN, s_1] with a fixed sample count; the winning
    sample is golden-refined when interior.  l(s_1) = 2a exactly, so a
    well fresh past a binding threshold degenerates to the edge with
    ratio 1.
    """
    ladder = sigma_peak_positions(well, k_max=K_MIN, n_extra=1)
    if ladder.size == 0:
        raise NumericalError("no unitary ladder point found above K_MIN")
    s1 = float(ladder[0])
    ks = np.linspace(K_MIN, s1, n)
    vals = np.asarray(traversal_length(well, ks), dtype=float)
    i = int(np.argmax(vals))
    if 0 < i < n - 1:
        scalar = lambda x: float(traversal_length(well, x))
        k_star = golden_max(scalar, float(ks[i - 1]), float(ks[i + 1]))
        k_star = _parabolic_polish(scalar, k_star)
    else:
        k_star = float(ks[i])
    ratio = float(traversal_length(well, k_star)) / (2.0 * well.a)
    return k_star, ratio


def _nearest(hits: Sequence[PeakHit], target: float) -> PeakHit | None:
    interior = [h for h in hits if not h.boundary]
    if not interior:
        return None
    return min(interior, key=lambda h: abs(h.k - target))


def _refined_sigma_peaks(well: PotentialWell, grid: KGrid) -> list[PeakHit]:
    """sigma_phi maxima refined through the complement 4 - sigma_phi.

    At the unitary limit sigma_phi flattens into float noise around 4,
    so golden-section on its own values stalls at ~1e-9.  The complement
    vanishes quadratically there with full relative precision; minimizing
    it over the grid bracket recovers the peak position to ~1e-12.
    """
    vals = grid.values
    complement = lambda x: -float(sigma_phi_complement(well, x))
    hits: list[PeakHit] = []
    if vals[0] > vals[1]:
        hits.append(PeakHit(k=float(grid.ks[0]), value=float(vals[0]), boundary=True))
    for i in np.flatnonzero(_interior_max_mask(vals)) + 1:
        k_pk = golden_max(complement, float(grid.ks[i - 1]), float(grid.ks[i + 1]))
        k_pk = _parabolic_polish(complement, k_pk)
        hits.append(
            PeakHit(k=k_pk, value=float(sigma_phi(well, k_pk)), boundary=False)
        )
    if vals[-1] > vals[-2]:
        hits.append(PeakHit(k=float(grid.ks[-1]), value=float(vals[-1]), boundary=True))
    return hits


@lru_cache(maxsize=64)
def resonance_report(
    well: PotentialWell,
    k_max: float,
    per_unit: int = DEFAULT_PER_UNIT,
) -> list[ResonanceRecord]:
    """One ResonanceRecord per unitary window with a ladder point below k_max.

    Peaks of each function are assigned to windows by position; the
    window boundaries for tau, P, and sigma_phi are shifted 10% of the
    local ladder spacing to the right, because P peaks slightly beyond
    the window-closing ladder point.  Within a window the l-maximum with
    the greatest value is the resonance position k_star (subsidiary
    ripple maxima lose); the tau, P, sigma_phi peaks nearest k_star
    complete the record, and the pole with real part nearest k_star
    supplies kappa and modulus.
    """
    ladder = sigma_peak_positions(well, k_max, n_extra=1)
    inside = ladder[ladder <= k_max * (1.0 + 1e-12)]
    n_windows = int(inside.size)
    if n_windows == 0:
        return []
    s = ladder  # s[0 .. n_windows], one spare point for spacing
    scan_hi = float(s[n_windows - 1] + 0.25 * (s[n_windows] - s[n_windows - 1]))

    grid_l = sample_grid(lambda ks: traversal_length(well, ks), K_MIN, scan_hi, per_unit)
    grid_t = sample_grid(lambda ks: time_delay(well, ks), K_MIN, scan_hi, per_unit)
    grid_p = sample_grid(lambda ks: trapping_probability(well, ks), K_MIN, scan_hi, per_unit)
    grid_s = sample_grid(lambda ks: sigma_phi(well, ks), K_MIN, scan_hi, per_unit)

    peaks_l = local_maxima(grid_l)
    peaks_t = local_maxima(grid_t)
    peaks_p = local_maxima(grid_p)
    peaks_s = _refined_sigma_peaks(well, grid_s)

    tau_left_boundary = any(h.boundary and h.k == float(grid_t.ks[0]) for h in peaks_t)

    pole_cfg = PoleSearchConfig(re_max=max(scan_hi + 0.5, 1.0))
    poles = find_poles(well, pole_cfg)

    records: list[ResonanceRecord] = []
    for n in range(1, n_windows + 1):
        lo_plain = 0.0 if n == 1 else float(s[n - 2])
        hi_plain = float(s[n - 1])
        lo_shift = lo_plain if n == 1 else lo_plain + 0.1 * (hi_plain - lo_plain)
        hi_shift = hi_plain + 0.1 * float(s[n] - s[n - 1])

        in_l = [h for h in peaks_l if not h.boundary and lo_plain < h.k <= hi_plain]
        if not in_l:
            continue
        best = max(in_l, key=lambda h: h.value)
        k_star = best.k
        ell_ratio = best.value / (2.0 * well.a)

        in_t = [h for h in peaks_t if lo_shift < h.k <= hi_shift]
        in_p = [h for h in peaks_p if lo_shift < h.k <= hi_shift]
        in_s = [h for h in peaks_s if lo_shift < h.k <= hi_shift]

        hit_t = _nearest(in_t, k_star)
        if hit_t is None:
            if n == 1 and tau_left_boundary:
                k_tau, tau_boundary = 0.0, True
            else:
                raise NumericalError(
                    f"no time-delay maximum found in resonance window {n}"
                )
        else:
            k_tau, tau_boundary = hit_t.k, False

        hit_p = _nearest(in_p, k_star)
        hit_s = _nearest(in_s, k_star)
        if hit_p is None or hit_s is None:
            raise NumericalError(
                f"missing trapping or cross-section maximum in resonance window {n}"
            )

        if not poles:
            raise NumericalError("pole search returned nothing to attach")
        pole = min(poles, key=lambda p: abs(p.kappa - k_star))

        records.append(
            ResonanceRecord(
                n=n,
                k_star=k_star,
                k_tau=k_tau,
                k_p=hit_p.k,
                k_sigma=hit_s.k,
                phi_at_kstar=float(phase_resonant_mod_pi(well, k_star)),
                ell_ratio=ell_ratio,
                kappa=pole.kappa,
                modulus=pole.modulus,
                tau_boundary=tau_boundary,
            )
        )
    return records
