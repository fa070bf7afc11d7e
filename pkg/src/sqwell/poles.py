"""Zeros of the S-matrix denominator in the complex wave-number plane.

The scattered wave has interior amplitude A with denominator

    D(k) = cos(qa) - i (k/q) sin(qa),      q = sqrt(k^2 + 2 v0).

cos and sinc are even in q, so D is single valued in k despite the square
root: any branch of q gives the same value.  Zeros on the positive
imaginary axis are bound states; zeros in the lower half plane are
resonance poles, reported in the fourth quadrant (Re > 0, Im < 0).  For
real potentials D(-conj(k)) = conj(D(k)), so fourth-quadrant poles carry
their mirror images implicitly.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .core import K_MIN, PotentialWell, traversal_length

__all__ = [
    "PoleK",
    "PoleSearchConfig",
    "denominator",
    "denominator_prime",
    "find_poles",
    "bound_states",
    "bound_poles",
]

# Beyond this |Im(qa)| the trig factors are evaluated pre-multiplied by
# e^{-|Im(qa)|}: cosh-type growth would eventually overflow, and zeros
# are unaffected by a positive scale.
_RESCALE_THRESHOLD = 30.0


@dataclass(frozen=True)
class PoleK:
    """One zero of D(k), classified by half-plane.

    kappa is Re(value) and modulus |value|; residual is |D| at the
    converged point, in the rescaled metric where applicable.
    """

    value: complex
    kappa: float
    modulus: float
    kind: str
    residual: float


@dataclass(frozen=True)
class PoleSearchConfig:
    """Rectangle and iteration budget for the lower-half-plane search."""

    re_max: float = 4.0
    im_min: float = -2.0
    grid_nx: int = 24
    grid_ny: int = 8
    newton_tol: float = 1e-12
    max_iter: int = 60
    dedup_tol: float = 1e-8

    def validate(self) -> None:
        if not (self.re_max > 0):
            raise ValueError(f"re_max must be positive, got {self.re_max!r}")
        if not (self.im_min < 0):
            raise ValueError(f"im_min must be negative, got {self.im_min!r}")
        if self.grid_nx < 8 or self.grid_ny < 8:
            raise ValueError(
                f"grid sizes must be at least 8, got {self.grid_nx}x{self.grid_ny}"
            )
        if not (self.newton_tol > 0):
            raise ValueError(f"newton_tol must be positive, got {self.newton_tol!r}")
        if self.max_iter < 1:
            raise ValueError(f"max_iter must be at least 1, got {self.max_iter!r}")
        if not (self.dedup_tol > 0):
            raise ValueError(f"dedup_tol must be positive, got {self.dedup_tol!r}")


def _sinc(z: complex) -> complex:
    """sin(z)/z, regular at zero."""
    if abs(z) < 1e-4:
        z2 = z * z
        return 1.0 - z2 / 6.0 + z2 * z2 / 120.0
    return cmath.sin(z) / z


def _gfun(z: complex) -> complex:
    """(z cos z - sin z)/z^3, regular at zero (limit -1/3)."""
    if abs(z) < 1e-3:
        z2 = z * z
        return -1.0 / 3.0 + z2 / 30.0 - z2 * z2 / 840.0
    return (z * cmath.cos(z) - cmath.sin(z)) / (z * z * z)


def _trig(u: complex) -> tuple[complex, complex, bool]:
    """cos(u) and sin(u), both times e^{-|Im u|} once that exceeds the threshold."""
    s = abs(u.imag)
    if s <= _RESCALE_THRESHOLD:
        return cmath.cos(u), cmath.sin(u), False
    ep = cmath.exp(1j * u - s)
    em = cmath.exp(-1j * u - s)
    return 0.5 * (ep + em), (ep - em) / 2j, True


def _d_and_prime(well: PotentialWell, k: complex) -> tuple[complex, complex, bool]:
    """D and dD/dk sharing one scale factor, so their ratio is scale-free.

    With u = qa,

        D  = cos u - i k a sinc(u)
        D' = -a^2 k sinc(u) - i a [sinc(u) + a^2 k^2 g(u)]

    where sinc(u) = sin(u)/u and g(u) = (u cos u - sin u)/u^3; both are
    even and entire, which keeps D and D' regular through q = 0.
    """
    a = well.a
    u = cmath.sqrt(k * k + 2.0 * well.v0) * a
    cos_u, sin_u, rescaled = _trig(u)
    if rescaled:
        sinc_u = sin_u / u
        g_u = (u * cos_u - sin_u) / (u * u * u)
    else:
        sinc_u = _sinc(u)
        g_u = _gfun(u)
    d = cos_u - 1j * k * a * sinc_u
    dp = -(a * a) * k * sinc_u - 1j * a * (sinc_u + (a * k) * (a * k) * g_u)
    return d, dp, rescaled


def denominator(well: PotentialWell, k: complex) -> tuple[complex, bool]:
    """D(k) = cos(qa) - i (k/q) sin(qa) and a rescaling flag.

    When |Im(qa)| exceeds 30 the returned value is D(k) e^{-|Im(qa)|}
    (flag True); zero locations are preserved.
    """
    d, _, rescaled = _d_and_prime(well, complex(k))
    return d, rescaled


def denominator_prime(well: PotentialWell, k: complex) -> complex:
    """dD/dk, rescaled in step with denominator() for large |Im(qa)|."""
    _, dp, _ = _d_and_prime(well, complex(k))
    return dp


def _newton(
    well: PotentialWell, seed: complex, tol: float, max_iter: int
) -> tuple[complex, float] | None:
    """Polish one seed; None when the iteration fails to settle."""
    k = complex(seed)
    for _ in range(max_iter):
        d, dp, _ = _d_and_prime(well, k)
        if dp == 0 or not cmath.isfinite(d) or not cmath.isfinite(dp):
            return None
        step = d / dp
        k = k - step
        if abs(k) > 1e6:
            return None
        if abs(step) <= 1e-14 * max(1.0, abs(k)):
            residual = abs(_d_and_prime(well, k)[0])
            if residual < tol:
                return k, residual
    # step converged slowly; accept only if the residual already made it
    residual = abs(_d_and_prime(well, k)[0])
    if residual < tol:
        return k, residual
    return None


def _ell_peak_seeds(well: PotentialWell, re_max: float) -> list[complex]:
    """Real-axis maxima of the traversal length, nudged into the lower half.

    Resonance poles sit just below these maxima, so they make cheap,
    well-placed extra seeds on top of the uniform grid.
    """
    n = max(256, int(512 * re_max))
    ks = np.linspace(max(10.0 * K_MIN, 1e-3), re_max, n)
    ell = traversal_length(well, ks)
    inner = (ell[1:-1] > ell[:-2]) & (ell[1:-1] > ell[2:])
    return [complex(ks[i + 1], -0.02) for i in np.flatnonzero(inner)]


def find_poles(
    well: PotentialWell, cfg: PoleSearchConfig | None = None
) -> list[PoleK]:
    """Resonance poles inside (0, re_max] x [im_min, 0), sorted by real part.

    Seeds a uniform grid over the rectangle plus the real-axis maxima of
    l(k), polishes each by Newton with the analytic derivative, drops
    non-convergent seeds and anything that lands outside the rectangle
    (including the axes, so bound and virtual states never appear here),
    and merges duplicates closer than dedup_tol.
    """
    if cfg is None:
        cfg = PoleSearchConfig()
    cfg.validate()

    seeds: list[complex] = []
    for i in range(cfg.grid_nx):
        re = (i + 0.5) * cfg.re_max / cfg.grid_nx
        for j in range(cfg.grid_ny):
            im = (j + 0.5) * cfg.im_min / cfg.grid_ny
            seeds.append(complex(re, im))
    seeds.extend(_ell_peak_seeds(well, cfg.re_max))

    candidates: list[tuple[complex, float]] = []
    for seed in seeds:
        hit = _newton(well, seed, cfg.newton_tol, cfg.max_iter)
        if hit is None:
            continue
        k, residual = hit
        if not (1e-8 < k.real <= cfg.re_max * (1.0 + 1e-12)):
            continue
        if not (cfg.im_min * (1.0 + 1e-12) <= k.imag < -1e-12):
            continue
        candidates.append((k, residual))

    candidates.sort(key=lambda item: (item[1], item[0].real, item[0].imag))
    kept: list[tuple[complex, float]] = []
    for k, residual in candidates:
        if all(abs(k - other) > cfg.dedup_tol for other, _ in kept):
            kept.append((k, residual))
    kept.sort(key=lambda item: (item[0].real, item[0].imag))

    return [
        PoleK(
            value=k,
            kappa=k.real,
            modulus=abs(k),
            kind="resonance",
            residual=residual,
        )
        for k, residual in kept
    ]


def _bound_condition(alpha: float, u: float) -> float:
    """u cos u + sqrt(alpha^2 - u^2) sin u; its roots on (0, alpha) are bound states."""
    return u * math.cos(u) + math.sqrt(max(alpha * alpha - u * u, 0.0)) * math.sin(u)


def bound_states(well: PotentialWell) -> list[float]:
    """Binding wave numbers kappa_b with D(i kappa_b) = 0, ascending.

    On the imaginary axis k = i kappa the interior momentum q is real
    with u = qa in (0, alpha), and D = 0 reduces to the real condition
    u cos u + sqrt(alpha^2 - u^2) sin u = 0.  That combination changes
    sign exactly once per half-period ((n - 1/2) pi, n pi), so bracketing
    those intervals finds every root; the count comes out floor(qb).
    """
    alpha = well.alpha
    kappas: list[float] = []
    n = 1
    while (n - 0.5) * math.pi < alpha:
        lo = (n - 0.5) * math.pi
        hi = min(n * math.pi, alpha)
        flo = _bound_condition(alpha, lo)
        fhi = _bound_condition(alpha, hi)
        if flo == 0.0:
            root = lo
        elif flo * fhi < 0.0:
            root = brentq(
                lambda u: _bound_condition(alpha, u), lo, hi, xtol=1e-14, rtol=8.9e-16
            )
        else:
            # the last, truncated bracket may close before the sign flips
            n += 1
            continue
        kappas.append(math.sqrt(alpha * alpha - root * root) / well.a)
        n += 1
    return sorted(kappas)


def bound_poles(well: PotentialWell) -> list[PoleK]:
    """The bound-state zeros packaged as poles on the positive imaginary axis."""
    poles = []
    for kappa_b in bound_states(well):
        value = complex(0.0, kappa_b)
        residual = abs(denominator(well, value)[0])
        poles.append(
            PoleK(
                value=value,
                kappa=0.0,
                modulus=kappa_b,
                kind="bound",
                residual=residual,
            )
        )
    return poles
