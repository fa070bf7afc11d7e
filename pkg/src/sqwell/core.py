"""Closed-form s-wave scattering functions of the attractive square well.

A single central well of radius ``a`` and depth ``v0 > 0`` in units
``hbar = mu = 1``.  Everything downstream hangs off four relations:

    q^2     = k^2 + 2 v0            internal wave number
    alpha^2 = 2 a^2 v0              dimensionless well strength
    tan phi = k tan(qa) / q         resonant phase at the well edge
    theta   = -k a + phi            full s-wave phase shift

The observables evaluated here are all algebraic in (k, qa, alpha):

    |A|^2     = 4 (ka)^2 / [(ka)^2 + alpha^2 cos^2(qa)]
    sigma_phi = |A|^2 sin^2(qa) = 4 sin^2(phi)
    P         = (|A|^2 / 2) (1 - sin(2qa)/(2qa))
    l         = 2a (|A|^2 / 4) (1 + (2 v0/k^2) sin(2qa)/(2qa)) = 2 dphi/dk
    tau       = (l - 2a) / k

At every k with cos(qa) = 0 the well is transparent in the resonant
channel: sigma_phi = 4, l = 2a and tau = 0 exactly.

phi itself is defined by its tangent only; the continuous branch is fixed
by anchoring phi -> 0 as k -> 0 and marching upward in k with steps small
enough that the principal value never moves by pi/2 or more per step.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial.legendre import leggauss

__all__ = [
    "K_MIN",
    "NumericalError",
    "PotentialWell",
    "ScatterSample",
    "RadiusExtendedSample",
    "make_well",
    "well_from_alpha",
    "internal_momentum",
    "relative_intensity",
    "phase_resonant_principal",
    "phase_resonant_mod_pi",
    "phase_resonant",
    "phase_full",
    "unwrap_phases",
    "traversal_length",
    "time_delay",
    "trapping_probability",
    "trapping_probability_quadrature",
    "sigma_phi",
    "sigma_phi_complement",
    "sigma_theta",
    "cross_section",
    "reaction_function",
    "s_matrix",
    "scatter_sample",
    "wavefunction",
    "radius_extended",
    "sigma_peak_positions",
]

# Smallest supported wave number.  tau and l carry 1/k factors and the
# phase anchor lives here, so nothing is evaluated below it.
K_MIN = 1e-6

# March parameters for the phase walk.  The step budget keeps the smooth
# part of the phase advance under 0.3*pi per step so that a resonance
# crossing (which adds up to pi on top) can never alias past the
# |delta| < pi/2 acceptance test.
_WALK_SAFETY = 0.3
_SLOPE_FLOOR = 1e-2


class NumericalError(RuntimeError):
    """An internal numerical procedure failed to make progress."""


@dataclass(frozen=True)
class PotentialWell:
    """Square-well geometry with its derived dimensionless numbers.

    Attributes:
        a: well radius (length).
        v0: well depth |V0| (energy, positive).
        alpha: strength, alpha^2 = 2 a^2 v0.
        qb: bound-state estimate alpha/pi + 1/2; its integer part counts
            the bound states.
    """

    a: float
    v0: float
    alpha: float
    qb: float


def make_well(a: float, v0: float) -> PotentialWell:
    """Build a well from radius and depth.

    Raises ValueError unless a > 0 and v0 > 0.
    """
    a = float(a)
    v0 = float(v0)
    if not (a > 0):
        raise ValueError(f"well radius must be positive, got a={a!r}")
    if not (v0 > 0):
        raise ValueError(f"well depth must be positive, got v0={v0!r}")
    alpha = a * math.sqrt(2.0 * v0)
    return PotentialWell(a=a, v0=v0, alpha=alpha, qb=alpha / math.pi + 0.5)


def well_from_alpha(a: float, alpha: float) -> PotentialWell:
    """Build a well from radius and strength, deriving v0 = alpha^2/(2 a^2)."""
    a = float(a)
    alpha = float(alpha)
    if not (a > 0):
        raise ValueError(f"well radius must be positive, got a={a!r}")
    if not (alpha > 0):
        raise ValueError(f"well strength must be positive, got alpha={alpha!r}")
    return make_well(a, alpha * alpha / (2.0 * a * a))


def _require_k(k: float) -> float:
    k = float(k)
    if not (k > 0):
        raise ValueError(f"wave number must be positive, got k={k!r}")
    if k < K_MIN:
        raise ValueError(f"wave number below supported minimum {K_MIN:g}: k={k!r}")
    return k


def internal_momentum(well: PotentialWell, k):
    """q = sqrt(k^2 + 2 v0)."""
    k = np.asarray(k, dtype=float)
    return np.sqrt(k * k + 2.0 * well.v0)


def relative_intensity(well: PotentialWell, k):
    """|A|^2 = 4 (ka)^2 / [(ka)^2 + alpha^2 cos^2(qa)], the interior intensity."""
    k = np.asarray(k, dtype=float)
    ka = k * well.a
    qa = internal_momentum(well, k) * well.a
    return 4.0 * ka * ka / (ka * ka + (well.alpha * np.cos(qa)) ** 2)


def phase_resonant_principal(well: PotentialWell, k):
    """Principal value of phi: the angle of the vector (q cos qa, k sin qa)."""
    k = np.asarray(k, dtype=float)
    q = internal_momentum(well, k)
    qa = q * well.a
    return np.arctan2(k * np.sin(qa), q * np.cos(qa))


def phase_resonant_mod_pi(well: PotentialWell, k):
    """phi reduced to [0, pi); identical for every continuous branch."""
    return np.mod(phase_resonant_principal(well, k), np.pi)


def traversal_length(well: PotentialWell, k):
    """Effective traversal distance l(k) = 2 dphi/dk, in closed form.

    l / 2a = (|A|^2 / 4) (1 + (2 v0 / k^2) sin(2qa)/(2qa))
    """
    k = np.asarray(k, dtype=float)
    qa = internal_momentum(well, k) * well.a
    two_qa = 2.0 * qa
    sinc2 = np.sin(two_qa) / two_qa
    return 2.0 * well.a * (relative_intensity(well, k) / 4.0) * (
        1.0 + (2.0 * well.v0 / (k * k)) * sinc2
    )


def time_delay(well: PotentialWell, k):
    """Wigner-Smith delay tau = (l - 2a)/k; negative means time advance."""
    k = np.asarray(k, dtype=float)
    return (traversal_length(well, k) - 2.0 * well.a) / k


def trapping_probability(well: PotentialWell, k):
    """P(k) = (|A|^2 / 2) (1 - sin(2qa)/(2qa)), the closed form."""
    k = np.asarray(k, dtype=float)
    two_qa = 2.0 * internal_momentum(well, k) * well.a
    return (relative_intensity(well, k) / 2.0) * (1.0 - np.sin(two_qa) / two_qa)


def sigma_phi(well: PotentialWell, k):
    """Resonant scaled cross section sigma_phi = |A|^2 sin^2(qa) = 4 sin^2(phi)."""
    k = np.asarray(k, dtype=float)
    qa = internal_momentum(well, k) * well.a
    return relative_intensity(well, k) * np.sin(qa) ** 2


def sigma_phi_complement(well: PotentialWell, k):
    """4 - sigma_phi without cancellation at the unitary limit.

    4 - sigma_phi = 4 (qa)^2 cos^2(qa) / [(ka)^2 + alpha^2 cos^2(qa)]

    Vanishes quadratically at cos(qa) = 0 and keeps full relative
    precision there, which is what peak refinement needs.
    """
    k = np.asarray(k, dtype=float)
    ka = k * well.a
    qa = internal_momentum(well, k) * well.a
    c = np.cos(qa)
    return 4.0 * (qa * c) ** 2 / (ka * ka + (well.alpha * c) ** 2)


def sigma_theta(well: PotentialWell, k):
    """Scaled full cross section sigma_theta = 4 sin^2(theta)."""
    k = np.asarray(k, dtype=float)
    theta = phase_resonant_principal(well, k) - k * well.a
    return 4.0 * np.sin(theta) ** 2


def cross_section(well: PotentialWell, k):
    """Unscaled s-wave cross section sigma = (4 pi / k^2) sin^2(theta)."""
    k = np.asarray(k, dtype=float)
    return (np.pi / (k * k)) * sigma_theta(well, k)


def reaction_function(well: PotentialWell, k):
    """R0 = tan(qa)/q, the edge value of psi/psi'; tan(phi) = k R0.

    Diverges where cos(qa) = 0; callers that sample across a unitary
    point should expect huge finite values there.
    """
    k = np.asarray(k, dtype=float)
    q = internal_momentum(well, k)
    return np.tan(q * well.a) / q


def s_matrix(well: PotentialWell, k) -> complex:
    """Unimodular S(k) = -e^{2 i theta} from the edge-matching ratio."""
    k = _require_k(k)
    q = float(internal_momentum(well, k))
    qa = q * well.a
    den = math.cos(qa) - 1j * (k / q) * math.sin(qa)
    return -np.exp(-2j * k * well.a) * den.conjugate() / den


# --------------------------------------------------------------------------
# continuous phase branch


def _walk_delta(well: PotentialWell, k_from: float, k_to: float) -> float:
    """Accumulated phi change over [k_from, k_to] by adaptive marching."""
    kc = k_from
    pc = float(phase_resonant_principal(well, kc))
    acc = 0.0
    while kc < k_to:
        slope = max(abs(float(traversal_length(well, kc))) * 0.5, _SLOPE_FLOOR)
        h = min(k_to - kc, _WALK_SAFETY * math.pi / slope)
        while True:
            kn = min(kc + h, k_to)
            pn = float(phase_resonant_principal(well, kn))
            d = math.remainder(pn - pc, math.tau)
            if abs(d) < math.pi / 2:
                break
            h *= 0.5
            if h < 1e-12 * max(kc, 1.0):
                raise NumericalError(
                    f"phase unwrapping step underflow near k={kc:.8g}"
                )
        acc += d
        kc, pc = kn, pn
    return acc


def phase_resonant(well: PotentialWell, k: float) -> float:
    """Continuous (unwrapped) resonant phase phi(k), anchored at phi(K_MIN) ~ 0.

    The anchor snaps the principal value at K_MIN to the branch through
    zero (tan phi is pi-periodic, so the snap changes nothing physical),
    then marches to k keeping each principal-value step below pi/2.
    """
    k = _require_k(k)
    p0 = float(phase_resonant_principal(well, K_MIN))
    phi0 = p0 - math.pi * round(p0 / math.pi)
    if k == K_MIN:
        return phi0
    return phi0 + _walk_delta(well, K_MIN, k)


def phase_full(well: PotentialWell, k: float) -> float:
    """Unwrapped full phase shift theta(k) = -k a + phi(k)."""
    return -float(k) * well.a + phase_resonant(well, k)


def unwrap_phases(well: PotentialWell, ks) -> tuple[np.ndarray, np.ndarray]:
    """Unwrapped (theta, phi) along an ascending grid of wave numbers.

    Consecutive samples further apart than the local quarter-period are
    bridged by the same adaptive march used for single points, so the
    result is grid-independent.
    """
    ks = np.asarray(ks, dtype=float)
    if ks.ndim != 1 or ks.size < 1:
        raise ValueError("ks must be a one-dimensional, non-empty array")
    if ks[0] < K_MIN:
        raise ValueError(f"grid starts below K_MIN={K_MIN:g}")
    if ks.size > 1 and not np.all(np.diff(ks) > 0):
        raise ValueError("ks must be strictly increasing")

    pp = phase_resonant_principal(well, ks)
    d = np.remainder(np.diff(pp) + np.pi, 2.0 * np.pi) - np.pi
    for i in np.flatnonzero(np.abs(d) >= np.pi / 2):
        d[i] = _walk_delta(well, float(ks[i]), float(ks[i + 1]))
    phi = phase_resonant(well, float(ks[0])) + np.concatenate(([0.0], np.cumsum(d)))
    theta = phi - ks * well.a
    return theta, phi


# --------------------------------------------------------------------------
# per-k sample record


@dataclass(frozen=True)
class ScatterSample:
    """Every scattering function evaluated at one real wave number.

    theta and phi are the unwrapped branches; sigma_theta/sigma_phi are
    the scaled cross sections in [0, 4]; a2 is the interior intensity
    |A|^2 and r0 the reaction function tan(qa)/q.
    """

    k: float
    q: float
    theta: float
    phi: float
    sigma: float
    sigma_theta: float
    sigma_phi: float
    tau: float
    ell: float
    p_trap: float
    a2: float
    r0: float


def scatter_sample(well: PotentialWell, k: float) -> ScatterSample:
    """Evaluate all closed forms plus the unwrapped phases at one k."""
    k = _require_k(k)
    q = float(internal_momentum(well, k))
    phi = phase_resonant(well, k)
    theta = -k * well.a + phi
    ell = float(traversal_length(well, k))
    st = 4.0 * math.sin(theta) ** 2
    return ScatterSample(
        k=k,
        q=q,
        theta=theta,
        phi=phi,
        sigma=(math.pi / (k * k)) * st,
        sigma_theta=st,
        sigma_phi=float(sigma_phi(well, k)),
        tau=(ell - 2.0 * well.a) / k,
        ell=ell,
        p_trap=float(trapping_probability(well, k)),
        a2=float(relative_intensity(well, k)),
        r0=float(reaction_function(well, k)),
    )


# --------------------------------------------------------------------------
# quadrature oracle for the trapping probability

_GL_NODES, _GL_WEIGHTS = leggauss(16)


def _composite_interior(well: PotentialWell, k, panels: int):
    """Composite 16-point Gauss-Legendre of |A sin(qr)|^2 over [0, a], / a."""
    k = np.asarray(k, dtype=float)
    edges = np.linspace(0.0, well.a, panels + 1)
    half = 0.5 * (edges[1:] - edges[:-1])
    mid = 0.5 * (edges[1:] + edges[:-1])
    # r runs over panels x nodes; k broadcasts in front.
    r = (mid[:, None] + half[:, None] * _GL_NODES[None, :]).ravel()
    w = (half[:, None] * _GL_WEIGHTS[None, :]).ravel()
    q = internal_momentum(well, k)
    s2 = np.sin(q[..., None] * r) ** 2
    integral = s2 @ w
    return relative_intensity(well, k) * integral / well.a


def trapping_probability_quadrature(well: PotentialWell, k, n_points: int = 64):
    """P(k) by direct integration of |psi|^2 over the interior.

    Serves as the oracle for the closed form: it never touches the
    1 - sin(2qa)/(2qa) factor.  Panel count doubles from n_points/16
    until two successive composites agree to 1e-12.

    Args:
        k: scalar or array of wave numbers.
        n_points: starting number of nodes; must be at least 16.
    """
    if int(n_points) < 16:
        raise ValueError(f"n_points must be at least 16, got {n_points!r}")
    scalar = np.isscalar(k) or np.asarray(k).ndim == 0
    if scalar:
        _require_k(float(np.asarray(k)))
    panels = max(1, int(n_points) // 16)
    prev = _composite_interior(well, k, panels)
    for _ in range(24):
        panels *= 2
        cur = _composite_interior(well, k, panels)
        if np.max(np.abs(cur - prev)) < 1e-12:
            break
        prev = cur
    return float(cur) if scalar else cur


# --------------------------------------------------------------------------
# wavefunction and beyond-the-edge quantities


def wavefunction(well: PotentialWell, k: float, r: float) -> complex:
    """psi(k; r): A sin(qr) inside, e^{-ikr} + S e^{ikr} outside.

    The interior amplitude A = -2i (k/q) e^{-ika} / [cos qa - i (k/q) sin qa]
    makes psi and psi' continuous at r = a by construction.
    """
    k = _require_k(k)
    r = float(r)
    if r < 0:
        raise ValueError(f"radius must be nonnegative, got r={r!r}")
    q = float(internal_momentum(well, k))
    qa = q * well.a
    kq = k / q
    den = math.cos(qa) - 1j * kq * math.sin(qa)
    if r <= well.a:
        amp = -2j * kq * np.exp(-1j * k * well.a) / den
        return complex(amp * math.sin(q * r))
    s = -np.exp(-2j * k * well.a) * den.conjugate() / den
    return complex(np.exp(-1j * k * r) + s * np.exp(1j * k * r))


@dataclass(frozen=True)
class RadiusExtendedSample:
    """phi, l and the trapping probability referred to a radius r >= a."""

    r: float
    phi_r: float
    ell_r: float
    p_r: float


def radius_extended(well: PotentialWell, k: float, r: float) -> RadiusExtendedSample:
    """Quantities of the region [0, r] for an evaluation radius at or past the edge.

    phi_r = theta + k r exactly, hence l_r = l_a + 2 (r - a), and

        p_r r = p_a a + 2 (r - a) - [sin(2 phi_r) - sin(2 phi_a)] / k

    which is the outside integral of |psi|^2 = 4 sin^2(theta + k r') done
    in closed form.
    """
    k = _require_k(k)
    r = float(r)
    if r < well.a:
        raise ValueError(f"evaluation radius must satisfy r >= a, got r={r!r}")
    sample = scatter_sample(well, k)
    phi_r = sample.theta + k * r
    ell_r = sample.ell + 2.0 * (r - well.a)
    p_r = (
        sample.p_trap * well.a
        + 2.0 * (r - well.a)
        - (math.sin(2.0 * phi_r) - math.sin(2.0 * sample.phi)) / k
    ) / r
    return RadiusExtendedSample(r=r, phi_r=phi_r, ell_r=ell_r, p_r=p_r)


# --------------------------------------------------------------------------
# analytic unitary ladder


def sigma_peak_positions(well: PotentialWell, k_max: float, n_extra: int = 0) -> np.ndarray:
    """Wave numbers of the unitary peaks: qa an odd multiple of pi/2 above alpha.

    These are the exact positions of the sigma_phi maxima,

        k_m = sqrt((m pi / 2)^2 - alpha^2) / a,  m odd,  m pi/2 > alpha,

    returned in ascending order up to k_max, plus n_extra ladder points
    beyond it (used for spacing estimates).
    """
    if not (k_max > 0):
        raise ValueError(f"k_max must be positive, got {k_max!r}")
    half_pi = 0.5 * math.pi
    m = int(math.floor(well.alpha / half_pi)) + 1
    if m % 2 == 0:
        m += 1
    while m * half_pi <= well.alpha:
        m += 2
    roots = []
    extra_left = n_extra
    while True:
        qa = m * half_pi
        k = math.sqrt(qa * qa - well.alpha**2) / well.a
        if k > k_max:
            if extra_left == 0:
                break
            extra_left -= 1
        if k >= 10.0 * K_MIN:
            roots.append(k)
        m += 2
    return np.asarray(roots)
