"""The acceptance gate: one test per criterion, each at its stated tolerance.

Criterion 1 compares the computed first-resonance table against the
published reference sheet for the seven wells at the reference sheet's
own precision.  Three kinds of defect in that sheet are known and
documented in the README: the well III k_p entry contradicts the exact
width-scaling of row I (0.9990 / 5 = 0.1998, printed 0.1990), the well V
ratio is printed to three decimals only, and the quoted phi values for
wells IV, V, VI are cyclically shifted against the well order.  The
comparison is left strict, so this test fails on those five sub-checks;
every other criterion is expected to pass.
"""

import math

import numpy as np
import pytest

from sqwell.core import (
    phase_resonant,
    phase_resonant_principal,
    sigma_peak_positions,
    time_delay,
    trapping_probability,
    trapping_probability_quadrature,
    traversal_length,
)
from sqwell.experiments import REFERENCE_WELLS, alpha_sweep, first_resonance, table1
from sqwell.poles import bound_states

# published reference sheet: k_star, k_tau, k_p, k_sigma, kappa, modulus,
# ell_ratio, qb per well, at the precision it quotes
PUBLISHED = {
    "I": (0.8983, 0.8934, 0.9990, 0.9950, 0.8994, 0.9936, 1.0486, 3.91),
    "II": (0.9915, 0.9915, 0.9952, 0.9950, 0.9913, 0.9949, 1.0017, 17.58),
    "III": (0.1797, 0.1787, 0.1990, 0.1990, 0.1799, 0.1987, 1.0486, 3.91),
    "IV": (0.4572, 0.4570, 0.4716, 0.4714, 0.4572, 0.4714, 1.0153, 12.93),
    "V": (0.0584, 0.0, 0.1407, 0.1406, 0.0824, 0.1406, 1.352, 12.99),
    "VI": (0.3274, 0.3269, 0.3475, 0.3473, 0.3279, 0.3473, 1.0293, 12.96),
    "VII": (1.7948, 1.7948, 1.7990, 1.7984, 1.7943, 1.7983, 1.0009, 13.02),
}

# phi at k_star as quoted alongside the reference sheet, in well order
PUBLISHED_PHI = {
    "I": 1.33,
    "II": 1.53,
    "III": 1.33,
    "IV": 0.68,
    "V": 1.39,
    "VI": 1.44,
    "VII": 1.54,
}

EXPECTED_BOUND_COUNTS = {
    "I": 3, "II": 17, "III": 3, "IV": 12, "V": 12, "VI": 12, "VII": 13,
}


def test_criterion_01_reference_table(acceptance):
    k_gate, qb_gate, phi_gate = 5e-4, 1e-2, 1e-2
    failures = []
    total = 0
    rows = {row.well_label: row for row in table1()}
    for label in PUBLISHED:
        row = rows[label]
        rec = row.record
        got = (rec.k_star, rec.k_tau, rec.k_p, rec.k_sigma, rec.kappa,
               rec.modulus, rec.ell_ratio, row.qb)
        names = ("k_star", "k_tau", "k_p", "k_sigma", "kappa", "modulus",
                 "ell_ratio", "qb")
        for name, value, ref in zip(names, got, PUBLISHED[label]):
            total += 1
            gate = qb_gate if name == "qb" else k_gate
            if abs(value - ref) > gate:
                failures.append(
                    f"{label} {name} computed {value:.6f} vs {ref} "
                    f"(off {abs(value - ref):.1e}, gate {gate:g})"
                )
        total += 1
        if abs(rec.phi_at_kstar - PUBLISHED_PHI[label]) > phi_gate:
            failures.append(
                f"{label} phi computed {rec.phi_at_kstar:.4f} vs "
                f"{PUBLISHED_PHI[label]} (gate {phi_gate:g})"
            )
    if failures:
        detail = (
            f"{total - len(failures)}/{total} sub-checks within gates; "
            "known reference-sheet defects: " + "; ".join(failures) + "; "
            "III k_p contradicts exact row-I scaling (0.9990/5 = 0.1998, "
            "matches the adjacent k_sigma column instead), V ell_ratio is "
            "printed to 3 decimals, and the quoted phi values of IV, V, VI "
            "fit the computed ones only after a cyclic shift "
            "(1.44, 0.68, 1.39 in well order)"
        )
    else:
        detail = f"all {total} sub-checks within gates"
    acceptance(1, not failures, detail)


def test_criterion_02_transparency_at_unitary_points(acceptance):
    worst_tau = 0.0
    worst_ell = 0.0
    for label in ("I", "II", "III"):
        well = REFERENCE_WELLS[label]
        ladder = sigma_peak_positions(well, 10.0)
        assert ladder.size > 0
        worst_tau = max(worst_tau, float(np.max(np.abs(time_delay(well, ladder)))))
        worst_ell = max(
            worst_ell,
            float(np.max(np.abs(traversal_length(well, ladder) - 2.0 * well.a))),
        )
    acceptance(
        2,
        worst_tau < 1e-8 and worst_ell < 1e-8,
        f"wells I-III, every analytic sigma_phi peak up to k=10: "
        f"max |tau| = {worst_tau:.2e}, max |l - 2a| = {worst_ell:.2e} (gate 1e-8)",
    )


def test_criterion_03_trapping_traversal_identity(acceptance):
    # a P = l - sin(2 phi)/k; sin(2 phi) is pi-periodic, so the principal
    # branch serves for every branch
    rng = np.random.default_rng(3)
    worst = 0.0
    for label in ("I", "II", "V"):
        well = REFERENCE_WELLS[label]
        ks = rng.uniform(1e-3, 10.0, 10_000)
        phi = phase_resonant_principal(well, ks)
        residual = (
            well.a * trapping_probability(well, ks)
            - traversal_length(well, ks)
            + np.sin(2.0 * phi) / ks
        )
        worst = max(worst, float(np.max(np.abs(residual))))
    acceptance(
        3,
        worst < 1e-10,
        f"wells I, II, V at 10^4 random k in (1e-3, 10) each: "
        f"max |a P - l + sin(2 phi)/k| = {worst:.2e} (gate 1e-10)",
    )


def test_criterion_04_quadrature_oracle(acceptance):
    rng = np.random.default_rng(4)
    worst = 0.0
    for well in REFERENCE_WELLS.values():
        ks = rng.uniform(1e-3, 10.0, 1000)
        closed = trapping_probability(well, ks)
        integrated = trapping_probability_quadrature(well, ks)
        worst = max(worst, float(np.max(np.abs(closed - integrated))))
    acceptance(
        4,
        worst < 1e-9,
        f"all 7 wells at 10^3 random k each: max |P_closed - P_quadrature| "
        f"= {worst:.2e} (gate 1e-9)",
    )


def test_criterion_05_ell_is_twice_the_phase_slope(acceptance):
    # centered difference of the unwrapped phi; branch offsets cancel in
    # the difference, so wrapping the principal-value step suffices
    h = 1e-6
    rng = np.random.default_rng(5)
    worst = 0.0
    for label in ("I", "II", "V"):
        well = REFERENCE_WELLS[label]
        ks = rng.uniform(1e-3 + 10 * h, 10.0, 2000)
        step = (
            phase_resonant_principal(well, ks + h)
            - phase_resonant_principal(well, ks - h)
        )
        step = np.remainder(step + np.pi, 2.0 * np.pi) - np.pi
        derivative = step / (2.0 * h)
        slope = traversal_length(well, ks) / 2.0
        rel = np.abs(derivative - slope) / np.abs(slope)
        worst = max(worst, float(np.max(rel)))
    # spot cross-check through the walked branch itself
    well = REFERENCE_WELLS["I"]
    for k in rng.uniform(0.1, 6.0, 8):
        walked = (phase_resonant(well, float(k) + h) -
                  phase_resonant(well, float(k) - h)) / (2.0 * h)
        slope = float(traversal_length(well, k)) / 2.0
        assert walked == pytest.approx(slope, rel=1e-4)
    acceptance(
        5,
        worst < 1e-5,
        f"wells I, II, V at 2000 random k each: max rel err of "
        f"[phi(k+h) - phi(k-h)]/2h against l/2 = {worst:.2e} "
        f"(h = 1e-6, gate 1e-5)",
    )


def test_criterion_06_bound_state_counts(acceptance):
    got = {}
    ok = True
    for label, well in REFERENCE_WELLS.items():
        kappas = bound_states(well)
        got[label] = len(kappas)
        ok = ok and len(kappas) == EXPECTED_BOUND_COUNTS[label] == math.floor(well.qb)
    acceptance(
        6,
        ok,
        "bound-state counts (I..VII) = "
        + ", ".join(str(got[label]) for label in REFERENCE_WELLS)
        + " match floor(qb) = (3, 17, 3, 12, 12, 12, 13)",
    )


def test_criterion_07_width_scaling_maps_the_record(acceptance):
    rec_i = first_resonance(REFERENCE_WELLS["I"])
    rec_iii = first_resonance(REFERENCE_WELLS["III"])
    pairs = {
        "k_star": (rec_iii.k_star, rec_i.k_star / 5.0),
        "k_tau": (rec_iii.k_tau, rec_i.k_tau / 5.0),
        "k_p": (rec_iii.k_p, rec_i.k_p / 5.0),
        "k_sigma": (rec_iii.k_sigma, rec_i.k_sigma / 5.0),
        "phi_at_kstar": (rec_iii.phi_at_kstar, rec_i.phi_at_kstar),
        "ell_ratio": (rec_iii.ell_ratio, rec_i.ell_ratio),
        "kappa": (rec_iii.kappa, rec_i.kappa / 5.0),
        "modulus": (rec_iii.modulus, rec_i.modulus / 5.0),
    }
    worst = max(abs(x - y) for x, y in pairs.values())
    flags = rec_i.n == rec_iii.n and rec_i.tau_boundary == rec_iii.tau_boundary
    acceptance(
        7,
        worst < 1e-8 and flags,
        f"well I scaled by 5 against well III, every record field: "
        f"max deviation = {worst:.2e} (gate 1e-8)",
    )


def test_criterion_08_sweep_sawtooth(acceptance):
    points = alpha_sweep(5.0, 60.0, 1101)  # step 0.05
    alphas = np.array([p.alpha for p in points])
    ratios = np.array([p.ell_ratio_1 for p in points])
    step = alphas[1] - alphas[0]
    min_ratio = float(ratios.min())
    drops = np.flatnonzero(np.diff(ratios) < -0.01)
    drop_alphas = alphas[drops]
    thresholds = np.array(
        [(m - 0.5) * math.pi for m in range(1, 40)
         if 5.0 <= (m - 0.5) * math.pi <= 60.0]
    )
    aligned = (
        drop_alphas.size == thresholds.size
        and bool(
            np.all(
                np.min(np.abs(drop_alphas[:, None] - thresholds[None, :]), axis=1)
                <= step + 1e-9
            )
        )
    )
    acceptance(
        8,
        min_ratio >= 1.0 - 1e-12 and aligned,
        f"alpha in [5, 60] step 0.05: min ratio = {min_ratio:.12f} (>= 1 - 1e-12); "
        f"{drop_alphas.size} sawtooth drops line up with the "
        f"{thresholds.size} integer qb crossings within one step",
    )


def test_criterion_09_well_v_edge_delay(acceptance):
    well = REFERENCE_WELLS["V"]
    t1 = float(time_delay(well, 0.001))
    t2 = float(time_delay(well, 0.01))
    t3 = float(time_delay(well, 0.05))
    rec = first_resonance(well)
    ok = t1 > t2 > t3 and rec.tau_boundary and rec.k_tau == 0.0
    acceptance(
        9,
        ok,
        f"well V: tau(0.001) = {t1:.2f} > tau(0.01) = {t2:.2f} > "
        f"tau(0.05) = {t3:.2f}, and the record pins k_tau to the k -> 0 edge",
    )


def test_criterion_10_pole_peak_correspondence(acceptance):
    rec = first_resonance(REFERENCE_WELLS["I"])
    d_modulus = abs(rec.k_sigma - rec.modulus)
    d_kappa = abs(rec.k_star - rec.kappa)
    acceptance(
        10,
        d_modulus < 1.5e-3 and d_kappa < 1.5e-3,
        f"well I: |k_sigma - |K|| = {d_modulus:.2e}, |k_star - Re K| = "
        f"{d_kappa:.2e} (gate 1.5e-3)",
    )
