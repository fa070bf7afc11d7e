"""Command-line interface for scans, pole searches, and the reference studies.

Every subcommand computes a tabular dataset and emits it as CSV (default)
or JSON with a stable column set, so identical invocations produce
byte-identical output.  Exit status: 0 on success, 2 for argument
problems (argparse usage errors naming the offending flag), 1 when an
internal numerical procedure fails.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .core import (
    K_MIN,
    NumericalError,
    PotentialWell,
    internal_momentum,
    make_well,
    phase_resonant_principal,
    sigma_phi,
    sigma_theta,
    time_delay,
    trapping_probability,
    traversal_length,
    well_from_alpha,
)
from .peaks import resonance_report
from .poles import PoleSearchConfig, bound_states, find_poles
from . import experiments

__all__ = ["main", "build_parser"]

SCAN_COLUMNS = (
    "k",
    "tau",
    "ell",
    "p_trap",
    "sigma",
    "sigma_theta",
    "sigma_phi",
    "theta_mod_pi",
    "phi_mod_pi",
)


def _fmt_cell(value, digits: int) -> str:
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, str):
        return value
    return format(float(value), f".{digits}g")


def _json_cell(value, digits: int):
    if isinstance(value, (bool, int, np.integer, str)):
        return int(value) if isinstance(value, np.integer) else value
    return float(format(float(value), f".{digits}g"))


def _emit(columns, rows, args) -> None:
    if args.format == "csv":
        lines = [",".join(columns)]
        for row in rows:
            lines.append(",".join(_fmt_cell(v, args.digits) for v in row))
        text = "\n".join(lines) + "\n"
    else:
        objects = [
            {c: _json_cell(v, args.digits) for c, v in zip(columns, row)}
            for row in rows
        ]
        text = json.dumps(objects, indent=2) + "\n"
    if args.output == "-":
        sys.stdout.write(text)
    else:
        Path(args.output).write_text(text, encoding="utf-8")


def _add_output_args(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--format", default="csv", help="output format: csv or json")
    sub.add_argument("--output", default="-", help="output path, - for standard output")
    sub.add_argument("--digits", type=int, default=8, help="significant digits")


def _add_well_args(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--a", type=float, help="well radius")
    sub.add_argument("--v0", type=float, help="well depth")
    sub.add_argument(
        "--alpha", type=float, help="well strength; implies --v0 = alpha^2/(2 a^2)"
    )


def _check_output_args(args, parser: argparse.ArgumentParser) -> None:
    if args.format not in ("csv", "json"):
        parser.error(f"--format must be csv or json, got {args.format!r}")
    if args.digits < 1 or args.digits > 17:
        parser.error(f"--digits must be in [1, 17], got {args.digits}")


def _build_well(args, parser: argparse.ArgumentParser) -> PotentialWell:
    if args.a is None:
        parser.error("--a is required")
    if args.v0 is None and args.alpha is None:
        parser.error("exactly one of --v0 or --alpha is required")
    if args.v0 is not None and args.alpha is not None:
        parser.error("--v0 and --alpha are mutually exclusive")
    try:
        if args.v0 is not None:
            return make_well(args.a, args.v0)
        return well_from_alpha(args.a, args.alpha)
    except ValueError as exc:
        parser.error(f"bad well parameters via --a/--v0/--alpha: {exc}")


def _cmd_scan(args, parser) -> int:
    _check_output_args(args, parser)
    well = _build_well(args, parser)
    if args.kmin < K_MIN:
        parser.error(f"--kmin must be at least {K_MIN:g}, got {args.kmin}")
    if not (args.kmax > args.kmin):
        parser.error("--kmax must exceed --kmin")
    if args.n < 2:
        parser.error(f"--n must be at least 2, got {args.n}")
    ks = np.linspace(args.kmin, args.kmax, args.n)
    pp = phase_resonant_principal(well, ks)
    st = sigma_theta(well, ks)
    rows = list(
        zip(
            ks,
            time_delay(well, ks),
            traversal_length(well, ks),
            trapping_probability(well, ks),
            (np.pi / (ks * ks)) * st,
            st,
            sigma_phi(well, ks),
            np.mod(pp - ks * well.a, np.pi),
            np.mod(pp, np.pi),
        )
    )
    _emit(SCAN_COLUMNS, rows, args)
    return 0


def _cmd_poles(args, parser) -> int:
    _check_output_args(args, parser)
    well = _build_well(args, parser)
    if not (args.re_max > 0):
        parser.error(f"--re-max must be positive, got {args.re_max}")
    if not (args.im_min < 0):
        parser.error(f"--im-min must be negative, got {args.im_min}")
    cfg = PoleSearchConfig(re_max=args.re_max, im_min=args.im_min)
    rows = [
        (p.kappa, p.value.imag, p.modulus, p.kind, p.residual)
        for p in find_poles(well, cfg)
    ]
    _emit(("kappa", "im", "modulus", "kind", "residual"), rows, args)
    return 0


def _cmd_bound_states(args, parser) -> int:
    _check_output_args(args, parser)
    well = _build_well(args, parser)
    rows = [(kb, -0.5 * kb * kb) for kb in bound_states(well)]
    _emit(("kappa_b", "energy_b"), rows, args)
    return 0


def _cmd_report(args, parser) -> int:
    _check_output_args(args, parser)
    well = _build_well(args, parser)
    if not (args.kmax > K_MIN):
        parser.error(f"--kmax must exceed {K_MIN:g}, got {args.kmax}")
    records = resonance_report(well, args.kmax)
    rows = [
        (
            r.n,
            r.k_star,
            r.k_tau,
            r.k_p,
            r.k_sigma,
            r.phi_at_kstar,
            r.ell_ratio,
            r.kappa,
            r.modulus,
            r.tau_boundary,
        )
        for r in records
    ]
    _emit(
        (
            "n",
            "k_star",
            "k_tau",
            "k_p",
            "k_sigma",
            "phi_at_kstar",
            "ell_ratio",
            "kappa",
            "modulus",
            "tau_boundary",
        ),
        rows,
        args,
    )
    if args.figures is not None:
        from .figures import render_figure_panels

        k_lo = min(0.01, args.kmax / 10.0)
        render_figure_panels(well, k_lo, args.kmax, 8192, args.figures)
    return 0


def _cmd_table1(args, parser) -> int:
    _check_output_args(args, parser)
    rows = [
        (
            row.well_label,
            row.a,
            row.v0,
            row.alpha,
            row.qb,
            row.record.k_star,
            row.record.k_tau,
            row.record.k_p,
            row.record.k_sigma,
            row.record.kappa,
            row.record.modulus,
            row.record.ell_ratio,
            row.record.phi_at_kstar,
        )
        for row in experiments.table1()
    ]
    _emit(
        (
            "well",
            "a",
            "v0",
            "alpha",
            "qb",
            "k_star",
            "k_tau",
            "k_p",
            "k_sigma",
            "kappa",
            "modulus",
            "ell_ratio",
            "phi_at_kstar",
        ),
        rows,
        args,
    )
    return 0


def _cmd_sweep(args, parser) -> int:
    _check_output_args(args, parser)
    if not (args.alpha_min > 0) or not (args.alpha_max > args.alpha_min):
        parser.error("--alpha-max must exceed --alpha-min and both must be positive")
    if args.n < 2:
        parser.error(f"--n must be at least 2, got {args.n}")
    if not (args.a > 0):
        parser.error(f"--a must be positive, got {args.a}")
    points = experiments.alpha_sweep(args.alpha_min, args.alpha_max, args.n, args.a)
    rows = [(pt.alpha, pt.k_star_1, pt.ell_ratio_1) for pt in points]
    _emit(("alpha", "k_star_1", "ell_ratio_1"), rows, args)
    return 0


def _cmd_scaling(args, parser) -> int:
    _check_output_args(args, parser)
    well = _build_well(args, parser)
    if not (args.factor > 0):
        parser.error(f"--factor must be positive, got {args.factor}")
    report = experiments.scaling_check(well, args.factor)
    rows = [
        (
            report.factor,
            report.scaled.a,
            report.scaled.v0,
            report.phi_dev,
            report.sigma_phi_dev,
            report.p_dev,
            report.ell_dev,
            report.tau_dev,
            report.record_dev,
        )
    ]
    _emit(
        (
            "factor",
            "a_scaled",
            "v0_scaled",
            "phi_dev",
            "sigma_phi_dev",
            "p_dev",
            "ell_dev",
            "tau_dev",
            "record_dev",
        ),
        rows,
        args,
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sqwell",
        description="s-wave scattering functions, resonances and S-matrix "
        "poles of the attractive square well",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("scan", help="sample the scattering functions on a k grid")
    _add_well_args(p)
    p.add_argument("--kmin", type=float, default=0.01)
    p.add_argument("--kmax", type=float, default=3.5)
    p.add_argument("--n", type=int, default=8192)
    _add_output_args(p)
    p.set_defaults(handler=_cmd_scan)

    p = sub.add_parser("poles", help="find resonance poles in the lower half plane")
    _add_well_args(p)
    p.add_argument("--re-max", type=float, default=4.0)
    p.add_argument("--im-min", type=float, default=-2.0)
    _add_output_args(p)
    p.set_defaults(handler=_cmd_poles)

    p = sub.add_parser("bound-states", help="binding wave numbers and energies")
    _add_well_args(p)
    _add_output_args(p)
    p.set_defaults(handler=_cmd_bound_states)

    p = sub.add_parser("report", help="per-resonance peak positions and poles")
    _add_well_args(p)
    p.add_argument("--kmax", type=float, default=3.5)
    p.add_argument(
        "--figures",
        metavar="DIR",
        help="also render panel figures and their CSV into this directory",
    )
    _add_output_args(p)
    p.set_defaults(handler=_cmd_report)

    p = sub.add_parser("table1", help="first-resonance summary of the reference wells")
    _add_output_args(p)
    p.set_defaults(handler=_cmd_table1)

    p = sub.add_parser("sweep", help="first l-maximum ratio versus strength")
    p.add_argument("--alpha-min", type=float, default=5.0)
    p.add_argument("--alpha-max", type=float, default=60.0)
    p.add_argument("--n", type=int, default=1101)
    p.add_argument("--a", type=float, default=1.0, help="fixed radius")
    _add_output_args(p)
    p.set_defaults(handler=_cmd_sweep)

    p = sub.add_parser("scaling", help="width-scaling consistency report")
    _add_well_args(p)
    p.add_argument("--factor", type=float, default=5.0)
    _add_output_args(p)
    p.set_defaults(handler=_cmd_scaling)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args, parser)
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
