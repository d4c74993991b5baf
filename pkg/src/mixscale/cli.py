"""
Command-line front end.

Exit codes: 0 success, 1 I/O or file-format error, 2 invalid arguments or
violated preconditions, 3 anything unexpected.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time

import numpy as np

from . import __version__
from .averaging import ball_average, ball_average_at, sup_average_profile
from .errors import FieldFormatError, ValidationError
from .fields import cosine_field, defect_field, random_meanzero, stripe_field
from .grid import ScalarField, load_field, store_field, sup_norm
from .scales import (
    DEFAULT_SCAN_COUNT,
    SCAN_MARGIN,
    check_kappa,
    geometric_mixing_scale,
    prior_sg_bound,
    radius_scan,
    remark_identity_check,
    sg_upper_bound,
    strong_geometric_mixing_scale,
    verify_crippa_implication,
)
from .spectral import sobolev_norm
from .transport import ShearProtocol, simulate

EXIT_OK, EXIT_IO, EXIT_VALIDATION, EXIT_INTERNAL = 0, 1, 2, 3

# Reference values quoted for the defect field with eps = 0.05.
DEFECT_EPS = 0.05
DEFECT_KAPPA_REF = 0.0079162
DEFECT_PEAK_REF = 0.0087
KAPPA_TOL = 1e-6
SUP_SLACK = 1.02
PEAK_RTOL = 0.03
MIN_VIOLATING_CELLS = 10
REFERENCE_N = 1024


def _fmt(x) -> str:
    return "nan" if x is None else format(x, ".17g")


# -- defect example ----------------------------------------------------------

def defect_report(eps: float = DEFECT_EPS, n: int = REFERENCE_N) -> dict:
    """Reproduce the disk-defect counterexample and grade each number.

    The large radius is ``1/2 + eps``: a ball of that radius about (1, 1/2)
    just contains the disk and its periodic image.  The continuum value of
    that average is reported next to the grid value; for ``eps = 0.05`` the
    quoted reference values are used for grading.
    """
    f = defect_field(eps, n)
    kappa = f.meta["kappa"]
    r_small, r_large = 0.5, 0.5 + eps
    disk = math.pi * eps * eps
    ball = math.pi * r_large * r_large
    continuum_peak = abs(2 * disk - kappa * (ball - 2 * disk)) / ball

    f_small = float(np.max(np.abs(ball_average(f, r_small).values)))
    large_avg = ball_average(f, r_large).values
    peak = ball_average_at(f, r_large, (1.0, 0.5))
    violating = int(np.count_nonzero(np.abs(large_avg) > kappa * sup_norm(f)))

    reference = eps == DEFECT_EPS
    peak_ref = DEFECT_PEAK_REF if reference else continuum_peak
    checks = {
        "kappa": abs(kappa - DEFECT_KAPPA_REF) <= KAPPA_TOL if reference else True,
        "sup_average_small_radius": f_small <= SUP_SLACK * kappa,
        "average_at_(1,1/2)": abs(peak - peak_ref) <= PEAK_RTOL * peak_ref and peak > kappa,
        "violating_cells": violating >= MIN_VIOLATING_CELLS,
    }
    passed = all(checks.values())
    return {
        "eps": eps,
        "n": n,
        "kappa": kappa,
        "background": f.meta["background"],
        "mean_correction": f.meta["mean_correction"],
        "r_small": r_small,
        "r_large": r_large,
        "sup_average_small_radius": f_small,
        "average_at_(1,1/2)": peak,
        "average_at_(1,1/2)_reference": peak_ref,
        "average_at_(1,1/2)_continuum": continuum_peak,
        "violating_cells": violating,
        "checks": checks,
        "passed": passed,
        "defect_present": continuum_peak > kappa,
        "resolution_insufficient": (not passed) and abs(peak - continuum_peak) > PEAK_RTOL * continuum_peak,
    }


def _print_defect_report(rep: dict, out) -> None:
    print(f"defect field: eps={rep['eps']:g}  N={rep['n']}", file=out)
    rows = [
        ("kappa = pi eps^2/(1 - pi eps^2)", rep["kappa"], "kappa"),
        ("background level", rep["background"], None),
        (f"sup_x |A_r rho|, r={rep['r_small']:g}", rep["sup_average_small_radius"], "sup_average_small_radius"),
        (f"A_r rho(1, 1/2), r={rep['r_large']:g}", rep["average_at_(1,1/2)"], "average_at_(1,1/2)"),
        ("  continuum value", rep["average_at_(1,1/2)_continuum"], None),
        (f"cells with |A_r rho| > kappa, r={rep['r_large']:g}", rep["violating_cells"], "violating_cells"),
    ]
    for label, value, key in rows:
        status = "" if key is None else ("pass" if rep["checks"][key] else "FAIL")
        print(f"  {label:<44} {value:>14.8g}  {status}", file=out)
    verdict = "PASS" if rep["passed"] else "FAIL"
    if rep["resolution_insufficient"]:
        verdict += " (resolution insufficient)"
    elif not rep["defect_present"]:
        verdict += " (no defect for this eps: continuum average at (1, 1/2) is below kappa)"
    print(f"overall: {verdict}", file=out)


# -- helpers -----------------------------------------------------------------

def _kappas(values) -> list[float]:
    return [check_kappa(k) for k in values]


def _radii_from_args(args, f: ScalarField, kappas) -> np.ndarray:
    rmin = args.rmin if args.rmin is not None else f.h
    rmax = args.rmax if args.rmax is not None else SCAN_MARGIN * sg_upper_bound(f.side_length, 2, min(kappas))
    return radius_scan(rmin, rmax, args.rcount, args.rspacing)


def _add_radius_args(p) -> None:
    p.add_argument("--rmin", type=float, help="smallest scanned radius (default: cell width)")
    p.add_argument("--rmax", type=float, help="largest scanned radius (default: 1.05 x certification bound)")
    p.add_argument("--rcount", type=int, default=DEFAULT_SCAN_COUNT)
    p.add_argument("--rspacing", choices=("log", "linear"), default="log")


def _make_field(args) -> ScalarField:
    kind = args.kind
    if kind == "defect":
        return defect_field(args.eps, args.n)
    if kind == "stripe":
        return stripe_field(args.m, args.n, args.side_length)
    if kind == "cosine":
        return cosine_field(args.m, args.n, args.side_length)
    if kind == "random":
        return random_meanzero(args.seed, args.decay, args.n, args.side_length)
    if kind == "zero":
        return ScalarField(np.zeros((args.n, args.n)), args.side_length)
    raise ValidationError(f"unknown field kind {kind!r}")


def _add_field_args(p, required_output: bool) -> None:
    p.add_argument("--kind", choices=("defect", "stripe", "cosine", "random", "zero"), default="stripe")
    p.add_argument("--n", type=int, default=256)
    p.add_argument("--side-length", type=float, default=1.0)
    p.add_argument("--eps", type=float, default=DEFECT_EPS)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--decay", type=float, default=1.0)
    if required_output:
        p.add_argument("--output", required=True)


# -- subcommands -------------------------------------------------------------

def cmd_make_field(args, out) -> int:
    f = _make_field(args)
    store_field(f, args.output)
    print(f"wrote {args.kind} field N={f.n} to {args.output}", file=out)
    return EXIT_OK


def cmd_norm(args, out) -> int:
    f = load_field(args.input)
    print(_fmt(sobolev_norm(f, args.s)), file=out)
    return EXIT_OK


def cmd_scales(args, out) -> int:
    f = load_field(args.input)
    kappas = _kappas(args.kappa)
    radii = _radii_from_args(args, f, kappas)
    profile = sup_average_profile(f, radii)
    reports = []
    for k in kappas:
        g = geometric_mixing_scale(profile, k)
        sg = strong_geometric_mixing_scale(profile, k)
        reports.append(
            {
                "kappa": k,
                "G": g.scale,
                "SG": sg.scale,
                "G_held_at_max": g.held_at_max,
                "SG_certified": sg.certified,
                "certification_bound": sg_upper_bound(f.side_length, 2, k),
            }
        )
        print(
            f"kappa={k:g}  G={_fmt(g.scale)}  SG={_fmt(sg.scale)}  "
            f"certified={'yes' if sg.certified else 'no'}",
            file=out,
        )
    if args.json:
        doc = {
            "input": args.input,
            "sup_norm": profile.sup_norm,
            "radii": profile.radii.tolist(),
            "profile": profile.values.tolist(),
            "scales": reports,
        }
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, indent=2)
    return EXIT_OK


def cmd_defect_report(args, out) -> int:
    rep = defect_report(args.eps, args.n)
    _print_defect_report(rep, out)
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump(rep, fh, indent=2)
    return EXIT_OK


def cmd_crippa_check(args, out) -> int:
    f = load_field(args.input)
    rep = verify_crippa_implication(f, args.kappa, args.r, args.delta)
    print(
        f"kappa={rep.kappa:g} r={rep.r:g} delta={rep.delta:.6g}\n"
        f"  sup |A_delta|/||f|| = {rep.small_ball_sup / max(rep.sup_norm, 1e-300):.6g}  "
        f"hypothesis (<= kappa/2): {rep.hypothesis_holds}\n"
        f"  sup |A_r|/||f||     = {rep.large_ball_sup / max(rep.sup_norm, 1e-300):.6g}  "
        f"conclusion (<= kappa):   {rep.conclusion_holds}\n"
        f"  implication {'VIOLATED' if rep.violated else 'consistent'}",
        file=out,
    )
    return EXIT_OK


def cmd_bound(args, out) -> int:
    for k in _kappas(args.kappa):
        b = sg_upper_bound(args.side_length, args.d, k)
        line = f"kappa={k:g}  d={args.d}  bound={_fmt(b)}"
        if args.d == 2:
            lhs, rhs = remark_identity_check(k)
            line += f"  alt_form={_fmt(rhs * args.side_length)}  prior={_fmt(prior_sg_bound(args.side_length, k))}"
        print(line, file=out)
    return EXIT_OK


def cmd_simulate(args, out) -> int:
    protocol = ShearProtocol(args.amplitude, args.tau, args.mode, tuple(args.axes), None if args.limiter == "none" else "fct")
    if args.steps < 0:
        raise ValidationError(f"steps must be nonnegative, got {args.steps}")
    f = load_field(args.input) if args.input else _make_field(args)
    kappas = _kappas(args.kappa)
    radii = _radii_from_args(args, f, kappas)
    started = time.perf_counter()
    series = simulate(f, protocol, args.steps, kappas, radii)
    series.metadata.update(
        {
            "config": {k: v for k, v in vars(args).items() if k != "func"},
            "wall_time": time.perf_counter() - started,
        }
    )
    text = series.to_csv(args.csv)
    if args.json:
        series.to_json(args.json)
    if not args.csv:
        out.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mixscale", description=__doc__.strip().splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("make-field", help="write a canonical field to a MIXFIELD file")
    _add_field_args(p, required_output=True)
    p.set_defaults(func=cmd_make_field)

    p = sub.add_parser("norm", help="homogeneous Sobolev norm of a field")
    p.add_argument("--input", required=True)
    p.add_argument("--s", type=float, default=-1.0)
    p.set_defaults(func=cmd_norm)

    p = sub.add_parser("scales", help="geometric and strong geometric mixing scales")
    p.add_argument("--input", required=True)
    p.add_argument("--kappa", type=float, nargs="+", default=[0.1])
    _add_radius_args(p)
    p.add_argument("--json")
    p.set_defaults(func=cmd_scales)

    p = sub.add_parser("defect-report", help="reproduce the disk-defect counterexample")
    p.add_argument("--eps", type=float, default=DEFECT_EPS)
    p.add_argument("--n", type=int, default=REFERENCE_N)
    p.add_argument("--json")
    p.set_defaults(func=cmd_defect_report)

    p = sub.add_parser("crippa-check", help="test the small-ball to large-ball averaging implication")
    p.add_argument("--input", required=True)
    p.add_argument("--kappa", type=float, required=True)
    p.add_argument("--r", type=float, required=True)
    p.add_argument("--delta", type=float, help="small radius (default kappa*r/12)")
    p.set_defaults(func=cmd_crippa_check)

    p = sub.add_parser("bound", help="closed-form radius bound for the strong scale")
    p.add_argument("--kappa", type=float, nargs="+", required=True)
    p.add_argument("--side-length", type=float, default=1.0)
    p.add_argument("--d", type=int, default=2)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("simulate", help="alternating sine-shear mixing run; emits CSV/JSON time series")
    p.add_argument("--input", help="initial MIXFIELD file (default: build one from --kind etc.)")
    _add_field_args(p, required_output=False)
    p.add_argument("--amplitude", type=float, default=1.0)
    p.add_argument("--tau", type=float, default=1.0)
    p.add_argument("--mode", type=int, default=1)
    p.add_argument("--axes", nargs="+", choices=("x", "y"), default=["x", "y"])
    p.add_argument("--limiter", choices=("fct", "none"), default="fct")
    p.add_argument("--steps", type=int, default=8)
    p.add_argument("--kappa", type=float, nargs="+", default=[0.1])
    _add_radius_args(p)
    p.add_argument("--csv")
    p.add_argument("--json")
    p.set_defaults(func=cmd_simulate)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (OSError, FieldFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except Exception as exc:  # noqa: BLE001
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    raise SystemExit(main())
