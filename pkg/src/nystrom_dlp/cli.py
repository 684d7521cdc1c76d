"""Command-line interface: ``nystrom-dlp <command> [options]``.

Exit codes: 0 success, 2 usage error, 3 numerical failure.
"""

import argparse
import json
import math
import os
import sys
import time
from pathlib import Path

from . import __version__
from .contour import make_curve
from .errors import InvalidArgumentError, NumericalFailureError, SingularMatrixError
from .localop import sigma_min_study
from .mellin import fredholm_profile, fredholm_scan, mellin_transform_check
from .nystrom import condition_of, convergence_study, solve_dlp
from .sweep import PRESETS, SweepConfig, run_sweep

EXIT_USAGE = 2
EXIT_NUMERICAL = 3
WORKERS_ENV = "NYSTROM_DLP_WORKERS"


class UsageError(Exception):
    pass


def parse_angle(text):
    """Parse ``"0.3pi"`` (multiple of pi) or a plain number (radians)."""
    t = str(text).strip().lower()
    try:
        if t.endswith("pi"):
            coeff = t[:-2].rstrip("*") or "1"
            return float(coeff) * math.pi
        return float(t)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid angle {text!r}") from None


def parse_angle_over_pi(text):
    return parse_angle(text) / math.pi


def parse_int_list(text):
    try:
        return [int(x) for x in str(text).split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid integer list {text!r}") from None


def parse_float_list(text):
    try:
        return [float(x) for x in str(text).split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid number list {text!r}") from None


def _default_workers():
    try:
        return max(1, int(os.environ.get(WORKERS_ENV, "1")))
    except ValueError:
        return 1


def _fmt(x):
    return f"{x:.17g}"


def _write_text(path, text):
    if path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _write_manifest(args, outputs, wall_time, extra=None):
    outputs = [p for p in outputs if p and p != "-"]
    if not outputs:
        return
    config = {k: v for k, v in vars(args).items() if k != "func"}
    manifest = {
        "command": args.command,
        "config": config,
        "version": __version__,
        "wall_time": wall_time,
        "outputs": outputs,
    }
    if extra:
        manifest.update(extra)
    Path(str(outputs[0]) + ".manifest.json").write_text(json.dumps(manifest, indent=2, default=str))


def _curve(args):
    if args.curve in ("l1", "l2") and args.omega is None:
        raise UsageError(f"--omega is required for curve {args.curve}")
    return make_curve(args.curve, None if args.omega is None else parse_angle(args.omega), args.a, args.b)


def cmd_solve(args):
    contour = _curve(args)
    sol = solve_dlp(contour, args.rhs, args.n, args.d)
    s = sol.disc.target_params
    lines = ["s,Re_x,Im_x"] + [f"{_fmt(si)},{_fmt(x.real)},{_fmt(x.imag)}" for si, x in zip(s, sol.values)]
    _write_text(args.out, "\n".join(lines) + "\n")
    return [args.out]


def cmd_converge(args):
    if len(set(args.n_list)) != len(args.n_list):
        raise UsageError(f"duplicate values in --n-list {args.n_list}")
    rows = convergence_study(_curve(args), args.rhs, args.d, args.n_list, workers=args.workers)
    text = "n,E_n\n" + "".join(f"{n},{_fmt(e)}\n" for n, e in rows)
    _write_text(args.out, text)
    if args.out != "-":
        for n, e in rows:
            print(f"n={n:<6d} E_n={e:.6g}")
    return [args.out]


def cmd_cond(args):
    kappa = condition_of(_curve(args), args.n, args.d)
    print(f"{kappa:.6g}")
    return []


def cmd_sweep(args):
    kwargs = dict(curve=args.curve, n=args.n, d=args.d, kappa_threshold=args.threshold,
                  width_floor=args.floor, max_rounds=args.max_rounds, workers=args.workers)
    if args.lo is not None:
        kwargs["lo"] = args.lo
    if args.hi is not None:
        kwargs["hi"] = args.hi
    if args.step is not None:
        kwargs["step"] = args.step
    config = SweepConfig.preset(args.preset, **kwargs) if args.step is None else SweepConfig(**kwargs)
    report = run_sweep(config)
    _write_text(args.out, report.samples_csv())
    if args.report:
        Path(args.report).write_text(report.to_json())
    for p in report.peaks:
        print(f"omega={p.omega_over_pi:.8f}pi kappa={p.kappa_peak:.6g} status={p.status}")
    return [args.out, args.report]


def cmd_fredholm(args):
    omega = parse_angle(args.omega)
    value, z = fredholm_scan(omega, args.z_max, args.z_steps)
    print(f"min|det|={value:.6g} argmin_z={z:.6g}")
    if args.csv:
        zs, absdet = fredholm_profile(omega, args.z_max, args.z_steps)
        _write_text(args.csv, "z,absdet\n" + "".join(f"{_fmt(a)},{_fmt(b)}\n" for a, b in zip(zs, absdet)))
    return [args.csv]


def cmd_local_op(args):
    study = sigma_min_study(parse_angle(args.omega), args.d, args.N)
    text = "N,sigma_min,cond,stabilized\n" + "".join(
        f"{row.N},{_fmt(row.sigma_min)},{_fmt(row.cond)},{str(study.stabilized).lower()}\n"
        for row in study.rows
    )
    _write_text(args.out, text)
    return [args.out]


def cmd_mellin_check(args):
    dev = mellin_transform_check(parse_angle(args.omega), args.z)
    print(f"max deviation={dev:.6g}")
    return []


def _add_curve_args(p, rhs=True):
    p.add_argument("--curve", choices=["l1", "l2", "ellipse"], default="l1")
    p.add_argument("--omega", help="opening angle, radians or e.g. 0.3pi")
    p.add_argument("--a", type=float, default=1.0, help="ellipse semi-axis (x)")
    p.add_argument("--b", type=float, default=1.0, help="ellipse semi-axis (y)")
    if rhs:
        p.add_argument("--rhs", choices=["f1", "f2", "const2"], default="f1")


def build_parser():
    parser = argparse.ArgumentParser(prog="nystrom-dlp", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve the Nystrom system and write nodal values")
    _add_curve_args(p)
    p.add_argument("--n", type=int, default=64)
    p.add_argument("--d", type=int, default=16)
    p.add_argument("--out", default="solution.csv")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("converge", help="relative errors E_n between n and 2n solutions")
    _add_curve_args(p)
    p.add_argument("--d", type=int, default=16)
    p.add_argument("--n-list", type=parse_int_list, default=[32, 96, 256])
    p.add_argument("--workers", type=int, default=_default_workers())
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_converge)

    p = sub.add_parser("cond", help="condition number of the Nystrom matrix")
    _add_curve_args(p, rhs=False)
    p.add_argument("--n", type=int, default=128)
    p.add_argument("--d", type=int, default=16)
    p.set_defaults(func=cmd_cond)

    p = sub.add_parser("sweep", help="condition-number sweep for critical angles")
    p.add_argument("--curve", choices=["l1", "l2"], default="l1")
    p.add_argument("--preset", choices=sorted(PRESETS), default="paper")
    p.add_argument("--lo", type=parse_angle_over_pi, help="lower angle, e.g. 0.1pi")
    p.add_argument("--hi", type=parse_angle_over_pi, help="upper angle, e.g. 1.9pi")
    p.add_argument("--step", type=parse_angle_over_pi, help="grid step, e.g. 0.001pi (overrides preset)")
    p.add_argument("--n", type=int, default=128)
    p.add_argument("--d", type=int, default=16)
    p.add_argument("--threshold", type=float, default=1e16)
    p.add_argument("--floor", type=parse_angle_over_pi, default=1e-6, help="refinement width floor")
    p.add_argument("--max-rounds", type=int, default=40)
    p.add_argument("--workers", type=int, default=_default_workers())
    p.add_argument("--out", default="sweep.csv")
    p.add_argument("--report", default=None, help="JSON report path")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("fredholm", help="minimum |det| of the corner symbol")
    p.add_argument("--omega", required=True)
    p.add_argument("--z-max", type=float, default=40.0)
    p.add_argument("--z-steps", type=int, default=4001)
    p.add_argument("--csv", default=None, help="write z,absdet profile")
    p.set_defaults(func=cmd_fredholm)

    p = sub.add_parser("local-op", help="sigma_min of finite wedge sections")
    p.add_argument("--omega", required=True)
    p.add_argument("--d", type=int, default=16)
    p.add_argument("--N", type=parse_int_list, default=[16, 32, 64])
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_local_op)

    p = sub.add_parser("mellin-check", help="numerical Mellin transform of k_omega vs symbol")
    p.add_argument("--omega", required=True)
    p.add_argument("--z", type=parse_float_list, default=[-2.0, -1.0, 0.0, 1.0, 2.0])
    p.set_defaults(func=cmd_mellin_check)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.perf_counter()
    try:
        outputs = args.func(args)
    except (UsageError, InvalidArgumentError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (SingularMatrixError, NumericalFailureError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    extra = {"omega_rad": parse_angle(args.omega)} if getattr(args, "omega", None) else None
    _write_manifest(args, outputs, time.perf_counter() - start, extra)
    return 0


if __name__ == "__main__":
    sys.exit(main())
