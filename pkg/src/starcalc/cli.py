"""
Command-line runner: one subcommand per experiment, CSV out.

Exit codes: 0 success, 2 usage error, 3 configuration error (CFL
violation, T/dt not an integer, ...).
"""
from __future__ import annotations

import argparse
import sys

from .experiments import EXPERIMENTS, ConfigError, ExperimentConfig, emit_csv, run_experiment

EXIT_OK, EXIT_USAGE, EXIT_CONFIG = 0, 2, 3


def _norm(text):
    if text not in ("1", "2", "inf"):
        raise argparse.ArgumentTypeError("norm must be 1, 2 or inf")
    return text


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--a", type=float, help="Gaussian width parameter a in exp(-a x^2)")
    common.add_argument("--k", type=float, help="wavenumber")
    speed = common.add_mutually_exclusive_group()
    speed.add_argument("--c", type=float, help="constant wave speed (same as --speed const:<c>)")
    speed.add_argument("--speed", help="const:<v> or sinusoid:<base>:<amp>")
    common.add_argument("--dx", type=float, help="grid spacing (coarsest level for advect-converge)")
    common.add_argument("--dt", type=float, help="time step (coarsest level for advect-converge)")
    common.add_argument("--T", type=float, help="final time; T/dt must be an integer")
    common.add_argument("--norm", type=_norm, default="inf", help="1, 2 or inf (default inf)")
    common.add_argument("--seed", type=int, default=0, help="seed for randomised experiments")
    common.add_argument("--out", help="CSV output path (default: stdout)")

    parser = argparse.ArgumentParser(prog="starcalc", description="Multiplicative-calculus wave experiments.")
    sub = parser.add_subparsers(dest="experiment", required=True, metavar="EXPERIMENT")
    for name, fn in EXPERIMENTS.items():
        doc = (fn.__doc__ or "").strip().splitlines()
        sub.add_parser(name, parents=[common], help=doc[0] if doc else None)
    return parser


def config_from_args(args):
    speed = args.speed if args.speed is not None else (None if args.c is None else f"const:{args.c!r}")
    return ExperimentConfig(
        experiment=args.experiment, a=args.a, k=args.k, speed=speed, dx=args.dx, dt=args.dt, T=args.T,
        norm=args.norm, seed=args.seed, out=args.out,
    )


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    cfg = config_from_args(args)
    try:
        report = run_experiment(cfg)
    except ConfigError as exc:
        print(f"starcalc: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    text = emit_csv(report, cfg.out)
    if cfg.out is None:
        sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
