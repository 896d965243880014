"""Command-line entry point: ``qeraser {sweep,analyze,theory,renyi,cnot-ablation}``.

Exit codes: 0 success, 2 invalid run specification, 3 I/O failure.
"""
from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from . import harness
from .harness import parse_angle, parse_angle_list

OUTPUT_DIR_ENV = "QERASER_OUTPUT_DIR"

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_IO = 3


class InvalidSpec(ValueError):
    pass


EXACT = "exact"


def _shots(text: str):
    if text.lower() == EXACT:
        return EXACT
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"shots must be a positive integer or 'exact', got {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError("shots must be positive")
    return value


def _angle(text: str) -> float:
    try:
        return parse_angle(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _angles(text: str) -> List[float]:
    try:
        return parse_angle_list(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--phi", type=_angles, default=None,
                        help="entangling angles, e.g. '0:2pi:0.1pi' or '0,0.25pi'")
    common.add_argument("--phi-prime", type=_angles, default=None,
                        help="d-wire analysis angles (default 0,0.25pi,0.5pi)")
    common.add_argument("--theta-step", type=_angle, default=harness.DEFAULT_THETA_STEP,
                        help="theta grid resolution (default 0.04pi)")
    common.add_argument("--shots", type=_shots, default=None,
                        help="shots per setting, or 'exact' for Born probabilities")
    common.add_argument("--configuration", choices=("closed", "open", "both"), default="both")
    common.add_argument("--delay-dt", type=int, default=0, help="d-wire delay in units of dt")
    common.add_argument("--noise-preset", default=None,
                        help="auckland-pair-i, auckland-pair-ii or toronto-pair-iii")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", default=None, help="output file (default: stdout or $%s)" % OUTPUT_DIR_ENV)
    common.add_argument("--format", choices=("csv", "json"), default="csv")

    parser = argparse.ArgumentParser(prog="qeraser", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sweep", parents=[common], help="sample raw counts over theta sweeps")
    p.add_argument("--workers", type=int, default=None, help="threads per theta sweep")
    p.add_argument("--theta", type=_angles, default=None,
                   help="explicit phase shifts instead of the --theta-step grid")

    p = sub.add_parser("analyze", parents=[common], help="quantifiers from a raw counts file")
    p.add_argument("input", help="raw counts file written by 'sweep'")
    p.add_argument("--perspective", default="total,sub0d,sub1d,average",
                   help="comma-separated subset of total,sub0d,sub1d,average")
    p.add_argument("--estimator", choices=("maxmin", "cosfit"), default="maxmin")
    p.add_argument("--theory", action="store_true", help="append theoretical columns")
    p.add_argument("--visibility-only", action="store_true",
                   help="allow files without open-configuration rows")

    sub.add_parser("theory", parents=[common], help="closed-form quantifiers on the angle grid")

    p = sub.add_parser("renyi", parents=[common], help="randomized-measurement purity at slice 2")
    p.add_argument("--unitaries", type=int, default=500)

    p = sub.add_parser("cnot-ablation", parents=[common],
                       help="sub-1d visibility with and without the CNOT (Ry(phi) removed)")
    p.add_argument("--cnot-error", type=float, default=None,
                   help="override the preset's CNOT error rate")
    p.add_argument("--arm", choices=("both", "with-cnot", "without-cnot"), default="both")
    return parser


def _output_path(args) -> Optional[Path]:
    if args.out:
        return Path(args.out)
    env = os.environ.get(OUTPUT_DIR_ENV)
    if env:
        return Path(env) / f"{args.command}.{args.format}"
    return None


def _emit(text: str, args) -> None:
    path = _output_path(args)
    if path is None:
        sys.stdout.write(text)
        return
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        fh.write(text)


def _shot_count(args, default):
    """Resolve ``--shots``; None means exact probabilities."""
    if args.shots == EXACT:
        return None
    return default if args.shots is None else args.shots


def _run(args) -> str:
    phi = args.phi
    phi_prime = args.phi_prime or parse_angle_list(harness.DEFAULT_PHI_PRIME)

    if args.command == "sweep":
        spec = harness.RunSpec(
            phi_list=phi or parse_angle_list(harness.DEFAULT_PHI), phi_prime_list=phi_prime,
            theta_resolution=args.theta_step,
            shots=_shot_count(args, 5000),
            configuration=args.configuration, delay_dt=args.delay_dt,
            noise_preset=args.noise_preset, seed=args.seed, output_path=args.out,
            workers=args.workers, theta_list=args.theta)
        return harness.dumps(harness.raw_rows(harness.run_sweep(spec)),
                             harness.RAW_COLUMNS, args.format)

    if args.command == "analyze":
        perspectives = [p.strip() for p in args.perspective.split(",") if p.strip()]
        bad = [p for p in perspectives if p not in harness.ANALYSIS_PERSPECTIVES]
        if bad:
            raise InvalidSpec(f"unknown perspectives {bad}")
        with open(args.input) as fh:
            counts = harness.counts_from_rows(harness.loads(fh.read()))
        rows = harness.analyze_counts(counts, perspectives, args.estimator, args.theory,
                                      require_open=not args.visibility_only)
        return harness.dumps(rows, harness.ANALYSIS_COLUMNS, args.format)

    if args.command == "theory":
        rows = harness.theory_rows(phi or parse_angle_list(harness.DEFAULT_PHI), phi_prime)
        return harness.dumps(rows, harness.ANALYSIS_COLUMNS, args.format)

    if args.command == "renyi":
        if args.shots == EXACT:
            raise InvalidSpec("the randomized-measurement estimator needs a finite shot count")
        plan = dict(n_unitaries=args.unitaries, n_shots_per_unitary=_shot_count(args, 512),
                    seed=args.seed)
        rows = harness.purity_rows(phi or parse_angle_list("0:pi:0.1pi"), plan)
        return harness.dumps(rows, harness.PURITY_COLUMNS, args.format)

    if args.command == "cnot-ablation":
        arms = ("without-cnot", "with-cnot") if args.arm == "both" else (args.arm,)
        rows = harness.cnot_ablation_rows(
            args.phi_prime or parse_angle_list("0:2pi:0.1pi"),
            noise_preset=args.noise_preset or "auckland-pair-ii", cnot_error=args.cnot_error,
            shots=_shot_count(args, None), theta_resolution=args.theta_step, seed=args.seed, arms=arms)
        return harness.dumps(rows, harness.ABLATION_COLUMNS, args.format)

    raise InvalidSpec(f"unknown command {args.command!r}")


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and EXIT_INVALID
    try:
        text = _run(args)
    except (ValueError, KeyError) as exc:
        print(f"qeraser: invalid run specification: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"qeraser: I/O failure: {exc}", file=sys.stderr)
        return EXIT_IO
    try:
        _emit(text, args)
    except OSError as exc:
        print(f"qeraser: I/O failure: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
