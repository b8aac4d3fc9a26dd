"""Command-line interface: analyze, simulate, steer, recurrence, verify.

Every subcommand reads JSON input files, runs the corresponding library
routine, and writes a single JSON report ``{"command", "inputs_digest",
"result", "tool_version"}`` to ``--out`` (standard output by default).  Exit
codes: 0 on success or a PASS verdict, 1 on any validation error, 2 when
verify reports FAIL or steer fails to converge.  All randomness flows from
explicit seeds, so identical inputs and flags reproduce reports byte for
byte.
"""

import argparse
import os
import sys as _sys
from pathlib import Path

import numpy as np

from . import __version__
from .dynamics import propagate, recurrence_scan
from .fileio import (
    certificate_payload,
    inputs_digest,
    load_schedule,
    load_state,
    load_system,
    recurrence_payload,
    render,
    report_payload,
    trajectory_payload,
    verification_payload,
)
from .orbit import controllability_report
from .steering import SteeringConfig, steer, verify_reachability

__all__ = ["run", "main"]


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="reachctl",
        description=(
            "Controllability toolkit for bilinear systems c' = A c + B c eps(t) "
            "with skew-Hermitian A, B: Lie-algebra analysis, exact simulation, "
            "drift recurrence scans, and optimizer-backed reachability checks."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--system", required=True, help="system file {n, A, B}")
        p.add_argument("--out", default=None, help="report path (default: stdout)")

    p = sub.add_parser("analyze", help="controllability report for a system and state")
    common(p)
    p.add_argument("--state", required=True, help="state file {n, c}")

    p = sub.add_parser("simulate", help="propagate a state under a control schedule")
    common(p)
    p.add_argument("--state", required=True, help="state file {n, c}")
    p.add_argument("--controls", required=True, help="controls file {segments}")
    p.add_argument("--samples-per-segment", type=int, default=10, dest="samples_per_segment")

    p = sub.add_parser("steer", help="synthesize a control toward a target state")
    common(p)
    p.add_argument("--from", required=True, dest="from_state", help="initial state file")
    p.add_argument("--to", required=True, dest="to_state", help="target state file")
    p.add_argument("--segments", type=int, default=SteeringConfig.segments)
    p.add_argument("--horizon", type=float, default=SteeringConfig.horizon)
    p.add_argument("--restarts", type=int, default=SteeringConfig.restarts)
    p.add_argument("--seed", type=int, default=SteeringConfig.seed)
    p.add_argument("--target-distance", type=float, default=SteeringConfig.target_distance, dest="target_distance")
    p.add_argument("--projective", action="store_true", help="optimize the phase-insensitive overlap distance")

    p = sub.add_parser("recurrence", help="first drift-flow return time into a tol-ball")
    common(p)
    p.add_argument("--state", required=True, help="state file {n, c}")
    p.add_argument("--tol", type=float, required=True)
    p.add_argument("--tmax", type=float, required=True, dest="t_max")
    p.add_argument("--dt", type=float, default=1e-3)

    p = sub.add_parser("verify", help="sample orbit targets and steer to each")
    common(p)
    p.add_argument("--state", required=True, help="state file {n, c}")
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--word-length", type=int, default=6, dest="word_length")
    p.add_argument("--seed", type=int, default=7)

    return parser


def _workers() -> int:
    raw = os.environ.get("REACHCTL_THREADS")
    if raw is None:
        return 1
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"REACHCTL_THREADS must be a positive integer, got {raw!r}") from None
    if value < 1:
        raise ValueError(f"REACHCTL_THREADS must be a positive integer, got {raw!r}")
    return value


def _emit(report: dict, out: str | None) -> None:
    text = render(report)
    if out is None:
        _sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def run(argv) -> int:
    """Parse ``argv``, execute one subcommand, and write its report.

    Returns the process exit code instead of raising, so it can be embedded
    and tested without touching the interpreter's exit machinery.
    """
    parser = _build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else 1
        return 0 if code == 0 else 1

    try:
        workers = _workers()
        if args.command == "analyze":
            sys_ = load_system(args.system)
            s0 = load_state(args.state)
            digest = inputs_digest([args.system, args.state])
            result = report_payload(controllability_report(sys_, s0))
            exit_code = 0
        elif args.command == "simulate":
            sys_ = load_system(args.system)
            s0 = load_state(args.state)
            sched = load_schedule(args.controls)
            digest = inputs_digest([args.system, args.state, args.controls])
            traj = propagate(sys_, s0, sched, samples_per_segment=args.samples_per_segment)
            result = trajectory_payload(traj, sys_, sched)
            exit_code = 0
        elif args.command == "steer":
            sys_ = load_system(args.system)
            s0 = load_state(args.from_state)
            target = load_state(args.to_state)
            digest = inputs_digest([args.system, args.from_state, args.to_state])
            cfg = SteeringConfig(
                segments=args.segments,
                horizon=args.horizon,
                restarts=args.restarts,
                target_distance=args.target_distance,
                seed=args.seed,
                phase_sensitive=not args.projective,
            )
            cert = steer(sys_, s0, target, cfg, workers=workers)
            result = certificate_payload(cert)
            exit_code = 0 if cert.converged else 2
        elif args.command == "recurrence":
            sys_ = load_system(args.system)
            s0 = load_state(args.state)
            digest = inputs_digest([args.system, args.state])
            rt = recurrence_scan(sys_, s0, tol=args.tol, t_max=args.t_max, dt=args.dt)
            result = recurrence_payload(rt, args.tol, args.t_max, args.dt)
            exit_code = 0
        else:
            sys_ = load_system(args.system)
            s0 = load_state(args.state)
            digest = inputs_digest([args.system, args.state])
            targets, certs = verify_reachability(
                sys_,
                s0,
                samples=args.samples,
                word_length=args.word_length,
                seed=args.seed,
                workers=workers,
            )
            result = verification_payload(targets, certs)
            exit_code = 0 if result["verdict"] == "PASS" else 2
    except ValueError as exc:
        _sys.stderr.write(f"reachctl {args.command}: error: {exc}\n")
        return 1

    report = {
        "command": args.command,
        "inputs_digest": digest,
        "result": result,
        "tool_version": __version__,
    }
    _emit(report, args.out)
    return exit_code


def main() -> None:
    _sys.exit(run(_sys.argv[1:]))


if __name__ == "__main__":
    main()
