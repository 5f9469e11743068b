"""Command-line front end: knot presets, theta sweeps, pulse tools.

``sweep`` evaluates a braid closure over a grid of angles (degrees on the
interface, radians internally) and writes a CSV with 12-significant-digit
floats, one row per gridpoint.  Output bytes are fully determined by the
braid, grid, epsilon and seed.  The command exits nonzero when any row
violates the oracle tolerance or the measurement error bound, so it can
serve as a CI acceptance gate.
"""

from __future__ import annotations

import argparse
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

from .braid import BraidGenerator, BraidWord, parse_braid
from .invariants import bracket_state_sum, evaluate
from .nmr import MeasurementPrecision, controlled_u, estimate_trace, trace_error_bound
from .pulses import compile_controlled_s, format_program, pulse_angles, verify_program
from .tlrep import ReprParams, is_admissible, rho_generator, rho_word

__all__ = [
    "SweepRecord",
    "PRESETS",
    "preset",
    "default_grid",
    "run_sweep",
    "emit_csv",
    "CSV_COLUMNS",
    "main",
]

PRESETS = {
    "trefoil": "s1^3",
    "figure8": "s1 s2^-1 s1 s2^-1",
    "borromean": "s1 s2^-1 s1 s2^-1 s1 s2^-1",
}

# exact header order of the sweep CSV
CSV_COLUMNS = (
    "theta_deg,theta_rad,A_re,A_im,delta,trace_re,trace_im,"
    "trace_nmr_re,trace_nmr_im,bracket_re,bracket_im,oracle_re,oracle_im,"
    "f_re,f_im,t_re,t_im,jones_re,jones_im,eq9_bound"
)

_EXACT_TRACE_TOL = 1e-10
_DEFAULT_ORACLE_TOL = 1e-9


@dataclass(frozen=True)
class SweepRecord:
    """Full results at one gridpoint; ``bracket_oracle`` is None when skipped."""

    theta_deg: float
    theta_rad: float
    A: complex
    delta: float
    trace_exact: complex
    trace_nmr: complex
    bracket: complex
    bracket_oracle: complex | None
    f: complex
    t: complex
    jones: complex
    eq9_bound: float


def preset(name: str) -> BraidWord:
    """Built-in 3-strand knot and link words."""
    word = PRESETS.get(name)
    if word is None:
        valid = ", ".join(sorted(PRESETS))
        raise ValueError(f"unknown preset {name!r}; valid presets: {valid}")
    return parse_braid(word, 3)


def default_grid() -> list[float]:
    """0..30 degrees inclusive in 1-degree steps (31 values)."""
    return [float(k) for k in range(31)]


def run_sweep(
    b: BraidWord,
    thetas_deg: list[float],
    prec: MeasurementPrecision = MeasurementPrecision(),
    with_oracle: bool = False,
) -> list[SweepRecord]:
    """One record per grid angle; deterministic for a fixed seed.

    Gridpoints are evaluated concurrently; each point perturbs with seed
    prec.seed + index, so results do not depend on scheduling.  Every angle
    must be admissible and the word must have three strands.
    """
    if b.strands != 3:
        raise ValueError(f"sweeps need a 3-strand word, got {b.strands} strands")
    thetas = [float(x) for x in thetas_deg]
    for deg in thetas:
        if not is_admissible(math.radians(deg)):
            raise ValueError(f"theta = {deg} deg is outside the admissible angle set")

    def point(item: tuple[int, float]) -> SweepRecord:
        idx, deg = item
        theta = math.radians(deg)
        params = ReprParams.from_theta(theta)
        values = evaluate(b, params)
        point_prec = replace(prec, seed=prec.seed + idx)
        unitary = rho_word(b, params)
        trace_nmr = estimate_trace(unitary, point_prec)
        oracle = bracket_state_sum(b, params.A) if with_oracle else None
        bound = trace_error_bound(unitary.shape[0], point_prec)
        return SweepRecord(
            theta_deg=deg,
            theta_rad=theta,
            A=params.A,
            delta=params.delta,
            trace_exact=values.trace,
            trace_nmr=trace_nmr,
            bracket=values.bracket,
            bracket_oracle=oracle,
            f=values.f,
            t=values.t,
            jones=values.jones,
            eq9_bound=bound,
        )

    with ThreadPoolExecutor(max_workers=min(8, max(1, len(thetas)))) as pool:
        records = list(pool.map(point, enumerate(thetas)))
    records.sort(key=lambda r: r.theta_deg)
    return records


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def _row(r: SweepRecord) -> str:
    oracle_re = "" if r.bracket_oracle is None else _fmt(r.bracket_oracle.real)
    oracle_im = "" if r.bracket_oracle is None else _fmt(r.bracket_oracle.imag)
    fields = (
        _fmt(r.theta_deg),
        _fmt(r.theta_rad),
        _fmt(r.A.real),
        _fmt(r.A.imag),
        _fmt(r.delta),
        _fmt(r.trace_exact.real),
        _fmt(r.trace_exact.imag),
        _fmt(r.trace_nmr.real),
        _fmt(r.trace_nmr.imag),
        _fmt(r.bracket.real),
        _fmt(r.bracket.imag),
        oracle_re,
        oracle_im,
        _fmt(r.f.real),
        _fmt(r.f.imag),
        _fmt(r.t.real),
        _fmt(r.t.imag),
        _fmt(r.jones.real),
        _fmt(r.jones.imag),
        _fmt(r.eq9_bound),
    )
    return ",".join(fields)


def emit_csv(records: list[SweepRecord], destination) -> None:
    """Header plus one row per record; byte-deterministic for fixed inputs."""
    if hasattr(destination, "write"):
        out = destination
        close = False
    else:
        out = open(destination, "w", newline="")
        close = True
    try:
        out.write(CSV_COLUMNS + "\n")
        for r in records:
            out.write(_row(r) + "\n")
    finally:
        if close:
            out.close()


def _check_records(records: list[SweepRecord], epsilon: float, oracle_tol: float) -> list[str]:
    problems = []
    for r in records:
        if r.bracket_oracle is not None:
            gap = abs(r.bracket - r.bracket_oracle)
            if gap > oracle_tol:
                problems.append(
                    f"theta={r.theta_deg} deg: |bracket - oracle| = {gap:.3e} > {oracle_tol:.3e}"
                )
        drift = abs(r.trace_exact - r.trace_nmr)
        limit = r.eq9_bound if epsilon > 0.0 else _EXACT_TRACE_TOL
        if drift > limit:
            problems.append(
                f"theta={r.theta_deg} deg: |trace - trace_nmr| = {drift:.3e} > {limit:.3e}"
            )
    return problems


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="braidjones",
        description="Jones polynomial values of 3-strand braid closures, "
        "with a simulated ensemble quantum computer in the loop.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sweep = sub.add_parser("sweep", help="evaluate a braid closure over a theta grid")
    source = sweep.add_mutually_exclusive_group(required=True)
    source.add_argument("--braid", help='braid word, e.g. "s1 s2^-1 s1 s2^-1"')
    source.add_argument("--preset", choices=sorted(PRESETS), help="built-in knot")
    sweep.add_argument("--strands", type=int, default=3, help="strand count for --braid")
    sweep.add_argument("--theta-min-deg", type=float, default=0.0)
    sweep.add_argument("--theta-max-deg", type=float, default=30.0)
    sweep.add_argument("--theta-step-deg", type=float, default=1.0)
    sweep.add_argument("--epsilon", type=float, default=0.0, help="measurement precision")
    sweep.add_argument("--alpha1", type=float, default=1.0, help="probe polarization")
    sweep.add_argument("--seed", type=int, default=0, help="noise seed")
    sweep.add_argument("--oracle", action="store_true", help="run the state-sum cross-check")
    sweep.add_argument("--out", help="CSV path (default: stdout)")
    sweep.add_argument(
        "--oracle-tol",
        type=float,
        default=_DEFAULT_ORACLE_TOL,
        help="tolerance for |bracket - oracle| (test hook; default 1e-9)",
    )

    angles = sub.add_parser("angles", help="print the pulse angles alpha, beta, gamma")
    angles.add_argument("--theta-deg", type=float, required=True)
    angles.add_argument("--which", type=int, choices=(1, 2), required=True)

    compile_p = sub.add_parser("compile", help="compile and verify a controlled gate")
    compile_p.add_argument("--theta-deg", type=float, required=True)
    compile_p.add_argument("--which", type=int, choices=(1, 2), required=True)
    compile_p.add_argument("--inverse", action="store_true")
    return parser


def _cmd_sweep(args: argparse.Namespace) -> int:
    braid = preset(args.preset) if args.preset else parse_braid(args.braid, args.strands)
    if args.theta_step_deg <= 0.0:
        raise ValueError("theta step must be positive")
    span = args.theta_max_deg - args.theta_min_deg
    if span < 0.0:
        raise ValueError("theta range is empty")
    count = int(span / args.theta_step_deg + 1e-9) + 1
    grid = [args.theta_min_deg + k * args.theta_step_deg for k in range(count)]
    prec = MeasurementPrecision(epsilon=args.epsilon, alpha1=args.alpha1, seed=args.seed)
    records = run_sweep(braid, grid, prec, with_oracle=args.oracle)
    if args.out:
        emit_csv(records, args.out)
    else:
        emit_csv(records, sys.stdout)
    problems = _check_records(records, args.epsilon, args.oracle_tol)
    for p in problems:
        print(f"FAIL {p}", file=sys.stderr)
    print(
        f"{len(records)} gridpoints, {len(problems)} violations",
        file=sys.stderr,
    )
    return 1 if problems else 0


def _cmd_angles(args: argparse.Namespace) -> int:
    alpha, beta, gamma = pulse_angles(math.radians(args.theta_deg), args.which)
    print(f"alpha={alpha!r}")
    print(f"beta={beta!r}")
    print(f"gamma={gamma!r}")
    return 0


def _cmd_compile(args: argparse.Namespace) -> int:
    theta = math.radians(args.theta_deg)
    program = compile_controlled_s(args.which, theta, inverse=args.inverse)
    params = ReprParams.from_theta(theta)
    s = rho_generator(BraidGenerator(args.which, -1 if args.inverse else 1), params)
    fidelity = verify_program(program, controlled_u(s))
    print(format_program(program))
    print(f"fidelity={fidelity!r}")
    return 0


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    handlers = {"sweep": _cmd_sweep, "angles": _cmd_angles, "compile": _cmd_compile}
    try:
        return handlers[args.command](args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
