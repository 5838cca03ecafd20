"""Command-line front end.

Subcommands emit machine-readable output: CSV for grids and trajectories
(leading ``#`` comment lines carry schema and parameter metadata, then a
fixed header row), JSON for scalar summaries (with a ``schema`` field).
All numeric fields are written with 17 significant digits, so identical
invocations produce byte-identical output.

Exit status: 0 on success, 2 on a usage or parameter error, 3 on a
numerical failure.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .errors import InvalidParameterError, NumericsError
from .oracle import empirical_bounds
from .pinning import (
    TreeParams,
    classify,
    min_upper_bound,
    pinned_profile,
    pinning_bounds,
    reversal_thresholds,
)
from .reaction import mckean
from .simulator import SimConfig, default_step, initial_profile, integrate
from .stability import kernel_decay_rate, KernelParams, perturbation_decay_test
from .wavespeed import (
    DEFAULT_SPEED_TOLERANCE,
    DEFAULT_TRANSIENT_FRACTION,
    classify_empirical,
    estimate_speed,
)


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _write(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _meta_lines(schema: str, params: dict) -> list[str]:
    return [
        f"# schema: {schema}",
        f"# params: {json.dumps(params, sort_keys=True)}",
    ]


def _json_doc(schema: str, params: dict, payload: dict) -> str:
    doc = {"schema": schema, "params": params}
    doc.update(payload)
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _parse_grid(text: str, name: str) -> list[float]:
    """Grid values: comma-separated floats, or lo:hi:n[:log] ranges."""
    if ":" in text:
        parts = text.split(":")
        if len(parts) not in (3, 4) or (len(parts) == 4 and parts[3] != "log"):
            raise InvalidParameterError(
                f"{name} range must look like lo:hi:n or lo:hi:n:log, got {text!r}"
            )
        lo, hi, n = float(parts[0]), float(parts[1]), int(parts[2])
        if n < 1:
            raise InvalidParameterError(f"{name} range needs at least one point")
        if len(parts) == 4:
            if lo <= 0 or hi <= 0:
                raise InvalidParameterError(f"log-scale {name} range needs positive endpoints")
            return list(np.geomspace(lo, hi, n))
        return list(np.linspace(lo, hi, n))
    try:
        values = [float(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise InvalidParameterError(f"could not parse {name} grid {text!r}: {exc}") from exc
    if not values:
        raise InvalidParameterError(f"{name} grid is empty")
    return values


def cmd_region(args: argparse.Namespace) -> int:
    if args.points < 1:
        raise InvalidParameterError("points must be >= 1")
    if args.points == 1 and args.d_min != args.d_max:
        raise InvalidParameterError("a single point requires d-min == d-max")
    if args.d_min > args.d_max:
        raise InvalidParameterError("d-min must not exceed d-max")
    if args.scale == "log":
        if args.d_min <= 0:
            raise InvalidParameterError("log scale requires positive d-min")
        ds = np.geomspace(args.d_min, args.d_max, args.points)
    else:
        ds = np.linspace(args.d_min, args.d_max, args.points)
    params = {
        "k": args.k,
        "d_min": args.d_min,
        "d_max": args.d_max,
        "points": args.points,
        "scale": args.scale,
        "seed": args.seed,
    }
    rows = [(float(d), pinning_bounds(float(d), args.k)) for d in ds]
    if args.format == "json":
        payload = {
            "rows": [
                {"d": d, "a_minus": b.a_minus, "a_plus": b.a_plus} for d, b in rows
            ]
        }
        _write(args.out, _json_doc("treewaves/region/v1", params, payload))
        return 0
    lines = _meta_lines("treewaves/region/v1", params)
    lines.append("d,a_minus,a_plus")
    for d, b in rows:
        lines.append(f"{_fmt(d)},{_fmt(b.a_minus)},{_fmt(b.a_plus)}")
    _write(args.out, "\n".join(lines) + "\n")
    return 0


def cmd_profile(args: argparse.Namespace) -> int:
    if args.i_min > args.i_max:
        raise InvalidParameterError("i-min must not exceed i-max")
    prof = pinned_profile(args.d, args.k, args.i_min, args.i_max)
    params = {
        "d": args.d,
        "k": args.k,
        "i_min": args.i_min,
        "i_max": args.i_max,
        "seed": args.seed,
    }
    if args.format == "json":
        payload = {
            "profile": [
                {"i": int(i), "u": float(u)} for i, u in zip(prof.indices, prof.values)
            ]
        }
        _write(args.out, _json_doc("treewaves/profile/v1", params, payload))
        return 0
    lines = _meta_lines("treewaves/profile/v1", params)
    lines.append("i,u")
    for i, u in zip(prof.indices, prof.values):
        lines.append(f"{int(i)},{_fmt(float(u))}")
    _write(args.out, "\n".join(lines) + "\n")
    return 0


def _sim_config(args: argparse.Namespace) -> SimConfig:
    return SimConfig(
        half_width=args.N,
        h=args.h,
        t_end=args.t_end,
        record_every=args.record_every,
    )


def cmd_simulate(args: argparse.Namespace) -> int:
    p = TreeParams(args.d, args.k, args.a)
    cfg = _sim_config(args)
    initial = initial_profile(args.init, p, cfg.half_width)
    traj = integrate(initial, p, mckean(p.a), cfg)
    estimate = estimate_speed(
        traj, transient_fraction=args.transient, speed_tolerance=args.eps_c
    )
    params = {
        "d": args.d,
        "k": args.k,
        "a": args.a,
        "N": args.N,
        "t_end": args.t_end,
        "h": args.h if args.h is not None else default_step(p),
        "init": args.init,
        "record_every": args.record_every,
        "eps_c": args.eps_c,
        "transient": args.transient,
        "seed": args.seed,
    }
    summary = {
        "schema": "treewaves/speed/v1",
        "c": estimate.c,
        "fit_quality": estimate.fit_quality,
        "direction": estimate.direction.value,
        "truncated": estimate.truncated,
    }
    if args.format == "json":
        payload = {
            "offset": traj.offset,
            "times": [float(t) for t in traj.times],
            "states": [[float(u) for u in row] for row in traj.states],
            "summary": summary,
        }
        _write(args.out, _json_doc("treewaves/simulate/v1", params, payload))
        return 0
    lines = _meta_lines("treewaves/simulate/v1", params)
    lines.append("t,i,u")
    indices = np.arange(traj.offset, traj.offset + traj.states.shape[1])
    for t, row in zip(traj.times, traj.states):
        ts = _fmt(float(t))
        for i, u in zip(indices, row):
            lines.append(f"{ts},{int(i)},{_fmt(float(u))}")
    lines.append(f"# summary: {json.dumps(summary, sort_keys=True)}")
    _write(args.out, "\n".join(lines) + "\n")
    return 0


def cmd_phase(args: argparse.Namespace) -> int:
    d_grid = _parse_grid(args.d_grid, "d")
    a_grid = _parse_grid(args.a_grid, "a")
    params = {
        "k": args.k,
        "d_grid": d_grid,
        "a_grid": a_grid,
        "mode": args.mode,
        "strict": args.strict,
        "N": args.N,
        "t_end": args.t_end,
        "h": args.h,
        "eps_c": args.eps_c,
        "transient": args.transient,
        "seed": args.seed,
    }
    rows = []
    for d in d_grid:
        for a in a_grid:
            p = TreeParams(d, args.k, a)
            closed = classify(p, strict=args.strict).value if args.mode != "simulate" else ""
            empirical = ""
            c = ""
            mismatch = ""
            if args.mode in ("simulate", "both"):
                est = classify_empirical(
                    p,
                    _sim_config(args),
                    transient_fraction=args.transient,
                    speed_tolerance=args.eps_c,
                )
                empirical = est.direction.value
                c = _fmt(est.c)
            if args.mode == "both":
                mismatch = "true" if closed != empirical else "false"
            rows.append((d, a, closed, empirical, c, mismatch))
    if args.format == "json":
        payload = {
            "rows": [
                {
                    "d": d,
                    "a": a,
                    "direction_closed": closed or None,
                    "direction_empirical": empirical or None,
                    "c": float(c) if c else None,
                    "mismatch": None if mismatch == "" else mismatch == "true",
                }
                for d, a, closed, empirical, c, mismatch in rows
            ]
        }
        _write(args.out, _json_doc("treewaves/phase/v1", params, payload))
        return 0
    lines = _meta_lines("treewaves/phase/v1", params)
    lines.append("d,a,direction_closed,direction_empirical,c,mismatch")
    for d, a, closed, empirical, c, mismatch in rows:
        lines.append(f"{_fmt(d)},{_fmt(a)},{closed},{empirical},{c},{mismatch}")
    _write(args.out, "\n".join(lines) + "\n")
    return 0


def cmd_reversal(args: argparse.Namespace) -> int:
    a_star, d_star = min_upper_bound(args.k)
    d_lo_plus, d_hi_plus, d_lo_minus = reversal_thresholds(args.a, args.k)
    params = {"k": args.k, "a": args.a, "seed": args.seed}
    payload = {
        "d_lo_plus": d_lo_plus,
        "d_hi_plus": d_hi_plus,
        "d_lo_minus": d_lo_minus,
        "a_plus_star": a_star,
        "d_plus_star": d_star,
        "residuals": {
            "a_plus_at_d_lo_plus": pinning_bounds(d_lo_plus, args.k).a_plus - args.a,
            "a_plus_at_d_hi_plus": pinning_bounds(d_hi_plus, args.k).a_plus - args.a,
            "a_minus_at_d_lo_minus": pinning_bounds(d_lo_minus, args.k).a_minus - args.a,
        },
    }
    _write(args.out, _json_doc("treewaves/reversal/v1", params, payload))
    return 0


def cmd_stability(args: argparse.Namespace) -> int:
    p = TreeParams(args.d, args.k, args.a)
    cfg = None
    if args.t_end is not None or args.N != 100 or args.h is not None:
        t_end = args.t_end
        if t_end is None:
            t_end = 10.0 / abs(kernel_decay_rate(KernelParams(args.d, args.k)))
        cfg = SimConfig(half_width=args.N, h=args.h, t_end=t_end)
    report = perturbation_decay_test(p, args.amplitude, cfg)
    params = {
        "d": args.d,
        "k": args.k,
        "a": args.a,
        "amplitude": args.amplitude,
        "N": args.N,
        "t_end": args.t_end,
        "h": args.h,
        "seed": args.seed,
    }
    payload = {
        "times": [float(t) for t in report.times],
        "sup_norms": [float(s) for s in report.sup_norms],
        "fitted_rate": report.fitted_rate,
        "theory_rate": report.theory_rate,
        "final_sup": report.final_sup,
    }
    _write(args.out, _json_doc("treewaves/stability/v1", params, payload))
    return 0


def _add_common(sub: argparse.ArgumentParser, default_format: str) -> None:
    sub.add_argument("--format", choices=["csv", "json"], default=default_format)
    sub.add_argument("--out", default="-", help="output path, or - for stdout")
    sub.add_argument("--seed", type=int, default=None, help="seed echoed into metadata")


def _add_sim_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--N", type=int, default=100, help="window half-width")
    sub.add_argument("--t-end", dest="t_end", type=float, default=200.0)
    sub.add_argument("--h", type=float, default=None, help="RK4 step (default 0.01/(d(k+1)+1))")
    sub.add_argument("--record-every", dest="record_every", type=int, default=None)
    sub.add_argument("--eps-c", dest="eps_c", type=float, default=DEFAULT_SPEED_TOLERANCE)
    sub.add_argument(
        "--transient", type=float, default=DEFAULT_TRANSIENT_FRACTION,
        help="fraction of the run discarded before the speed fit",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="treewaves",
        description="Pinned and traveling fronts of bistable dynamics on k-ary trees",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    region = subparsers.add_parser("region", help="pinning region curves a_pm(d, k)")
    region.add_argument("--k", type=float, required=True)
    region.add_argument("--d-min", dest="d_min", type=float, required=True)
    region.add_argument("--d-max", dest="d_max", type=float, required=True)
    region.add_argument("--points", type=int, default=100)
    region.add_argument("--scale", choices=["linear", "log"], default="linear")
    _add_common(region, "csv")
    region.set_defaults(func=cmd_region)

    profile = subparsers.add_parser("profile", help="explicit pinned front values")
    profile.add_argument("--d", type=float, required=True)
    profile.add_argument("--k", type=float, required=True)
    profile.add_argument("--i-min", dest="i_min", type=int, default=-20)
    profile.add_argument("--i-max", dest="i_max", type=int, default=20)
    _add_common(profile, "csv")
    profile.set_defaults(func=cmd_profile)

    simulate = subparsers.add_parser("simulate", help="integrate and estimate the front speed")
    simulate.add_argument("--d", type=float, required=True)
    simulate.add_argument("--k", type=float, required=True)
    simulate.add_argument("--a", type=float, required=True)
    simulate.add_argument("--init", choices=["step", "pinned"], default="step")
    _add_sim_flags(simulate)
    _add_common(simulate, "csv")
    simulate.set_defaults(func=cmd_simulate)

    phase = subparsers.add_parser("phase", help="direction classification over a (d, a) grid")
    phase.add_argument("--k", type=float, required=True)
    phase.add_argument("--d-grid", dest="d_grid", required=True,
                       help="comma-separated values or lo:hi:n[:log]")
    phase.add_argument("--a-grid", dest="a_grid", required=True,
                       help="comma-separated values or lo:hi:n[:log]")
    phase.add_argument("--mode", choices=["closed_form", "simulate", "both"],
                       default="closed_form")
    strictness = phase.add_mutually_exclusive_group()
    strictness.add_argument("--strict", dest="strict", action="store_true", default=True)
    strictness.add_argument("--nonstrict", dest="strict", action="store_false")
    _add_sim_flags(phase)
    _add_common(phase, "csv")
    phase.set_defaults(func=cmd_phase)

    reversal = subparsers.add_parser("reversal", help="propagation-reversal thresholds in d")
    reversal.add_argument("--k", type=float, required=True)
    reversal.add_argument("--a", type=float, required=True)
    _add_common(reversal, "json")
    reversal.set_defaults(func=cmd_reversal)

    stability = subparsers.add_parser("stability", help="perturbation decay of the pinned front")
    stability.add_argument("--d", type=float, required=True)
    stability.add_argument("--k", type=float, required=True)
    stability.add_argument("--a", type=float, required=True)
    stability.add_argument("--amplitude", type=float, default=0.01)
    stability.add_argument("--N", type=int, default=100)
    stability.add_argument("--t-end", dest="t_end", type=float, default=None)
    stability.add_argument("--h", type=float, default=None)
    _add_common(stability, "json")
    stability.set_defaults(func=cmd_stability)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    try:
        return args.func(args)
    except InvalidParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NumericsError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
