"""Command-line front end: simulate, sweep, fit, scan, report, verify.

Every subcommand is a thin wrapper over the library; outputs are plain files
(CSV, JSON) or stdout and are byte-identical across repeated runs.  Exit
codes: 0 success, 1 runtime/file trouble, 2 invalid arguments or data.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .core import (
    PhaseSchedule,
    ProblemSpec,
    ScheduleKind,
    success_probability,
)
from .hillfit import ModelId, fit_hill, fit_secondary
from .pipeline import load_records, save_records, save_report, scan, summarize
from .pipeline import report_to_dict
from .sweep import Dependence, SampleSet, cross_section, grid
from .verify import run_suites, suite_names

_SCHEDULE_NAMES = tuple(kind.value for kind in ScheduleKind)
_DEPENDENCE_NAMES = tuple(dep.value for dep in Dependence)
_MODEL_NAMES = tuple(model.value for model in ModelId)


def _parse_angle(text: str) -> float:
    """Radians as a decimal literal; the tokens pi / π are also accepted."""
    token = text.strip().lower()
    if token in ("pi", "π"):
        return math.pi
    try:
        return float(token)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"invalid angle {text!r}: use radians or the token 'pi'"
        ) from None


def _read_phase_pairs(path: str) -> Tuple[Tuple[float, float], ...]:
    """Per-iteration phi,omega pairs; a leading phi,omega header is optional."""
    pairs: List[Tuple[float, float]] = []
    with open(path, "r", encoding="utf-8", newline="") as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.strip()
            if not line:
                continue
            if lineno == 1 and line.lower().replace(" ", "") == "phi,omega":
                continue
            fields = line.split(",")
            if len(fields) != 2:
                raise ValueError(
                    f"{path}: line {lineno}: expected two fields phi,omega"
                )
            try:
                pairs.append((_parse_angle(fields[0]), _parse_angle(fields[1])))
            except argparse.ArgumentTypeError as exc:
                raise ValueError(f"{path}: line {lineno}: {exc}") from None
    if not pairs:
        raise ValueError(f"{path}: no phase pairs found")
    return tuple(pairs)


def _build_schedule(args: argparse.Namespace) -> PhaseSchedule:
    kind = ScheduleKind(args.schedule)
    if kind is ScheduleKind.CUSTOM:
        if not getattr(args, "pairs", None):
            raise ValueError("schedule custom requires --pairs FILE")
        return PhaseSchedule(kind, custom_pairs=_read_phase_pairs(args.pairs))
    return PhaseSchedule(kind, base_phi=args.phi, base_omega=args.omega)


def _cmd_simulate(args: argparse.Namespace) -> int:
    spec = ProblemSpec(args.n, args.m)
    schedule = _build_schedule(args)
    p = success_probability(spec, schedule, iters=args.iters)
    print(f"{p:.12f}")
    return 0


def _cmd_sweep(args: argparse.Namespace) -> int:
    spec = ProblemSpec(args.n, args.m)
    kind = ScheduleKind(args.schedule)
    if kind is ScheduleKind.CUSTOM:
        raise ValueError("sweeps need a base-pair schedule, not custom")
    schedule = PhaseSchedule(kind)
    if args.dependence is not None:
        samples = cross_section(
            spec, schedule, Dependence(args.dependence), samples=args.samples
        )
    else:
        samples = grid(spec, schedule, rows=args.rows, cols=args.cols)
    samples.to_csv(args.out)
    return 0


def _fit_samples_from_sweep(samples: SampleSet) -> Tuple[np.ndarray, np.ndarray]:
    # free variable is phi unless the sweep held it fixed
    phi_span = float(np.ptp(samples.phi))
    x = samples.omega if phi_span == 0.0 else samples.phi
    return np.asarray(x, dtype=np.float64), np.asarray(samples.p, dtype=np.float64)


def _read_size_series(path: str) -> List[Tuple[float, float]]:
    """Two numeric columns (size, value); one optional header line."""
    rows: List[Tuple[float, float]] = []
    with open(path, "r", encoding="utf-8", newline="") as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.strip()
            if not line:
                continue
            fields = line.split(",")
            if len(fields) != 2:
                raise ValueError(f"{path}: line {lineno}: expected two fields")
            try:
                rows.append((float(fields[0]), float(fields[1])))
            except ValueError:
                if lineno == 1:
                    continue
                raise ValueError(
                    f"{path}: line {lineno}: non-numeric field"
                ) from None
    if not rows:
        raise ValueError(f"{path}: no data rows found")
    return rows


def _cmd_fit(args: argparse.Namespace) -> int:
    model = ModelId(args.model)
    if model is ModelId.HILL:
        samples = SampleSet.read_csv(getattr(args, "in"))
        result = fit_hill(_fit_samples_from_sweep(samples))
    else:
        result = fit_secondary(_read_size_series(getattr(args, "in")), model)
    text = json.dumps(result.to_dict(), indent=2, sort_keys=True) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_scan(args: argparse.Namespace) -> int:
    deps = (
        tuple(Dependence(name) for name in args.dependences)
        if args.dependences
        else None
    )
    records = scan(
        ScheduleKind(args.schedule),
        size_min=args.n_min,
        size_max=args.n_max,
        num_solutions=args.m,
        dependences=deps,
        samples=args.samples,
    )
    save_records(records, args.out)
    return 0


def _cmd_report(args: argparse.Namespace) -> int:
    records = load_records(getattr(args, "in"))
    report = summarize(
        records, target_size=args.extrapolate, fit_min_size=args.fit_min_size
    )
    if args.out:
        save_report(report, args.out)
    else:
        text = json.dumps(report_to_dict(report), indent=2, sort_keys=True) + "\n"
        sys.stdout.write(text)
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    names = args.suite if args.suite else None
    results = run_suites(names)
    for result in results:
        print(result.summary_line())
    return 0 if all(r.passed for r in results) else 1


def _add_problem_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--n", type=int, required=True, help="register size N")
    parser.add_argument("--m", type=int, default=1, help="number of solutions M")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="groverlab",
        description="Phase-schedule robustness laboratory for Grover search.",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser(
        "simulate",
        help="success probability of one run",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    _add_problem_flags(sim)
    sim.add_argument("--schedule", choices=_SCHEDULE_NAMES, default="oph")
    sim.add_argument(
        "--phi", type=_parse_angle, default=math.pi, help="oracle phase (radians)"
    )
    sim.add_argument(
        "--omega", type=_parse_angle, default=math.pi, help="diffusion phase (radians)"
    )
    sim.add_argument(
        "--iters", type=int, default=None, help="iteration count (default: optimal)"
    )
    sim.add_argument(
        "--pairs", default=None, help="CSV of per-iteration phi,omega (schedule custom)"
    )
    sim.set_defaults(func=_cmd_simulate)

    swp = sub.add_parser(
        "sweep",
        help="sample a cross-section or a full grid to CSV",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    _add_problem_flags(swp)
    swp.add_argument("--schedule", choices=_SCHEDULE_NAMES[:-1], default="oph")
    swp.add_argument(
        "--dependence",
        choices=_DEPENDENCE_NAMES,
        default=None,
        help="cross-section line (omit to sample a grid)",
    )
    swp.add_argument("--samples", type=int, default=1001, help="cross-section points")
    swp.add_argument("--rows", type=int, default=101, help="grid rows (phi)")
    swp.add_argument("--cols", type=int, default=101, help="grid columns (omega)")
    swp.add_argument("--out", required=True, help="output CSV path")
    swp.set_defaults(func=_cmd_sweep)

    fit = sub.add_parser(
        "fit",
        help="fit a model to a CSV series",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    fit.add_argument("--in", required=True, help="input CSV path")
    fit.add_argument(
        "--model",
        choices=_MODEL_NAMES,
        default="hill",
        help="hill reads a sweep CSV; the others read size,value columns",
    )
    fit.add_argument("--out", default=None, help="output JSON path (default: stdout)")
    fit.set_defaults(func=_cmd_fit)

    scn = sub.add_parser(
        "scan",
        help="fit robustness curves across register sizes",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    scn.add_argument("--schedule", choices=_SCHEDULE_NAMES[:-1], required=True)
    scn.add_argument("--n-min", type=int, default=2, help="smallest register size")
    scn.add_argument("--n-max", type=int, default=110, help="largest register size")
    scn.add_argument("--m", type=int, default=1, help="number of solutions M")
    scn.add_argument(
        "--dependences",
        nargs="+",
        choices=_DEPENDENCE_NAMES,
        default=None,
        help="cross-sections to scan (default: all four)",
    )
    scn.add_argument("--samples", type=int, default=1001, help="points per section")
    scn.add_argument("--out", required=True, help="output records CSV path")
    scn.set_defaults(func=_cmd_scan)

    rep = sub.add_parser(
        "report",
        help="size-trend fits and extrapolation from a scan CSV",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    rep.add_argument("--in", required=True, help="records CSV from scan")
    rep.add_argument(
        "--extrapolate", type=float, default=1000.0, help="target register size"
    )
    rep.add_argument(
        "--fit-min-size", type=int, default=7, help="smallest size used in trend fits"
    )
    rep.add_argument("--out", default=None, help="output JSON path (default: stdout)")
    rep.set_defaults(func=_cmd_report)

    ver = sub.add_parser(
        "verify",
        help="run the cross-validation suites",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    ver.add_argument(
        "--suite",
        action="append",
        choices=suite_names(),
        default=None,
        help="restrict to one suite (repeatable; default: all)",
    )
    ver.set_defaults(func=_cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse already printed usage or help; surface its code (2 or 0)
        code = exc.code
        return code if isinstance(code, int) else 2
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
