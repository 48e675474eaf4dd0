"""Study orchestration: per-size scans, trend fits, and extrapolation reports.

A scan sweeps every requested cross-section dependence for each register size,
fits the bell-shaped probability curve, and collects one record per
(size, schedule, dependence).  The summary step fits each Hill parameter's
size trend with two candidate models, keeps the better one, extrapolates to a
target size, and ranks the schedules by the extrapolated robustness width.
Per-size work items are independent; everything here is deterministic, so
repeated runs produce byte-identical artifacts.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .core import PhaseSchedule, ProblemSpec, ScheduleKind, optimal_iterations
from .hillfit import FitResult, ModelId, extrapolate, fit_hill, fit_secondary
from .sweep import Dependence, cross_section

RECORD_COLUMNS = (
    "N", "M", "schedule", "dependence", "k_iter",
    "b", "k", "n", "c", "sigma", "converged",
)

# Robust / fragile cross-section per schedule.  Entries with a tuple of
# candidates are settled per scan: the candidate with the smallest fitted
# half-width at the largest scanned size is the fragile one.
BEST_DEPENDENCE: Dict[ScheduleKind, Dependence] = {
    ScheduleKind.OPH: Dependence.OMEGA_EQ_PHI,
    ScheduleKind.SPM: Dependence.OMEGA_EQ_2PI_MINUS_PHI,
    ScheduleKind.ACSP: Dependence.PHI_EQ_PI,
    ScheduleKind.ACBP: Dependence.PHI_EQ_PI,
    ScheduleKind.HIDP: Dependence.OMEGA_EQ_2PI_MINUS_PHI,
}
WORST_DEPENDENCE: Dict[ScheduleKind, Dependence] = {
    ScheduleKind.OPH: Dependence.OMEGA_EQ_2PI_MINUS_PHI,
    ScheduleKind.SPM: Dependence.OMEGA_EQ_PHI,
    ScheduleKind.ACSP: Dependence.OMEGA_EQ_PI,
}
WORST_CANDIDATES: Dict[ScheduleKind, Tuple[Dependence, ...]] = {
    ScheduleKind.ACBP: (
        Dependence.OMEGA_EQ_PHI,
        Dependence.OMEGA_EQ_2PI_MINUS_PHI,
    ),
    ScheduleKind.HIDP: (
        Dependence.OMEGA_EQ_PHI,
        Dependence.OMEGA_EQ_PI,
        Dependence.PHI_EQ_PI,
    ),
}


@dataclass(frozen=True)
class RobustnessRecord:
    """One fitted cross-section: curve parameters for a (size, schedule, dependence)."""

    register_size: int
    num_solutions: int
    schedule: ScheduleKind
    dependence: Dependence
    iterations: int
    height: float
    half_width: float
    steepness: float
    center: float
    sigma: float
    converged: bool

    def sort_key(self) -> Tuple[int, str, str]:
        return (self.register_size, self.schedule.value, self.dependence.value)


def scan(
    schedule_kind: ScheduleKind,
    *,
    size_min: int = 2,
    size_max: int = 110,
    num_solutions: int = 1,
    dependences: Optional[Sequence[Dependence]] = None,
    samples: int = 1001,
) -> List[RobustnessRecord]:
    """Fit every requested cross-section for each register size in the range.

    A fit that errors out yields a record with NaN parameters and
    converged=False; the scan keeps going.
    """
    if schedule_kind is ScheduleKind.CUSTOM:
        raise ValueError("cross-section scans need a base-pair schedule, not custom")
    if size_min < 2 or size_max < size_min:
        raise ValueError("size range must satisfy 2 <= size_min <= size_max")
    deps = tuple(dependences) if dependences is not None else tuple(Dependence)
    if not deps:
        raise ValueError("at least one dependence required")
    schedule = PhaseSchedule(schedule_kind)
    records: List[RobustnessRecord] = []
    for size in range(size_min, size_max + 1):
        spec = ProblemSpec(size, num_solutions)
        k_iter = optimal_iterations(spec)
        for dep in deps:
            samples_set = cross_section(spec, schedule, dep, samples=samples)
            try:
                fit = fit_hill(samples_set)
                height, half_width, steepness, center = fit.values
                sigma, converged = fit.sigma, fit.converged
            except (ValueError, FloatingPointError):
                nan = float("nan")
                height = half_width = steepness = center = sigma = nan
                converged = False
            records.append(
                RobustnessRecord(
                    register_size=size,
                    num_solutions=num_solutions,
                    schedule=schedule_kind,
                    dependence=dep,
                    iterations=k_iter,
                    height=height,
                    half_width=half_width,
                    steepness=steepness,
                    center=center,
                    sigma=sigma,
                    converged=converged,
                )
            )
    records.sort(key=RobustnessRecord.sort_key)
    return records


def iteration_breakpoints(records: Iterable[RobustnessRecord]) -> Tuple[int, ...]:
    """Register sizes where the iteration count steps up from the previous size."""
    by_size: Dict[int, int] = {}
    for rec in records:
        prev = by_size.get(rec.register_size)
        if prev is not None and prev != rec.iterations:
            raise ValueError(
                f"conflicting iteration counts for size {rec.register_size}"
            )
        by_size[rec.register_size] = rec.iterations
    sizes = sorted(by_size)
    return tuple(
        size for prev, size in zip(sizes, sizes[1:]) if by_size[size] > by_size[prev]
    )


def _records_for(
    records: Sequence[RobustnessRecord], kind: ScheduleKind, dep: Dependence
) -> List[RobustnessRecord]:
    return [r for r in records if r.schedule is kind and r.dependence is dep]


def select_dependences(
    records: Sequence[RobustnessRecord], kind: ScheduleKind
) -> Tuple[Dependence, Dependence]:
    """Robust and fragile cross-section for a schedule, settling the open picks.

    Where the fragile side is not fixed a priori, the candidate whose fitted
    half-width at the largest scanned size is smallest wins.
    """
    best = BEST_DEPENDENCE[kind]
    worst = WORST_DEPENDENCE.get(kind)
    if worst is None:
        widths: Dict[Dependence, float] = {}
        for dep in WORST_CANDIDATES[kind]:
            rows = [r for r in _records_for(records, kind, dep) if r.converged]
            if not rows:
                raise ValueError(
                    f"no converged records for {kind.value}/{dep.value}"
                )
            top = max(rows, key=lambda r: r.register_size)
            widths[dep] = top.half_width
        worst = min(widths, key=lambda d: widths[d])
    return best, worst


@dataclass(frozen=True)
class SeriesFit:
    """Chosen size-trend model for one Hill parameter plus its extrapolation."""

    fit: FitResult
    extrapolated: float


@dataclass(frozen=True)
class RoleSummary:
    """Trend fits for one schedule at its robust ('best') or fragile ('worst') side."""

    schedule: ScheduleKind
    role: str
    dependence: Dependence
    half_width: SeriesFit
    height: SeriesFit
    steepness: SeriesFit


@dataclass(frozen=True)
class ComparisonReport:
    """Cross-schedule comparison at a target register size."""

    target_size: float
    fit_min_size: int
    summaries: Tuple[RoleSummary, ...]
    ranking: Tuple[ScheduleKind, ...]
    breakpoints: Tuple[int, ...]


def _fit_series(
    pairs: Sequence[Tuple[float, float]], target_size: float
) -> SeriesFit:
    candidates = []
    for model in (ModelId.SAT_EXP, ModelId.LOGISTIC_OFFSET):
        try:
            candidates.append(fit_secondary(pairs, model))
        except (ValueError, FloatingPointError):
            continue
    if not candidates:
        raise ValueError("both trend models failed on the series")
    fit = min(candidates, key=lambda f: f.sse)
    return SeriesFit(fit=fit, extrapolated=extrapolate(fit, target_size))


def summarize(
    records: Sequence[RobustnessRecord],
    target_size: float = 1000.0,
    *,
    fit_min_size: int = 7,
) -> ComparisonReport:
    """Fit size trends per schedule at its robust/fragile sides and extrapolate.

    Requires a completed scan for each schedule's chosen cross-sections;
    raises if too few converged records remain above fit_min_size.
    """
    kinds = sorted({r.schedule for r in records}, key=lambda k: k.value)
    if not kinds:
        raise ValueError("no records to summarize")
    summaries: List[RoleSummary] = []
    for kind in kinds:
        best, worst = select_dependences(records, kind)
        for role, dep in (("best", best), ("worst", worst)):
            rows = [
                r
                for r in _records_for(records, kind, dep)
                if r.converged and r.register_size >= fit_min_size
            ]
            rows.sort(key=lambda r: r.register_size)
            if len(rows) < 6:
                raise ValueError(
                    f"insufficient converged records for {kind.value}/{dep.value}"
                )
            sizes = [float(r.register_size) for r in rows]
            series = {
                name: _fit_series(list(zip(sizes, values)), target_size)
                for name, values in (
                    ("half_width", [r.half_width for r in rows]),
                    ("height", [r.height for r in rows]),
                    ("steepness", [r.steepness for r in rows]),
                )
            }
            summaries.append(
                RoleSummary(
                    schedule=kind,
                    role=role,
                    dependence=dep,
                    half_width=series["half_width"],
                    height=series["height"],
                    steepness=series["steepness"],
                )
            )
    best_widths = {
        s.schedule: s.half_width.extrapolated for s in summaries if s.role == "best"
    }
    ranking = tuple(
        sorted(best_widths, key=lambda k: (-best_widths[k], k.value))
    )
    return ComparisonReport(
        target_size=float(target_size),
        fit_min_size=fit_min_size,
        summaries=tuple(summaries),
        ranking=ranking,
        breakpoints=iteration_breakpoints(records),
    )


def save_records(records: Sequence[RobustnessRecord], path: str) -> None:
    """Write records as CSV with a fixed column order, 17 significant digits."""
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(RECORD_COLUMNS)
        for rec in records:
            writer.writerow(
                [
                    rec.register_size,
                    rec.num_solutions,
                    rec.schedule.value,
                    rec.dependence.value,
                    rec.iterations,
                    f"{rec.height:.17g}",
                    f"{rec.half_width:.17g}",
                    f"{rec.steepness:.17g}",
                    f"{rec.center:.17g}",
                    f"{rec.sigma:.17g}",
                    "true" if rec.converged else "false",
                ]
            )


def load_records(path: str) -> List[RobustnessRecord]:
    """Read a record CSV written by save_records; errors name the bad line."""
    records: List[RobustnessRecord] = []
    with open(path, "r", newline="") as handle:
        reader = csv.reader(handle)
        header = next(reader, None)
        if header is None or tuple(header) != RECORD_COLUMNS:
            raise ValueError(f"{path}: expected header {','.join(RECORD_COLUMNS)}")
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(RECORD_COLUMNS):
                raise ValueError(
                    f"{path}: line {lineno}: expected "
                    f"{len(RECORD_COLUMNS)} fields, got {len(row)}"
                )
            try:
                flag = row[10].strip().lower()
                if flag not in ("true", "false"):
                    raise ValueError(f"bad converged flag {row[10]!r}")
                records.append(
                    RobustnessRecord(
                        register_size=int(row[0]),
                        num_solutions=int(row[1]),
                        schedule=ScheduleKind(row[2]),
                        dependence=Dependence(row[3]),
                        iterations=int(row[4]),
                        height=float(row[5]),
                        half_width=float(row[6]),
                        steepness=float(row[7]),
                        center=float(row[8]),
                        sigma=float(row[9]),
                        converged=flag == "true",
                    )
                )
            except ValueError as exc:
                raise ValueError(f"{path}: line {lineno}: {exc}") from exc
    return records


def _series_to_dict(series: SeriesFit) -> dict:
    payload = series.fit.to_dict()
    payload["extrapolated"] = series.extrapolated
    return payload


def report_to_dict(report: ComparisonReport) -> dict:
    """JSON-ready view of a comparison report."""
    return {
        "target_size": report.target_size,
        "fit_min_size": report.fit_min_size,
        "ranking": [kind.value for kind in report.ranking],
        "iteration_breakpoints": list(report.breakpoints),
        "summaries": [
            {
                "schedule": s.schedule.value,
                "role": s.role,
                "dependence": s.dependence.value,
                "half_width": _series_to_dict(s.half_width),
                "height": _series_to_dict(s.height),
                "steepness": _series_to_dict(s.steepness),
            }
            for s in report.summaries
        ],
    }


def save_report(report: ComparisonReport, path: str) -> None:
    with open(path, "w") as handle:
        json.dump(report_to_dict(report), handle, indent=2, sort_keys=True)
        handle.write("\n")
