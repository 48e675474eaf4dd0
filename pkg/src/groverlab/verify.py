"""Cross-validation suites tying the simulator to independent references.

Each suite recomputes a family of probabilities two ways (fast reduced path
vs closed forms, the full-state oracle, or symmetry-mapped runs) and counts
disagreements.  The CLI's verify command wraps run_suites; tests reuse the
same entry points so a regression shows up identically in both places.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .analytic import size9_reference_probability
from .core import (
    TAU,
    PhaseSchedule,
    ProblemSpec,
    ScheduleKind,
    batch_success_probability,
    optimal_iterations,
    phase_matching_angle,
    rotation_angle,
    success_probability,
)
from .fullstate import run_full
from .sweep import Dependence

# probability_fn(spec, kind, phis, omegas, iters) -> probabilities; the seam
# lets tests substitute a deliberately broken evaluator as a negative control
ProbabilityFn = Callable[
    [ProblemSpec, ScheduleKind, np.ndarray, np.ndarray, int], np.ndarray
]


@dataclass(frozen=True)
class SuiteResult:
    name: str
    checks: int
    failures: int
    max_error: float
    note: str = ""

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def summary_line(self) -> str:
        state = "PASS" if self.passed else "FAIL"
        line = (
            f"{self.name}: {state} ({self.checks} checks, "
            f"{self.failures} failures, max error {self.max_error:.3g})"
        )
        if self.note:
            line += f" [{self.note}]"
        return line


def _default_probability(
    spec: ProblemSpec,
    kind: ScheduleKind,
    phis: np.ndarray,
    omegas: np.ndarray,
    iters: int,
) -> np.ndarray:
    return batch_success_probability(
        spec, PhaseSchedule(kind), phis, omegas, iters=iters
    )


def verify_analytic_n9(tolerance: float = 5e-4) -> SuiteResult:
    """Size-9 cross-sections against the stored 5-decimal reference curves."""
    spec = ProblemSpec(9)
    schedule = PhaseSchedule(ScheduleKind.OPH)
    t = np.linspace(0.0, TAU, 64)
    checks = failures = 0
    worst = 0.0
    for dep in Dependence:
        phis, omegas = dep.phases(t)
        simulated = batch_success_probability(spec, schedule, phis, omegas)
        reference = np.array(
            [size9_reference_probability(dep, float(v)) for v in t]
        )
        err = np.abs(simulated - reference)
        checks += t.size
        failures += int(np.count_nonzero(err > tolerance))
        worst = max(worst, float(err.max()))
    return SuiteResult("analytic-n9", checks, failures, worst)


def verify_closed_form(tolerance: float = 1e-12) -> SuiteResult:
    """Unmodified search at exact phases vs the textbook rotation formula."""
    schedule = PhaseSchedule(ScheduleKind.OPH, base_phi=math.pi, base_omega=math.pi)
    checks = failures = 0
    worst = 0.0
    for size in range(2, 111):
        spec = ProblemSpec(size)
        k_iter = optimal_iterations(spec)
        expected = math.sin((2 * k_iter + 1) * rotation_angle(spec) / 2.0) ** 2
        err = abs(success_probability(spec, schedule, iters=k_iter) - expected)
        checks += 1
        failures += err > tolerance
        worst = max(worst, err)
    return SuiteResult("closed-form", checks, failures, worst)


def _solution_counts(size: int) -> Tuple[int, ...]:
    candidates = {1, 2, size // 4}
    return tuple(sorted(m for m in candidates if 1 <= m and 2 * m <= size))


def verify_oracle_equivalence(
    tolerance: float = 1e-10,
    *,
    size_max: int = 64,
    pairs_per_case: int = 20,
    seed: int = 20240131,
) -> SuiteResult:
    """Reduced two-amplitude runs against the full state-vector oracle."""
    rng = np.random.default_rng(seed)
    kinds = (
        ScheduleKind.OPH,
        ScheduleKind.SPM,
        ScheduleKind.ACSP,
        ScheduleKind.ACBP,
        ScheduleKind.HIDP,
    )
    checks = failures = 0
    worst = 0.0
    for size in range(2, size_max + 1):
        for m in _solution_counts(size):
            spec = ProblemSpec(size, m)
            solutions = tuple(
                int(v) for v in rng.choice(size, size=m, replace=False)
            )
            for kind in kinds:
                for _ in range(pairs_per_case):
                    phi, omega = rng.uniform(0.0, TAU, size=2)
                    schedule = PhaseSchedule(kind, base_phi=phi, base_omega=omega)
                    reduced = success_probability(spec, schedule)
                    full = run_full(spec, solutions, schedule)
                    err = abs(reduced - full)
                    checks += 1
                    failures += err > tolerance
                    worst = max(worst, err)
    return SuiteResult("oracle-equivalence", checks, failures, worst)


def verify_duality(
    tolerance: float = 1e-12,
    probability_fn: Optional[ProbabilityFn] = None,
) -> SuiteResult:
    """Negative-kernel runs vs positive-kernel runs at the mirrored phase."""
    fn = probability_fn or _default_probability
    checks = failures = 0
    worst = 0.0
    grid = np.linspace(0.0, TAU, 50)
    phis, omegas = (a.ravel() for a in np.meshgrid(grid, grid, indexing="ij"))
    for size in (9, 36, 72):
        spec = ProblemSpec(size)
        k_iter = optimal_iterations(spec)
        minus = fn(spec, ScheduleKind.SPM, phis, omegas, k_iter)
        plus = fn(spec, ScheduleKind.OPH, phis, (-omegas) % TAU, k_iter)
        err = np.abs(minus - plus)
        checks += err.size
        failures += int(np.count_nonzero(err > tolerance))
        worst = max(worst, float(err.max()))
    return SuiteResult("duality", checks, failures, worst)


def _half_flip_pairs(
    phi: float, omega: float, k_iter: int, phi_offset: int, omega_offset: int
) -> Tuple[Tuple[float, float], ...]:
    # sign exponent floor(j / j_max) + per-phase offset, zero-based j
    j_max = (k_iter + 1) // 2
    pairs = []
    for j in range(k_iter):
        e = j // j_max
        p = phi if (e + phi_offset) % 2 == 0 else (-phi) % TAU
        w = omega if (e + omega_offset) % 2 == 0 else (-omega) % TAU
        pairs.append((p, w))
    return tuple(pairs)


def _alternating_pairs(
    phi: float,
    omega: float,
    k_iter: int,
    phi_offset: Optional[int],
    omega_offset: Optional[int],
) -> Tuple[Tuple[float, float], ...]:
    # sign exponent j + per-phase offset; offset None means the phase is constant
    pairs = []
    for j in range(k_iter):
        p = (
            phi
            if phi_offset is None or (j + phi_offset) % 2 == 0
            else (-phi) % TAU
        )
        w = (
            omega
            if omega_offset is None or (j + omega_offset) % 2 == 0
            else (-omega) % TAU
        )
        pairs.append((p, w))
    return tuple(pairs)


# (label, custom-pair builder, target kind, base-phase map for the target)
_EQUIVALENCE_CASES = (
    (
        "oracle-fixed, diffusion flips offset",
        lambda p, w, k: _alternating_pairs(p, w, k, None, 1),
        ScheduleKind.ACSP,
        lambda p, w: (p, (-w) % TAU),
    ),
    (
        "oracle flips, diffusion fixed",
        lambda p, w, k: _alternating_pairs(p, w, k, 0, None),
        ScheduleKind.ACSP,
        lambda p, w: (w, (-p) % TAU),
    ),
    (
        "oracle flips offset, diffusion fixed",
        lambda p, w, k: _alternating_pairs(p, w, k, 1, None),
        ScheduleKind.ACSP,
        lambda p, w: (w, p),
    ),
    (
        "both flip in phase",
        lambda p, w, k: _alternating_pairs(p, w, k, 0, 0),
        ScheduleKind.ACBP,
        lambda p, w: ((-p) % TAU, w),
    ),
    (
        "both flip in phase, offset",
        lambda p, w, k: _alternating_pairs(p, w, k, 1, 1),
        ScheduleKind.ACBP,
        lambda p, w: ((-p) % TAU, w),
    ),
    (
        "both flip, diffusion offset",
        lambda p, w, k: _alternating_pairs(p, w, k, 0, 1),
        ScheduleKind.ACBP,
        lambda p, w: ((-p) % TAU, (-w) % TAU),
    ),
    (
        "half-run flip, both together",
        lambda p, w, k: _half_flip_pairs(p, w, k, 0, 0),
        ScheduleKind.HIDP,
        lambda p, w: (w, (-p) % TAU),
    ),
    (
        "half-run flip, both together, offset",
        lambda p, w, k: _half_flip_pairs(p, w, k, 1, 1),
        ScheduleKind.HIDP,
        lambda p, w: ((-w) % TAU, p),
    ),
    (
        "half-run flip, oracle offset",
        lambda p, w, k: _half_flip_pairs(p, w, k, 1, 0),
        ScheduleKind.HIDP,
        lambda p, w: (p, w),
    ),
    (
        "half-run flip, diffusion offset",
        lambda p, w, k: _half_flip_pairs(p, w, k, 0, 1),
        ScheduleKind.HIDP,
        lambda p, w: (p, w),
    ),
)


def verify_equivalences(
    tolerance: float = 1e-12, *, grid_points: int = 25
) -> SuiteResult:
    """Sign-pattern variants against the named schedule at remapped phases."""
    checks = failures = 0
    worst = 0.0
    grid = np.linspace(0.0, TAU, grid_points)
    for size in (9, 36):
        spec = ProblemSpec(size)
        k_iter = optimal_iterations(spec)
        for label, build, kind, remap in _EQUIVALENCE_CASES:
            target = PhaseSchedule(kind)
            for phi in grid:
                base = [remap(phi, w) for w in grid]
                ref = batch_success_probability(
                    spec,
                    target,
                    np.array([b[0] for b in base]),
                    np.array([b[1] for b in base]),
                    iters=k_iter,
                )
                for idx, omega in enumerate(grid):
                    custom = PhaseSchedule(
                        ScheduleKind.CUSTOM,
                        custom_pairs=build(float(phi), float(omega), k_iter),
                    )
                    err = abs(
                        success_probability(spec, custom, iters=k_iter)
                        - float(ref[idx])
                    )
                    checks += 1
                    failures += err > tolerance
                    worst = max(worst, err)
    return SuiteResult("equivalences", checks, failures, worst)


def verify_phase_matching(threshold: float = 0.999) -> SuiteResult:
    """Deterministic-success angles actually succeed for both kernel variants."""
    checks = failures = 0
    worst_gap = 0.0
    fallbacks = 0
    for size in range(7, 111):
        spec = ProblemSpec(size)
        result = phase_matching_angle(spec)
        fallbacks += result.branch == "numeric"
        angle = result.angle
        plus = success_probability(
            spec,
            PhaseSchedule(ScheduleKind.OPH, base_phi=angle, base_omega=angle),
            iters=result.iterations,
        )
        minus = success_probability(
            spec,
            PhaseSchedule(
                ScheduleKind.SPM, base_phi=angle, base_omega=(-angle) % TAU
            ),
            iters=result.iterations,
        )
        for p in (plus, minus):
            checks += 1
            failures += p < threshold
            worst_gap = max(worst_gap, max(0.0, threshold - p))
    note = f"numeric-fallback sizes: {fallbacks}"
    return SuiteResult("phase-matching", checks, failures, worst_gap, note)


_SUITES: Dict[str, Callable[..., SuiteResult]] = {
    "analytic-n9": verify_analytic_n9,
    "closed-form": verify_closed_form,
    "oracle-equivalence": verify_oracle_equivalence,
    "duality": verify_duality,
    "equivalences": verify_equivalences,
    "phase-matching": verify_phase_matching,
}


def suite_names() -> Tuple[str, ...]:
    return tuple(_SUITES)


def run_suites(
    names: Optional[Sequence[str]] = None,
    *,
    duality_probability_fn: Optional[ProbabilityFn] = None,
) -> List[SuiteResult]:
    """Run the named suites (all by default) in registry order."""
    selected = tuple(names) if names is not None else suite_names()
    unknown = [n for n in selected if n not in _SUITES]
    if unknown:
        raise ValueError(
            f"unknown suite(s) {', '.join(unknown)}; "
            f"choose from {', '.join(suite_names())}"
        )
    results = []
    for name in suite_names():
        if name not in selected:
            continue
        if name == "duality":
            results.append(verify_duality(probability_fn=duality_probability_fn))
        else:
            results.append(_SUITES[name]())
    return results
