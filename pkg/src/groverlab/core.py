"""Reduced two-amplitude dynamics of Householder-built Grover iterations.

Any iterate stays in the plane spanned by the uniform superposition of
non-solutions and the uniform superposition of solutions, so a search run is a
product of 2x2 complex matrices applied to (cos(theta/2), sin(theta/2)).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence, Tuple

import numpy as np

from .kernels import run_phases_batch

TAU = 2.0 * math.pi


class IterationKernel(Enum):
    """Which generalized-reflection pair builds one iteration."""

    PLUS = "plus"    # diffusion phase enters as exp(+i*omega)
    MINUS = "minus"  # diffusion phase enters as exp(-i*omega), global phase dropped


class ScheduleKind(Enum):
    OPH = "oph"        # constant phases, positive-sign kernel
    SPM = "spm"        # constant phases, negative-sign kernel
    ACSP = "acsp"      # diffusion phase alternates sign each iteration
    ACBP = "acbp"      # both phases alternate sign, oracle starts negated
    HIDP = "hidp"      # halfway through the run both phase signs flip at once
    CUSTOM = "custom"  # explicit per-iteration phase pairs


@dataclass(frozen=True)
class ProblemSpec:
    """Search instance: register dimension N and number of marked items M."""

    register_size: int
    num_solutions: int = 1

    def __post_init__(self) -> None:
        n, m = self.register_size, self.num_solutions
        if not isinstance(n, (int, np.integer)) or not isinstance(m, (int, np.integer)):
            raise TypeError("register size and solution count must be integers")
        if n < 2:
            raise ValueError("register size must be at least 2")
        if not 1 <= m < n:
            raise ValueError("solution count must satisfy 1 <= M < N")
        if 2 * m > n:
            raise ValueError("solution fraction M/N must not exceed 1/2")


@dataclass(frozen=True)
class ReducedState:
    """Amplitudes on the non-solution and solution superposition axes."""

    amp_alpha: complex
    amp_beta: complex

    def success_probability(self) -> float:
        return abs(self.amp_beta) ** 2

    def norm_squared(self) -> float:
        return abs(self.amp_alpha) ** 2 + abs(self.amp_beta) ** 2


@dataclass(frozen=True)
class PhaseSchedule:
    """Base phase pair plus the rule that modulates it per iteration."""

    kind: ScheduleKind
    base_phi: float = math.pi
    base_omega: float = math.pi
    custom_pairs: Optional[Tuple[Tuple[float, float], ...]] = None

    def __post_init__(self) -> None:
        for name in ("base_phi", "base_omega"):
            value = float(getattr(self, name))
            if not math.isfinite(value) or not 0.0 <= value <= TAU:
                raise ValueError(f"{name} must lie in [0, 2*pi], got {value!r}")
            object.__setattr__(self, name, value)
        if self.kind is ScheduleKind.CUSTOM:
            if self.custom_pairs is None:
                raise ValueError("custom schedules require explicit phase pairs")
            pairs = tuple((float(p), float(w)) for p, w in self.custom_pairs)
            if not pairs:
                raise ValueError("custom schedules need at least one phase pair")
            for p, w in pairs:
                if not (math.isfinite(p) and math.isfinite(w)):
                    raise ValueError("custom phase pairs must be finite")
            object.__setattr__(self, "custom_pairs", pairs)
        elif self.custom_pairs is not None:
            raise ValueError("custom_pairs is only meaningful for custom schedules")

    @property
    def kernel(self) -> IterationKernel:
        if self.kind is ScheduleKind.SPM:
            return IterationKernel.MINUS
        return IterationKernel.PLUS


def rotation_angle(spec: ProblemSpec) -> float:
    """Plane rotation angle theta = 2*arcsin(sqrt(M/N))."""
    return 2.0 * math.asin(math.sqrt(spec.num_solutions / spec.register_size))


def optimal_iterations(spec: ProblemSpec) -> int:
    """Iteration count keeping the success angle (2k+1)*theta/2 near pi/2.

    Nearest integer to (pi/4)*sqrt(N/M) - 1/2, at least 1.  The square-root
    form, not the exact-theta one, decides the rare boundary sizes (first at
    N=26, M=1) where the two round differently; the reference robustness
    tables were produced with this count.
    """
    ratio = math.sqrt(spec.register_size / spec.num_solutions)
    return max(1, round(math.pi * ratio / 4.0 - 0.5))


def initial_reduced_state(spec: ProblemSpec) -> ReducedState:
    """Uniform superposition expressed in the two-axis plane."""
    theta = rotation_angle(spec)
    return ReducedState(complex(math.cos(theta / 2.0)), complex(math.sin(theta / 2.0)))


def apply_iteration(
    state: ReducedState,
    theta: float,
    phi: float,
    omega: float,
    kernel: IterationKernel = IterationKernel.PLUS,
) -> ReducedState:
    """One oracle + diffusion step on the reduced amplitudes.

    The matrix is unitary for any real phases: columns are the images of the
    two axes under (diffusion reflection) * (oracle reflection).
    """
    if not 0.0 < theta < math.pi:
        raise ValueError("theta must lie strictly between 0 and pi")
    w = -omega if kernel is IterationKernel.MINUS else omega
    half = 0.5 * (cmath.exp(1j * w) - 1.0)
    oracle = cmath.exp(1j * phi)
    cos_t = math.cos(theta)
    sin_t = math.sin(theta)
    return ReducedState(
        (1.0 + half * (1.0 + cos_t)) * state.amp_alpha
        + oracle * half * sin_t * state.amp_beta,
        half * sin_t * state.amp_alpha
        + oracle * (1.0 + half * (1.0 - cos_t)) * state.amp_beta,
    )


def _negate(angle: float) -> float:
    # -x folded back into [0, 2*pi)
    return (-angle) % TAU


def schedule_phases(schedule: PhaseSchedule, j: int, k_iter: int) -> Tuple[float, float]:
    """Phase pair used by iteration j (zero-based) of a k_iter-step run."""
    if k_iter < 1:
        raise ValueError("iteration count must be positive")
    if not 0 <= j < k_iter:
        raise IndexError(f"iteration index {j} outside 0..{k_iter - 1}")
    kind = schedule.kind
    phi, omega = schedule.base_phi, schedule.base_omega
    if kind in (ScheduleKind.OPH, ScheduleKind.SPM):
        return phi, omega
    if kind is ScheduleKind.ACSP:
        return phi, omega if j % 2 == 0 else _negate(omega)
    if kind is ScheduleKind.ACBP:
        if j % 2 == 0:
            return _negate(phi), omega
        return phi, _negate(omega)
    if kind is ScheduleKind.HIDP:
        # first half (phi, -omega), second half (-phi, omega); the odd
        # iteration of an odd-length run goes to the first half
        half_span = (k_iter + 1) // 2
        if (j // half_span) % 2 == 0:
            return phi, _negate(omega)
        return _negate(phi), omega
    pairs = schedule.custom_pairs
    assert pairs is not None
    if len(pairs) != k_iter:
        raise ValueError(
            f"custom schedule defines {len(pairs)} iterations, run asked for {k_iter}"
        )
    return pairs[j]


def success_probability(
    spec: ProblemSpec, schedule: PhaseSchedule, iters: Optional[int] = None
) -> float:
    """Probability of measuring any solution after the scheduled run."""
    k_iter = optimal_iterations(spec) if iters is None else int(iters)
    if k_iter < 0:
        raise ValueError("iteration count must be non-negative")
    theta = rotation_angle(spec)
    state = initial_reduced_state(spec)
    kernel = schedule.kernel
    for j in range(k_iter):
        phi_j, omega_j = schedule_phases(schedule, j, k_iter)
        state = apply_iteration(state, theta, phi_j, omega_j, kernel)
    return state.success_probability()


def _iteration_phase_rows(
    kind: ScheduleKind, phis: np.ndarray, omegas: np.ndarray, k_iter: int
) -> Tuple[np.ndarray, np.ndarray]:
    """Per-iteration phase matrices, shape (k_iter, n), matching schedule_phases."""
    phi_rows = []
    omega_rows = []
    for j in range(k_iter):
        if kind in (ScheduleKind.OPH, ScheduleKind.SPM):
            phi_rows.append(phis)
            omega_rows.append(omegas)
        elif kind is ScheduleKind.ACSP:
            phi_rows.append(phis)
            omega_rows.append(omegas if j % 2 == 0 else (-omegas) % TAU)
        elif kind is ScheduleKind.ACBP:
            if j % 2 == 0:
                phi_rows.append((-phis) % TAU)
                omega_rows.append(omegas)
            else:
                phi_rows.append(phis)
                omega_rows.append((-omegas) % TAU)
        elif kind is ScheduleKind.HIDP:
            half_span = (k_iter + 1) // 2
            if (j // half_span) % 2 == 0:
                phi_rows.append(phis)
                omega_rows.append((-omegas) % TAU)
            else:
                phi_rows.append((-phis) % TAU)
                omega_rows.append(omegas)
        else:  # pragma: no cover - guarded by caller
            raise ValueError("custom schedules fix their phases per iteration")
    return np.ascontiguousarray(np.stack(phi_rows)), np.ascontiguousarray(
        np.stack(omega_rows)
    )


def batch_success_probability(
    spec: ProblemSpec,
    schedule: PhaseSchedule,
    phis: Sequence[float],
    omegas: Sequence[float],
    iters: Optional[int] = None,
) -> np.ndarray:
    """Vectorized run over many base phase pairs (overrides the schedule base).

    Custom schedules are rejected: their phases do not derive from a base pair.
    """
    if schedule.kind is ScheduleKind.CUSTOM:
        raise ValueError("custom schedules fix their phases per iteration")
    phi_arr = np.atleast_1d(np.asarray(phis, dtype=np.float64))
    omega_arr = np.atleast_1d(np.asarray(omegas, dtype=np.float64))
    phi_arr, omega_arr = np.broadcast_arrays(phi_arr, omega_arr)
    phi_arr = phi_arr.ravel()
    omega_arr = omega_arr.ravel()
    k_iter = optimal_iterations(spec) if iters is None else int(iters)
    if k_iter < 0:
        raise ValueError("iteration count must be non-negative")
    theta = rotation_angle(spec)
    if k_iter == 0:
        return np.full(phi_arr.shape, math.sin(theta / 2.0) ** 2)
    phi_rows, omega_rows = _iteration_phase_rows(schedule.kind, phi_arr, omega_arr, k_iter)
    minus = schedule.kernel is IterationKernel.MINUS
    return run_phases_batch(theta, phi_rows, omega_rows, minus)


@dataclass(frozen=True)
class PhaseMatchingResult:
    """Deterministic-success phase and how it was obtained."""

    angle: float          # phi_max; the run uses omega = phi_max as well
    iterations: int
    branch: str           # "formula" or "numeric"
    probability: float    # verified success probability at the matched phases


def phase_matching_angle(spec: ProblemSpec) -> PhaseMatchingResult:
    """Phase pair (phi, phi) driving the success probability to one.

    The closed form is 2*arcsin(sin(pi/(4J+6)) * sqrt(N/M)) with J the
    smallest count keeping the arcsin argument within [-1, 1]; the result is
    verified by an actual run with J+1 iterations and falls back to a numeric
    maximization over the diagonal phi == omega when verification fails.
    """
    ratio = math.sqrt(spec.register_size / spec.num_solutions)
    j = 0
    while math.sin(math.pi / (4 * j + 6)) * ratio > 1.0:
        j += 1
    angle = 2.0 * math.asin(math.sin(math.pi / (4 * j + 6)) * ratio)
    iters = j + 1
    schedule = PhaseSchedule(ScheduleKind.OPH, angle, angle)
    prob = success_probability(spec, schedule, iters)
    if prob >= 0.999:
        return PhaseMatchingResult(angle, iters, "formula", prob)
    grid = np.linspace(0.0, TAU, 2000)
    k_iter = optimal_iterations(spec)
    probs = batch_success_probability(
        spec, PhaseSchedule(ScheduleKind.OPH), grid, grid, iters=k_iter
    )
    best = int(np.argmax(probs))
    return PhaseMatchingResult(float(grid[best]), k_iter, "numeric", float(probs[best]))
