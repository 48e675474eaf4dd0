"""Direct N-dimensional state-vector runs used to cross-check the reduced model.

Every gate is a generalized Householder reflection, i.e. a rank-1 update, so a
full run costs O(N) per iteration without ever materializing a matrix.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Iterable, Optional, Tuple, Union

import numpy as np

from .core import (
    IterationKernel,
    PhaseSchedule,
    ProblemSpec,
    optimal_iterations,
    schedule_phases,
)


@dataclass(frozen=True)
class SolutionSet:
    """Marked basis-state indices, stored sorted and distinct."""

    indices: Tuple[int, ...]

    def __post_init__(self) -> None:
        idx = tuple(sorted(int(i) for i in self.indices))
        if not idx:
            raise ValueError("solution set must not be empty")
        if len(set(idx)) != len(idx):
            raise ValueError("solution indices must be distinct")
        if idx[0] < 0:
            raise ValueError("solution indices must be non-negative")
        object.__setattr__(self, "indices", idx)

    def __len__(self) -> int:
        return len(self.indices)


def equal_superposition(n: int) -> np.ndarray:
    """Uniform superposition over n basis states (what the transform of |0> is)."""
    if n < 2:
        raise ValueError("need at least two basis states")
    return np.full(n, 1.0 / math.sqrt(n), dtype=np.complex128)


def apply_generalized_householder(
    state: np.ndarray, axis: np.ndarray, phase: float
) -> np.ndarray:
    """Apply I - (1 - exp(i*phase)) |axis><axis| to the state.

    The axis must be normalized; a rank-1 update keeps the cost linear.
    """
    state = np.asarray(state, dtype=np.complex128)
    axis = np.asarray(axis, dtype=np.complex128)
    if state.shape != axis.shape or state.ndim != 1:
        raise ValueError("state and axis must be 1-D arrays of equal length")
    norm = float(np.vdot(axis, axis).real)
    if abs(norm - 1.0) > 1e-9:
        raise ValueError("reflection axis must be normalized")
    overlap = np.vdot(axis, state)
    return state - (1.0 - cmath.exp(1j * phase)) * overlap * axis


def solution_superposition(n: int, solutions: SolutionSet) -> np.ndarray:
    """Uniform superposition over the marked indices."""
    vec = np.zeros(n, dtype=np.complex128)
    vec[list(solutions.indices)] = 1.0 / math.sqrt(len(solutions))
    return vec


def run_full(
    spec: ProblemSpec,
    solutions: Union[SolutionSet, Iterable[int]],
    schedule: PhaseSchedule,
    iters: Optional[int] = None,
) -> float:
    """Probability of measuring any marked index after the scheduled run."""
    if not isinstance(solutions, SolutionSet):
        solutions = SolutionSet(tuple(solutions))
    n = spec.register_size
    if len(solutions) != spec.num_solutions:
        raise ValueError(
            f"expected {spec.num_solutions} solutions, got {len(solutions)}"
        )
    if solutions.indices[-1] >= n:
        raise ValueError("solution index outside the register")
    k_iter = optimal_iterations(spec) if iters is None else int(iters)
    if k_iter < 0:
        raise ValueError("iteration count must be non-negative")
    marked = solution_superposition(n, solutions)
    uniform = equal_superposition(n)
    minus = schedule.kernel is IterationKernel.MINUS
    state = uniform.copy()
    for j in range(k_iter):
        phi_j, omega_j = schedule_phases(schedule, j, k_iter)
        state = apply_generalized_householder(state, marked, phi_j)
        state = apply_generalized_householder(
            state, uniform, -omega_j if minus else omega_j
        )
    picked = state[list(solutions.indices)]
    return float(np.sum(picked.real**2 + picked.imag**2))
