"""Phase-plane sampling: cross-sections through (pi, pi), grids, robustness widths."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple, Union

import numpy as np

from .core import (
    TAU,
    PhaseSchedule,
    ProblemSpec,
    ScheduleKind,
    batch_success_probability,
)

ArrayLike = Union[float, np.ndarray]


class Dependence(Enum):
    """Cross-section line through the phase plane."""

    OMEGA_EQ_PHI = "omega-eq-phi"
    OMEGA_EQ_2PI_MINUS_PHI = "omega-eq-2pi-minus-phi"
    OMEGA_EQ_PI = "omega-eq-pi"
    PHI_EQ_PI = "phi-eq-pi"

    @property
    def sweeps_omega(self) -> bool:
        """True when the free variable of the line is the diffusion phase."""
        return self is Dependence.PHI_EQ_PI

    def phases(self, t: ArrayLike) -> Tuple[ArrayLike, ArrayLike]:
        """Map the sweep variable t to the (phi, omega) base pair."""
        arr = np.asarray(t, dtype=np.float64)
        if self is Dependence.OMEGA_EQ_PHI:
            phi, omega = arr, arr
        elif self is Dependence.OMEGA_EQ_2PI_MINUS_PHI:
            phi, omega = arr, TAU - arr
        elif self is Dependence.OMEGA_EQ_PI:
            phi, omega = arr, np.full_like(arr, math.pi)
        else:
            phi, omega = np.full_like(arr, math.pi), arr
        if np.ndim(t) == 0:
            return float(phi), float(omega)
        return phi, omega


@dataclass(frozen=True)
class SampleSet:
    """Sampled success probabilities plus the metadata that produced them."""

    phi: np.ndarray
    omega: np.ndarray
    p: np.ndarray
    spec: Optional[ProblemSpec] = None
    schedule_kind: Optional[ScheduleKind] = None
    dependence: Optional[Dependence] = None
    grid_shape: Optional[Tuple[int, int]] = None

    def __post_init__(self) -> None:
        for name in ("phi", "omega", "p"):
            object.__setattr__(self, name, np.asarray(getattr(self, name), dtype=np.float64))
        if not (self.phi.shape == self.omega.shape == self.p.shape) or self.phi.ndim != 1:
            raise ValueError("phi, omega and p must be 1-D arrays of equal length")
        if self.p.size and (self.p.min() < -1e-9 or self.p.max() > 1.0 + 1e-9):
            raise ValueError("probabilities must lie within [0, 1]")

    def __len__(self) -> int:
        return int(self.p.size)

    def sweep_values(self) -> np.ndarray:
        """Positions along the cross-section's free variable."""
        if self.dependence is None:
            raise ValueError("sample set does not describe a 1-D cross-section")
        return self.omega if self.dependence.sweeps_omega else self.phi

    def to_csv(self, path) -> None:
        """Write header ``phi,omega,p`` and one row per sample (17 significant digits)."""
        with open(path, "w", encoding="ascii", newline="") as fh:
            fh.write("phi,omega,p\n")
            for phi, omega, p in zip(self.phi, self.omega, self.p):
                fh.write(f"{phi:.17g},{omega:.17g},{p:.17g}\n")

    @staticmethod
    def read_csv(path) -> "SampleSet":
        """Read a file produced by :meth:`to_csv` (metadata is not stored)."""
        phis, omegas, probs = [], [], []
        with open(path, "r", encoding="ascii") as fh:
            header = fh.readline().strip()
            if header != "phi,omega,p":
                raise ValueError(f"{path}: expected header 'phi,omega,p', got {header!r}")
            for lineno, line in enumerate(fh, start=2):
                line = line.strip()
                if not line:
                    continue
                parts = line.split(",")
                if len(parts) != 3:
                    raise ValueError(f"{path}: line {lineno}: expected 3 fields")
                try:
                    phis.append(float(parts[0]))
                    omegas.append(float(parts[1]))
                    probs.append(float(parts[2]))
                except ValueError as exc:
                    raise ValueError(f"{path}: line {lineno}: {exc}") from None
        return SampleSet(np.array(phis), np.array(omegas), np.array(probs))


def cross_section(
    spec: ProblemSpec,
    schedule: PhaseSchedule,
    dependence: Dependence,
    samples: int = 1001,
) -> SampleSet:
    """Uniform sweep of the cross-section's free variable over [0, 2*pi]."""
    if samples < 2:
        raise ValueError("need at least two samples")
    t = np.linspace(0.0, TAU, samples)
    phi, omega = dependence.phases(t)
    p = batch_success_probability(spec, schedule, phi, omega)
    return SampleSet(phi, omega, p, spec, schedule.kind, dependence)


def grid(
    spec: ProblemSpec,
    schedule: PhaseSchedule,
    rows: int = 101,
    cols: int = 101,
) -> SampleSet:
    """Row-major sampling of [0, 2*pi]^2; rows index phi, columns index omega."""
    if rows < 2 or cols < 2:
        raise ValueError("grid needs at least 2 points per axis")
    phi_axis = np.linspace(0.0, TAU, rows)
    omega_axis = np.linspace(0.0, TAU, cols)
    phi = np.repeat(phi_axis, cols)
    omega = np.tile(omega_axis, rows)
    p = batch_success_probability(spec, schedule, phi, omega)
    return SampleSet(phi, omega, p, spec, schedule.kind, None, (rows, cols))


def robustness_interval(samples: SampleSet, delta: float = 0.02) -> float:
    """Half-width of the contiguous region keeping p >= (1-delta)*max(p).

    The centre is the (tie-averaged) argmax sample; resolution is one sample
    step.  Degenerate all-equal data returns the full half-range.
    """
    if not 0.0 < delta < 1.0:
        raise ValueError("delta must lie strictly between 0 and 1")
    x = samples.sweep_values()
    p = samples.p
    if len(p) < 3:
        raise ValueError("need at least three samples")
    p_max = float(p.max())
    if p_max - float(p.min()) <= 1e-15 * max(1.0, abs(p_max)):
        return float(x[-1] - x[0]) / 2.0
    max_idx = np.flatnonzero(p == p_max)
    centre = int((max_idx[0] + max_idx[-1]) // 2)
    threshold = (1.0 - delta) * p_max
    left = centre
    while left - 1 >= 0 and p[left - 1] >= threshold:
        left -= 1
    right = centre
    while right + 1 < len(p) and p[right + 1] >= threshold:
        right += 1
    return float(min(x[centre] - x[left], x[right] - x[centre]))
