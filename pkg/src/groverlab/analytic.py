"""Closed-form success amplitudes for short runs and the size-9 reference curves."""

from __future__ import annotations

import cmath
import math

from .core import ProblemSpec, optimal_iterations, rotation_angle
from .sweep import Dependence

# Fourier coefficients (in exp(i*phi)) of the printed 5-decimal reference
# amplitudes for a register of size 9 with a single solution, two iterations.
_SIZE9_DIAGONAL = (0.03292, 0.46090, -0.69135, -0.13168, -0.00411)
_SIZE9_ANTIDIAGONAL = (0.13580, -0.32921, 0.52674)   # cosine series
_SIZE9_FIXED_LINE = (0.46090, -0.32921, 0.20164)     # same curve for both pi-lines


def one_iteration_amplitude(theta: float, phi: float, omega: float) -> complex:
    """Solution-axis amplitude after a single (phi, omega) iteration."""
    s = math.sin(theta / 2.0)
    c = math.cos(theta / 2.0)
    e_w = cmath.exp(1j * omega) - 1.0
    return cmath.exp(1j * phi) * s * (1.0 + e_w * s * s) + 0.5 * e_w * c * math.sin(theta)


def two_iteration_amplitude(theta: float, phi: float, omega: float) -> complex:
    """Solution-axis amplitude after two identical (phi, omega) iterations."""
    s = math.sin(theta / 2.0)
    c = math.cos(theta / 2.0)
    e_p = cmath.exp(1j * phi) - 1.0
    e_w = cmath.exp(1j * omega) - 1.0
    first = (
        cmath.exp(1j * phi)
        * s
        * (1.0 + e_w * s * s)
        * (cmath.exp(1j * phi) + cmath.exp(1j * omega) - 1.0 + e_p * e_w * s * s)
    )
    second = 0.5 * e_w * c * (cmath.exp(1j * omega) + e_p * e_w * s * s) * math.sin(theta)
    return first + second


def two_iteration_amplitude_minus(theta: float, phi: float, omega: float) -> complex:
    """Two-iteration amplitude for the negative-sign kernel (omega -> -omega)."""
    return two_iteration_amplitude(theta, phi, -omega)


def two_iteration_amplitude_multiphase(
    theta: float,
    phi1: float,
    omega1: float,
    phi2: float,
    omega2: float,
) -> complex:
    """Two-iteration amplitude with independent phase pairs per iteration."""
    s = math.sin(theta / 2.0)
    c = math.cos(theta / 2.0)
    e_p1 = cmath.exp(1j * phi1) - 1.0
    e_w1 = cmath.exp(1j * omega1) - 1.0
    e_w2 = cmath.exp(1j * omega2) - 1.0
    first = (
        cmath.exp(1j * phi2)
        * s
        * (-1.0 + cmath.exp(1j * phi1) + cmath.exp(1j * omega1) + e_p1 * e_w1 * s * s)
        * (1.0 + e_w2 * s * s)
    )
    second = 0.5 * e_w2 * c * (cmath.exp(1j * omega1) + e_p1 * e_w1 * s * s) * math.sin(theta)
    return first + second


def size9_reference_probability(dependence: Dependence, t: float) -> float:
    """Printed-coefficient reference curve for N=9, M=1 along a cross-section.

    t is the free variable of the dependence (phi, or omega on the phi=pi line).
    """
    if dependence is Dependence.OMEGA_EQ_PHI:
        amp = sum(
            coeff * cmath.exp(1j * order * t)
            for order, coeff in enumerate(_SIZE9_DIAGONAL)
        )
        return abs(amp) ** 2
    if dependence is Dependence.OMEGA_EQ_2PI_MINUS_PHI:
        a0, a1, a2 = _SIZE9_ANTIDIAGONAL
        return (a0 + a1 * math.cos(t) + a2 * math.cos(2.0 * t)) ** 2
    # The two pi-lines share one curve in the free variable.
    b0, b1, b2 = _SIZE9_FIXED_LINE
    amp = b0 + b1 * cmath.exp(1j * t) + b2 * cmath.exp(2j * t)
    return abs(amp) ** 2


def closed_form_probability(spec: ProblemSpec, dependence: Dependence, t: float) -> float:
    """Reference probability along a cross-section, from printed closed forms.

    Uses the size-9 coefficient curves when they apply, otherwise the exact
    one- or two-iteration amplitudes; other iteration counts have no stored
    closed form here and raise ValueError.
    """
    if spec.register_size == 9 and spec.num_solutions == 1:
        return size9_reference_probability(dependence, t)
    theta = rotation_angle(spec)
    phi, omega = dependence.phases(float(t))
    k_iter = optimal_iterations(spec)
    if k_iter == 1:
        return abs(one_iteration_amplitude(theta, phi, omega)) ** 2
    if k_iter == 2:
        return abs(two_iteration_amplitude(theta, phi, omega)) ** 2
    raise ValueError(
        f"no closed-form reference for {k_iter} iterations (register {spec.register_size})"
    )
