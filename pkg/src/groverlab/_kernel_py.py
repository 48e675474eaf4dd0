"""Numpy fallback for the scheduled-iteration kernel.

Mirrors the compiled extension in ``_kernel_cy.pyx``; both walk the reduced
two-amplitude state through ``k_iter`` generalized-reflection iterations for a
batch of phase columns.
"""

import numpy as np


def run_phases_batch(theta, phis, omegas, minus=False):
    """Success probabilities after k scheduled iterations per column.

    Parameters
    ----------
    theta : float
        Rotation angle of the reduced plane, ``2*arcsin(sqrt(M/N))``.
    phis, omegas : ndarray, shape (k_iter, n)
        Oracle and diffusion phases; row j holds the phases of iteration j.
    minus : bool
        Selects the reflection pair whose diffusion phase enters with a
        negative sign (dropping its global phase factor).

    Returns
    -------
    ndarray, shape (n,) of squared solution-component moduli.
    """
    phis = np.ascontiguousarray(phis, dtype=np.float64)
    omegas = np.ascontiguousarray(omegas, dtype=np.float64)
    if phis.ndim != 2 or phis.shape != omegas.shape:
        raise ValueError("phase arrays must share shape (k_iter, n)")
    k_iter, n = phis.shape
    cos_t = np.cos(theta)
    sin_t = np.sin(theta)
    sign = -1.0 if minus else 1.0
    amp_a = np.full(n, np.cos(theta / 2.0), dtype=np.complex128)
    amp_b = np.full(n, np.sin(theta / 2.0), dtype=np.complex128)
    for j in range(k_iter):
        half = 0.5 * (np.exp(sign * 1j * omegas[j]) - 1.0)
        oracle = np.exp(1j * phis[j])
        amp_a, amp_b = (
            (1.0 + half * (1.0 + cos_t)) * amp_a + oracle * half * sin_t * amp_b,
            half * sin_t * amp_a + oracle * (1.0 + half * (1.0 - cos_t)) * amp_b,
        )
    return np.abs(amp_b) ** 2
