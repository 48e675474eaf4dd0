# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled scheduled-iteration kernel.

Same contract as ``_kernel_py.run_phases_batch``; the per-point loop runs
without the interpreter so large phase grids stay cheap.
"""

import numpy as np

from libc.math cimport cos, sin


def run_phases_batch(object theta, object phis, object omegas, bint minus=False):
    cdef double th = float(theta)
    phi_arr = np.ascontiguousarray(phis, dtype=np.float64)
    omega_arr = np.ascontiguousarray(omegas, dtype=np.float64)
    if phi_arr.ndim != 2 or phi_arr.shape != omega_arr.shape:
        raise ValueError("phase arrays must share shape (k_iter, n)")
    cdef double[:, ::1] pv = phi_arr
    cdef double[:, ::1] wv = omega_arr
    cdef Py_ssize_t k_iter = pv.shape[0]
    cdef Py_ssize_t n = pv.shape[1]
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] res = out
    cdef double cos_t = cos(th)
    cdef double sin_t = sin(th)
    cdef double a0 = cos(th / 2.0)
    cdef double b0 = sin(th / 2.0)
    cdef double sign = -1.0 if minus else 1.0
    cdef double complex amp_a, amp_b, half, oracle, next_a
    cdef double w, p
    cdef Py_ssize_t i, j
    with nogil:
        for i in range(n):
            amp_a = a0
            amp_b = b0
            for j in range(k_iter):
                w = sign * wv[j, i]
                half = 0.5 * ((cos(w) - 1.0) + 1j * sin(w))
                p = pv[j, i]
                oracle = cos(p) + 1j * sin(p)
                next_a = (1.0 + half * (1.0 + cos_t)) * amp_a \
                    + oracle * half * sin_t * amp_b
                amp_b = half * sin_t * amp_a \
                    + oracle * (1.0 + half * (1.0 - cos_t)) * amp_b
                amp_a = next_a
            res[i] = amp_b.real * amp_b.real + amp_b.imag * amp_b.imag
    return out
