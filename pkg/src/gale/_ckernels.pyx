# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled superposition kernels.

Both loops release the GIL so batch queries can run on a thread pool.
Summation order is fixed (frequency-major, then angle) which keeps results
identical no matter how queries are scheduled.
"""

import numpy as np
cimport numpy as cnp
from libc.math cimport cos

cnp.import_array()


def field_sum(const double[:, ::1] amp, const double[::1] k,
              const double[::1] cos_t, const double[::1] sin_t,
              const double[::1] omega, const double[:, ::1] phase,
              const double[::1] xw, const double[::1] yw, double t):
    cdef Py_ssize_t n = amp.shape[0], m = amp.shape[1], npts = xw.shape[0]
    cdef Py_ssize_t p, i, j
    cdef double acc, kx, ky, wt
    out = np.empty(npts, dtype=np.float64)
    cdef double[::1] res = out
    with nogil:
        for p in range(npts):
            acc = 0.0
            for i in range(n):
                kx = k[i] * xw[p]
                ky = k[i] * yw[p]
                wt = omega[i] * t
                for j in range(m):
                    acc = acc + amp[i, j] * cos(kx * cos_t[j] + ky * sin_t[j] - wt + phase[i, j])
            res[p] = acc
    return out


def series_sum(const double[::1] amp, const double[::1] omega,
               const double[::1] phase, const double[::1] t):
    cdef Py_ssize_t n = amp.shape[0], nt = t.shape[0]
    cdef Py_ssize_t q, i
    cdef double acc, tq
    out = np.empty(nt, dtype=np.float64)
    cdef double[::1] res = out
    with nogil:
        for q in range(nt):
            acc = 0.0
            tq = t[q]
            for i in range(n):
                acc = acc + amp[i] * cos(omega[i] * tq + phase[i])
            res[q] = acc
    return out
