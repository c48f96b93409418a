# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled principal-minor kernels.

Mirrors :mod:`nlmagic._minors`; selected at import by :mod:`nlmagic.kernels`.
"""
from libc.math cimport fabs, pow
from libc.stdlib cimport malloc, free

import numpy as np


cdef double _det_inplace(double* a, int k) noexcept nogil:
    # LU with partial pivoting on a row-major k x k buffer
    cdef int i, j, r, piv
    cdef double det = 1.0, best, tmp, f
    for i in range(k):
        piv = i
        best = fabs(a[i * k + i])
        for r in range(i + 1, k):
            tmp = fabs(a[r * k + i])
            if tmp > best:
                best = tmp
                piv = r
        if best == 0.0:
            return 0.0
        if piv != i:
            for j in range(k):
                tmp = a[i * k + j]
                a[i * k + j] = a[piv * k + j]
                a[piv * k + j] = tmp
            det = -det
        det *= a[i * k + i]
        for r in range(i + 1, k):
            f = a[r * k + i] / a[i * k + i]
            if f != 0.0:
                for j in range(i + 1, k):
                    a[r * k + j] -= f * a[i * k + j]
    return det


def minor_power_sum(double[:, ::1] gamma, double alpha):
    """Sum of ``max(det gamma|x, 0) ** alpha`` over all even supports ``x``.

    Supports are visited in bitmask order and accumulated with Kahan summation.
    """
    cdef int n = gamma.shape[0]
    if n > 40:
        raise ValueError("dimension too large for subset enumeration")
    cdef long long mask, total = 1LL << n
    cdef int k, i, j, pc
    cdef int* idx = <int*>malloc(n * sizeof(int))
    cdef double* buf = <double*>malloc(n * n * sizeof(double))
    cdef double s = 0.0, c = 0.0, y, t, d
    if idx == NULL or buf == NULL:
        free(idx)
        free(buf)
        raise MemoryError()
    with nogil:
        for mask in range(total):
            pc = 0
            for i in range(n):
                if (mask >> i) & 1:
                    idx[pc] = i
                    pc += 1
            if pc & 1:
                continue
            if pc == 0:
                d = 1.0
            else:
                for i in range(pc):
                    for j in range(pc):
                        buf[i * pc + j] = gamma[idx[i], idx[j]]
                d = _det_inplace(buf, pc)
            if d <= 0.0:
                continue
            y = pow(d, alpha) - c
            t = s + y
            c = (t - s) - y
            s = t
    free(idx)
    free(buf)
    return s


def minor_dets(double[:, ::1] gamma):
    """Determinants of every principal minor, indexed by bitmask (odd supports are 0)."""
    cdef int n = gamma.shape[0]
    if n > 26:
        raise ValueError("dimension too large to tabulate all minors")
    cdef long long mask, total = 1LL << n
    cdef int i, j, pc
    out_arr = np.zeros(total, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef int* idx = <int*>malloc(n * sizeof(int))
    cdef double* buf = <double*>malloc(n * n * sizeof(double))
    if idx == NULL or buf == NULL:
        free(idx)
        free(buf)
        raise MemoryError()
    with nogil:
        for mask in range(total):
            pc = 0
            for i in range(n):
                if (mask >> i) & 1:
                    idx[pc] = i
                    pc += 1
            if pc & 1:
                continue
            if pc == 0:
                out[mask] = 1.0
                continue
            for i in range(pc):
                for j in range(pc):
                    buf[i * pc + j] = gamma[idx[i], idx[j]]
            out[mask] = _det_inplace(buf, pc)
    free(idx)
    free(buf)
    return out_arr
