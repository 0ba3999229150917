# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled elementwise kernels: one-bit quantization and clipped arcsin.

Semantics must match onebit_mimo._kernels_py exactly.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport asin, fabs, sqrt

cnp.import_array()


def quantize_kernel(cnp.ndarray[cnp.complex128_t, ndim=2] y):
    cdef Py_ssize_t n = y.shape[0] * y.shape[1]
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] out = np.empty_like(y)
    cdef double complex* src = <double complex*> y.data
    cdef double complex* dst = <double complex*> out.data
    cdef double s = 1.0 / sqrt(2.0)
    cdef double re, im
    cdef Py_ssize_t i
    for i in range(n):
        re = s if src[i].real >= 0.0 else -s
        im = s if src[i].imag >= 0.0 else -s
        dst[i] = re + 1j * im
    return out


def asin_clipped_kernel(cnp.ndarray[cnp.complex128_t, ndim=2] m, double tol):
    # single pass: track the worst magnitude while transforming; on a real
    # overshoot the caller raises and the output array is discarded
    cdef Py_ssize_t n = m.shape[0] * m.shape[1]
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] out = np.empty_like(m)
    cdef double complex* src = <double complex*> m.data
    cdef double complex* dst = <double complex*> out.data
    cdef double worst = 1.0
    cdef double re, im, a
    cdef Py_ssize_t i
    for i in range(n):
        re = src[i].real
        im = src[i].imag
        a = fabs(re)
        if a > worst:
            worst = a
        a = fabs(im)
        if a > worst:
            worst = a
        if re > 1.0:
            re = 1.0
        elif re < -1.0:
            re = -1.0
        if im > 1.0:
            im = 1.0
        elif im < -1.0:
            im = -1.0
        dst[i] = asin(re) + 1j * asin(im)
    return out, worst - 1.0
