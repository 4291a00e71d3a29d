# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled blade-product kernels; same contract as ``_kernels_py``."""
import numpy as np
cimport numpy as cnp

cnp.import_array()


def blade_product(const double complex[::1] A, const double complex[::1] B,
                  const signed char[:, ::1] sign):
    cdef double complex[::1] out = np.zeros(16, dtype=np.complex128)
    cdef int a, b
    cdef signed char s
    cdef double complex av
    for a in range(16):
        av = A[a]
        if av == 0:
            continue
        for b in range(16):
            s = sign[a, b]
            if s == 0 or B[b] == 0:
                continue
            out[a ^ b] += s * av * B[b]
    return np.asarray(out)


def blade_product_jet(const double complex[:, ::1] A, const double complex[:, ::1] B,
                      const signed char[:, ::1] sign,
                      const long[::1] ci, const long[::1] cj, const long[::1] ck, conv):
    cdef Py_ssize_t m = A.shape[1]
    cdef Py_ssize_t npairs = ci.shape[0]
    cdef double complex[:, ::1] out = np.zeros((16, m), dtype=np.complex128)
    cdef unsigned char[16] nza
    cdef unsigned char[16] nzb
    cdef int a, b, c
    cdef Py_ssize_t p, i
    cdef signed char s
    for a in range(16):
        nza[a] = 0
        nzb[a] = 0
        for i in range(m):
            if A[a, i] != 0:
                nza[a] = 1
            if B[a, i] != 0:
                nzb[a] = 1
    for a in range(16):
        if not nza[a]:
            continue
        for b in range(16):
            s = sign[a, b]
            if s == 0 or not nzb[b]:
                continue
            c = a ^ b
            for p in range(npairs):
                out[c, ck[p]] += s * A[a, ci[p]] * B[b, cj[p]]
    return np.asarray(out)
