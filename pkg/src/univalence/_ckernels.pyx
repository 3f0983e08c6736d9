# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the series and evaluation kernels."""
import numpy as np

cimport numpy as cnp

cnp.import_array()


def horner_jet(coeffs, z, int nd):
    c = np.ascontiguousarray(coeffs, dtype=np.complex128)
    zz = np.ascontiguousarray(z, dtype=np.complex128).ravel()
    cdef const double[::1] cr = c.real.copy()
    cdef const double[::1] ci = c.imag.copy()
    cdef const double[::1] zr = zz.real.copy()
    cdef const double[::1] zi = zz.imag.copy()
    cdef Py_ssize_t npts = zz.shape[0], ncoef = c.shape[0]
    outr = np.zeros((nd + 1, npts))
    outi = np.zeros((nd + 1, npts))
    cdef double[:, ::1] ar = outr
    cdef double[:, ::1] ai = outi
    cdef double x, y, tr, ckr, cki
    cdef Py_ssize_t i, k
    cdef int j
    # points in the inner loop: independent updates, no dependency chain
    for k in range(ncoef - 1, -1, -1):
        for j in range(nd, 0, -1):
            for i in range(npts):
                x = zr[i]
                y = zi[i]
                tr = ar[j, i] * x - ai[j, i] * y + ar[j - 1, i]
                ai[j, i] = ar[j, i] * y + ai[j, i] * x + ai[j - 1, i]
                ar[j, i] = tr
        ckr = cr[k]
        cki = ci[k]
        for i in range(npts):
            x = zr[i]
            y = zi[i]
            tr = ar[0, i] * x - ai[0, i] * y + ckr
            ai[0, i] = ar[0, i] * y + ai[0, i] * x + cki
            ar[0, i] = tr
    out = outr + 1j * outi
    cdef double fact = 1.0
    for j in range(2, nd + 1):
        fact *= j
        out[j] *= fact
    return out


def cauchy(a, b, Py_ssize_t n):
    cdef const double complex[::1] aa = np.ascontiguousarray(a, dtype=np.complex128)
    cdef const double complex[::1] bb = np.ascontiguousarray(b, dtype=np.complex128)
    out = np.zeros(n + 1, dtype=np.complex128)
    cdef double complex[::1] o = out
    cdef Py_ssize_t na = min(aa.shape[0], n + 1), nb = min(bb.shape[0], n + 1)
    cdef Py_ssize_t i, j
    cdef double complex ai
    for i in range(na):
        ai = aa[i]
        if ai == 0:
            continue
        for j in range(min(nb, n + 1 - i)):
            o[i + j] += ai * bb[j]
    return out


def series_log(u):
    cdef const double complex[::1] uu = np.ascontiguousarray(u, dtype=np.complex128)
    cdef Py_ssize_t n = uu.shape[0] - 1
    out = np.zeros(n + 1, dtype=np.complex128)
    cdef double complex[::1] L = out
    cdef Py_ssize_t k, j
    cdef double complex s
    for k in range(1, n + 1):
        s = 0
        for j in range(1, k):
            s += j * L[j] * uu[k - j]
        L[k] = uu[k] - s / k
    return out


def series_exp(a):
    cdef const double complex[::1] aa = np.ascontiguousarray(a, dtype=np.complex128)
    cdef Py_ssize_t n = aa.shape[0] - 1
    out = np.zeros(n + 1, dtype=np.complex128)
    cdef double complex[::1] E = out
    cdef Py_ssize_t k, j
    cdef double complex s
    E[0] = 1
    for k in range(1, n + 1):
        s = 0
        for j in range(1, k + 1):
            s += j * aa[j] * E[k - j]
        E[k] = s / k
    return out
