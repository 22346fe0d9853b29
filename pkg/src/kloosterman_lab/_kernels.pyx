# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the kernels in _kernels_py."""
import numpy as np
cimport numpy as cnp
from libc.math cimport exp, cos, sin

cnp.import_array()


def poly_gauss_eval(X, exps, coeffs, Q, mu, xi):
    cdef const double[:, ::1] Xv = np.ascontiguousarray(X, dtype=np.float64)
    cdef const long[:, ::1] E = np.ascontiguousarray(exps, dtype=np.int64)
    cdef const double complex[::1] C = np.ascontiguousarray(coeffs, dtype=np.complex128)
    cdef const double[:, ::1] Qv = np.ascontiguousarray(Q, dtype=np.float64)
    cdef const double[::1] M = np.ascontiguousarray(mu, dtype=np.float64)
    cdef const double[::1] Z = np.ascontiguousarray(xi, dtype=np.float64)
    cdef Py_ssize_t N = Xv.shape[0], d = Xv.shape[1], m = E.shape[0]
    out_arr = np.empty(N, dtype=np.complex128)
    cdef double complex[::1] out = out_arr
    cdef double[::1] r = np.empty(d, dtype=np.float64)
    cdef Py_ssize_t k, i, j, a, p
    cdef double q, ph, mono, s
    cdef double complex poly
    for k in range(N):
        ph = 0.0
        for i in range(d):
            r[i] = Xv[k, i] - M[i]
            ph += Z[i] * Xv[k, i]
        q = 0.0
        for i in range(d):
            s = 0.0
            for j in range(d):
                s += Qv[i, j] * r[j]
            q += r[i] * s
        poly = 0.0
        for a in range(m):
            mono = 1.0
            for i in range(d):
                for p in range(E[a, i]):
                    mono *= r[i]
            poly += C[a] * mono
        s = exp(-0.5 * q)
        out[k] = poly * (s * cos(ph) + 1j * s * sin(ph))
    return out_arr


def congruence(L, g, R):
    cdef const double complex[:, :, ::1] Lv = np.ascontiguousarray(L, dtype=np.complex128)
    cdef const double complex[:, ::1] G = np.ascontiguousarray(g, dtype=np.complex128)
    cdef const double complex[:, :, ::1] Rv = np.ascontiguousarray(R, dtype=np.complex128)
    cdef Py_ssize_t N = Lv.shape[0], n = G.shape[0]
    out_arr = np.zeros((N, n, n), dtype=np.complex128)
    cdef double complex[:, :, ::1] out = out_arr
    cdef double complex[:, ::1] T = np.empty((n, n), dtype=np.complex128)
    cdef Py_ssize_t k, i, j, l
    cdef double complex s
    for k in range(N):
        for i in range(n):
            for l in range(n):
                s = 0.0
                for j in range(n):
                    s += Lv[k, i, j] * G[j, l]
                T[i, l] = s
        for i in range(n):
            for l in range(n):
                s = 0.0
                for j in range(n):
                    s += T[i, j] * Rv[k, j, l]
                out[k, i, l] = s
    return out_arr
