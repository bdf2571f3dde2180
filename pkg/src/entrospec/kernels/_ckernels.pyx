# cython: boundscheck=False, wraparound=False, cdivision=True
"""Cython implementations of the Toeplitz hot kernels.

Mirrors `_pykernels` exactly; keep the two in sync.
"""

import numpy as np
cimport numpy as cnp

cnp.import_array()


def levinson_recursion(r_in, Py_ssize_t n, double floor):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] r = np.ascontiguousarray(r_in, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] sigma2 = np.zeros(n)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] k = np.zeros(max(n - 1, 0))
    cdef cnp.ndarray[cnp.float64_t, ndim=1] a = np.zeros(max(n - 1, 0))
    cdef cnp.ndarray[cnp.float64_t, ndim=1] tmp = np.zeros(max(n - 1, 0))
    cdef Py_ssize_t m, i
    cdef double km, acc, lo, hi

    sigma2[0] = r[0]
    if r[0] <= floor:
        return sigma2, k, 0
    for m in range(1, n):
        acc = 0.0
        for i in range(m - 1):
            acc += a[i] * r[m - 1 - i]
        km = (r[m] - acc) / sigma2[m - 1]
        for i in range(m - 1):
            tmp[i] = a[i] - km * a[m - 2 - i]
        for i in range(m - 1):
            a[i] = tmp[i]
        a[m - 1] = km
        k[m - 1] = km
        sigma2[m] = sigma2[m - 1] * (1.0 - km * km)
        if sigma2[m] <= floor:
            return sigma2, k, m
    return sigma2, k, -1


def predictor_from_reflections(k_in, Py_ssize_t m):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] k = np.ascontiguousarray(k_in, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] a = np.zeros(m)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] tmp = np.zeros(m)
    cdef Py_ssize_t j, i
    cdef double kj
    for j in range(1, m + 1):
        kj = k[j - 1]
        for i in range(j - 1):
            tmp[i] = a[i] - kj * a[j - 2 - i]
        for i in range(j - 1):
            a[i] = tmp[i]
        a[j - 1] = kj
    return a


def residuals(k_in, x_in):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] k = np.ascontiguousarray(k_in, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] x = np.ascontiguousarray(x_in, dtype=np.float64)
    cdef Py_ssize_t m = x.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] e = np.empty(m)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] a = np.zeros(max(m - 1, 0))
    cdef cnp.ndarray[cnp.float64_t, ndim=1] tmp = np.zeros(max(m - 1, 0))
    cdef Py_ssize_t j, i
    cdef double kj, acc
    e[0] = x[0]
    for j in range(1, m):
        kj = k[j - 1]
        for i in range(j - 1):
            tmp[i] = a[i] - kj * a[j - 2 - i]
        for i in range(j - 1):
            a[i] = tmp[i]
        a[j - 1] = kj
        acc = 0.0
        for i in range(j):
            acc += a[i] * x[j - 1 - i]
        e[j] = x[j] - acc
    return e


def synthesize(k_in, sigma_in, z_in):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] k = np.ascontiguousarray(k_in, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] sigma = np.ascontiguousarray(sigma_in, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] z = np.ascontiguousarray(z_in, dtype=np.float64)
    cdef Py_ssize_t m = z.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] x = np.empty(m)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] a = np.zeros(max(m - 1, 0))
    cdef cnp.ndarray[cnp.float64_t, ndim=1] tmp = np.zeros(max(m - 1, 0))
    cdef Py_ssize_t j, i
    cdef double kj, acc
    x[0] = sigma[0] * z[0]
    for j in range(1, m):
        kj = k[j - 1]
        for i in range(j - 1):
            tmp[i] = a[i] - kj * a[j - 2 - i]
        for i in range(j - 1):
            a[i] = tmp[i]
        a[j - 1] = kj
        acc = 0.0
        for i in range(j):
            acc += a[i] * x[j - 1 - i]
        x[j] = acc + sigma[j] * z[j]
    return x
