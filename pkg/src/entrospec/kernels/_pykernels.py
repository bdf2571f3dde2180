"""Pure-numpy implementations of the Toeplitz hot kernels.

Same contracts as the Cython module `_ckernels`; the package picks one of
the two at import time (see ``entrospec.kernels``).
"""

import numpy as np


def levinson_recursion(r, n, floor):
    """Levinson-Durbin on autocovariances r[0..n-1].

    Returns (sigma2, k, fail_order): innovation variances for orders
    0..n-1, reflection coefficients k_1..k_{n-1}, and the first order at
    which sigma2 dropped to `floor` or below (-1 if none; outputs past a
    failure are undefined).
    """
    r = np.asarray(r, dtype=np.float64)
    sigma2 = np.zeros(n)
    k = np.zeros(max(n - 1, 0))
    a = np.zeros(max(n - 1, 0))
    sigma2[0] = r[0]
    if r[0] <= floor:
        return sigma2, k, 0
    for m in range(1, n):
        km = (r[m] - np.dot(a[: m - 1], r[m - 1 : 0 : -1])) / sigma2[m - 1]
        if m > 1:
            a[: m - 1] -= km * a[m - 2 :: -1]
        a[m - 1] = km
        k[m - 1] = km
        sigma2[m] = sigma2[m - 1] * (1.0 - km * km)
        if sigma2[m] <= floor:
            return sigma2, k, m
    return sigma2, k, -1


def predictor_from_reflections(k, m):
    """Order-m forward predictor a_1..a_m rebuilt from reflection coeffs."""
    a = np.zeros(m)
    for j in range(1, m + 1):
        kj = k[j - 1]
        if j > 1:
            a[: j - 1] -= kj * a[j - 2 :: -1]
        a[j - 1] = kj
    return a


def residuals(k, x):
    """Innovations e_j = x_j - (order-j prediction from x_0..x_{j-1})."""
    x = np.asarray(x, dtype=np.float64)
    m = len(x)
    e = np.empty(m)
    e[0] = x[0]
    a = np.zeros(max(m - 1, 0))
    for j in range(1, m):
        kj = k[j - 1]
        if j > 1:
            a[: j - 1] -= kj * a[j - 2 :: -1]
        a[j - 1] = kj
        e[j] = x[j] - np.dot(a[:j], x[j - 1 :: -1])
    return e


def synthesize(k, sigma, z):
    """Innovations-form sample: x_j = prediction(x_{<j}) + sigma_j z_j."""
    z = np.asarray(z, dtype=np.float64)
    m = len(z)
    x = np.empty(m)
    x[0] = sigma[0] * z[0]
    a = np.zeros(max(m - 1, 0))
    for j in range(1, m):
        kj = k[j - 1]
        if j > 1:
            a[: j - 1] -= kj * a[j - 2 :: -1]
        a[j - 1] = kj
        x[j] = np.dot(a[:j], x[j - 1 :: -1]) + sigma[j] * z[j]
    return x
