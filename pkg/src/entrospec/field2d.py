"""Separable Z^2 Gaussian fields.

Covariance Cov(x_{s,t}, x_{s',t'}) = r_a(s-s') r_b(t-t'), so the n x n
block covariance is the Kronecker product R_{a,n} (x) R_{b,n} and every
2-D entropy quantity reduces to the two factor factorizations.
"""

from __future__ import annotations

import math
import threading

import numpy as np
import scipy.linalg

from .gaussian_model import HALF_LOG_2PI_E, LOG_2PI, GaussianProcessModel
from .spectral import NEG_INF, SpectralDensity


def toeplitz_matrix(acov, n: int) -> np.ndarray:
    values = np.array([acov[i] for i in range(n)])
    return scipy.linalg.toeplitz(values)


class SeparableFieldModel:
    """Product of a T-direction factor f_a and an S-direction factor f_b."""

    def __init__(self, factor_a: SpectralDensity, factor_b: SpectralDensity):
        self.factor_a = GaussianProcessModel(factor_a)
        self.factor_b = GaussianProcessModel(factor_b)
        self._lock = threading.RLock()
        self._chol = {}

    @property
    def r0(self) -> float:
        return self.factor_a.r0 * self.factor_b.r0

    def describe(self) -> str:
        return f"separable({self.factor_a.describe()},{self.factor_b.describe()})"

    def to_config(self) -> dict:
        return {
            "kind": "separable",
            "factor_a": self.factor_a.density.to_config(),
            "factor_b": self.factor_b.density.to_config(),
        }

    def _chol_pair(self, n: int):
        with self._lock:
            if n not in self._chol:
                ra = toeplitz_matrix(self.factor_a.autocovariance(n - 1), n)
                rb = toeplitz_matrix(self.factor_b.autocovariance(n - 1), n)
                self._chol[n] = (np.linalg.cholesky(ra), np.linalg.cholesky(rb))
            return self._chol[n]

    def cholesky_a(self, n: int) -> np.ndarray:
        return self._chol_pair(n)[0]

    def cholesky_b(self, n: int) -> np.ndarray:
        return self._chol_pair(n)[1]

    def log_det_2d(self, n: int) -> float:
        """log det of the n^2 x n^2 Kronecker block covariance."""
        return n * (self.factor_a.log_det(n) + self.factor_b.log_det(n))

    def block_entropy_2d(self, n: int) -> float:
        """H^(2)_n = (n^2/2)(log 2pi + 1) + (1/2) log det."""
        return n * n * HALF_LOG_2PI_E + 0.5 * self.log_det_2d(n)

    def entropy_rate_2d(self) -> float:
        sa = self.factor_a.szego_integral()
        sb = self.factor_b.szego_integral()
        if sa == NEG_INF or sb == NEG_INF:
            return NEG_INF
        return HALF_LOG_2PI_E + 0.5 * (sa + sb)

    def product_marginal_kl_2d(self, n: int) -> float:
        """KL of the n^2 block law to the product of its marginals."""
        var = self.r0
        return 0.5 * (n * n * math.log(var) - self.log_det_2d(n))

    def kronecker_quadratic_form(self, X: np.ndarray) -> float:
        """vec(X)^T (R_a (x) R_b)^{-1} vec(X) = tr(R_a^{-1} X R_b^{-1} X^T)."""
        n = X.shape[0]
        la, lb = self._chol_pair(n)
        u = scipy.linalg.cho_solve((la, True), X)
        v = scipy.linalg.cho_solve((lb, True), X.T).T
        return float(np.sum(u * v))

    def log_block_density_2d(self, X: np.ndarray) -> float:
        n = X.shape[0]
        return -0.5 * (
            n * n * LOG_2PI + self.log_det_2d(n) + self.kronecker_quadratic_form(X)
        )


def block_entropy_2d(fm: SeparableFieldModel, n: int) -> float:
    return fm.block_entropy_2d(n)


def entropy_rate_2d(fm: SeparableFieldModel) -> float:
    return fm.entropy_rate_2d()


def product_marginal_kl_2d(fm: SeparableFieldModel, n: int) -> float:
    return fm.product_marginal_kl_2d(n)
