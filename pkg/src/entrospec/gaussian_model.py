"""Stationary Gaussian process models: exact block densities, block
entropies and the spectral entropy-rate formula
Se = (1/2)log(2*pi*e) + (1/2) int log f dlambda  (in nats, -inf allowed).
"""

from __future__ import annotations

import math
import threading

import numpy as np

from . import spectral, toeplitz
from .errors import ZeroSymbol
from .spectral import NEG_INF, SpectralDensity

LOG_2PI = math.log(2.0 * math.pi)
HALF_LOG_2PI_E = 0.5 * (LOG_2PI + 1.0)


class GaussianProcessModel:
    """Ties a spectral density to its Toeplitz machinery.

    Covariances and the Levinson factorization are cached and grown by
    doubling; models are immutable from the caller's point of view and
    safe to query concurrently.
    """

    def __init__(self, density: SpectralDensity, initial_order: int = 64):
        self.density = density
        self._lock = threading.RLock()
        self._acov = None
        self._fact = None
        self._szego = None
        if isinstance(density, spectral.FourierTable):
            initial_order = min(initial_order, density.table.max_lag + 1)
        self._ensure(max(1, initial_order))

    # -- caches ------------------------------------------------------------

    def _ensure(self, n: int) -> None:
        with self._lock:
            if self._fact is not None and self._fact.order >= n:
                return
            target = 1
            while target < n:
                target *= 2
            if isinstance(self.density, spectral.FourierTable):
                target = max(n, min(target, self.density.table.max_lag + 1))
            if self._acov is None or self._acov.max_lag < target - 1:
                self._acov = self.density.autocovariance(target - 1)
            self._fact = toeplitz.levinson(self._acov, target)

    def factorization(self, n: int) -> toeplitz.LevinsonFactorization:
        self._ensure(n)
        return self._fact

    @property
    def r0(self) -> float:
        return self._acov[0]

    def autocovariance(self, max_lag: int):
        self._ensure(max_lag + 1)
        return spectral.AutocovarianceSequence(
            self._acov.values[: max_lag + 1], origin=self._acov.origin
        )

    def szego_integral(self) -> float:
        with self._lock:
            if self._szego is None:
                self._szego = self.density.szego_integral()
            return self._szego

    def describe(self) -> str:
        return self.density.describe()

    def __repr__(self):
        return f"GaussianProcessModel({self.describe()})"

    # -- exact quantities --------------------------------------------------

    def log_det(self, n: int) -> float:
        return self.factorization(n).log_det(n)

    def log_block_density(self, x) -> float:
        """log rho_n(x) of the exact n-block Gaussian density."""
        x = np.asarray(x, dtype=np.float64)
        n = len(x)
        fact = self.factorization(n)
        return -0.5 * (n * LOG_2PI + fact.log_det(n) + fact.quadratic_form(x))

    def block_entropy(self, n: int) -> float:
        """H_n = (n/2)(log 2pi + 1) + (1/2) log det R_n."""
        return n * HALF_LOG_2PI_E + 0.5 * self.log_det(n)

    def entropy_rate(self) -> float:
        """Se = (1/2)log(2 pi e) + (1/2) int log f; -inf for degenerate f."""
        s = self.szego_integral()
        if s == NEG_INF:
            return NEG_INF
        return HALF_LOG_2PI_E + 0.5 * s

    def infinite_prediction_error(self) -> float:
        """One-step prediction error variance from the infinite past."""
        s = self.szego_integral()
        return 0.0 if s == NEG_INF else math.exp(s)

    # -- model algebra -----------------------------------------------------

    def filtered_model(self, symbol) -> "GaussianProcessModel":
        """Model of Y_t = sum_k g_k X_{t+k}: density |g|^2 f."""
        symbol = tuple(float(c) for c in symbol)
        if not any(c != 0.0 for c in symbol):
            raise ZeroSymbol("filter symbol is identically zero")
        return GaussianProcessModel(spectral.FilterProduct(symbol, self.density))

    def sum_independent(self, other: "GaussianProcessModel") -> "GaussianProcessModel":
        """Model of the sum of two independent processes: density f1 + f2."""
        return GaussianProcessModel(self.density + other.density)


def entropy_rate(model: GaussianProcessModel) -> float:
    return model.entropy_rate()


def block_entropy(model: GaussianProcessModel, n: int) -> float:
    return model.block_entropy(n)


def log_block_density(model: GaussianProcessModel, x) -> float:
    return model.log_block_density(x)


def infinite_prediction_error(model: GaussianProcessModel) -> float:
    return model.infinite_prediction_error()


def filtered_model(model: GaussianProcessModel, symbol) -> GaussianProcessModel:
    return model.filtered_model(symbol)


def sum_independent(m1: GaussianProcessModel, m2: GaussianProcessModel) -> GaussianProcessModel:
    return m1.sum_independent(m2)
