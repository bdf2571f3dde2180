"""Spectral densities on the unit circle.

All integrals are with respect to the *normalized* Lebesgue measure
(total mass 1), so r(0) = int f dlambda is the process variance and the
Szego integral int log f dlambda exponentiates to the infinite-past
one-step prediction error variance.  Entropies downstream are in nats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    EvaluationUnavailable,
    ModelConfigError,
    QuadratureNotConverged,
    ZeroSymbol,
)

NEG_INF = float("-inf")

_DEFAULT_TOL = 1e-10
_MAX_GRID_LOG2 = 20
_SINGULAR_GRID = 2**18


@dataclass(frozen=True)
class AutocovarianceSequence:
    """Covariances r(0..N) with the symmetry r(-n) = r(n) built in."""

    values: np.ndarray
    origin: str = "closed-form"

    def __post_init__(self):
        object.__setattr__(
            self, "values", np.ascontiguousarray(self.values, dtype=np.float64)
        )

    @property
    def max_lag(self) -> int:
        return len(self.values) - 1

    def __getitem__(self, lag: int) -> float:
        return float(self.values[abs(int(lag))])

    def __len__(self) -> int:
        return len(self.values)


# ---------------------------------------------------------------------------
# quadrature helpers (uniform periodic grids; trapezoid == plain mean)


def _grid(n: int, midpoint: bool = False) -> np.ndarray:
    offset = 0.5 if midpoint else 0.0
    return -math.pi + 2.0 * math.pi * (np.arange(n) + offset) / n


def _fourier_by_fft(values: np.ndarray, max_lag: int, midpoint: bool) -> np.ndarray:
    """Fourier coefficients int e^{int}f dlambda from samples on a uniform grid."""
    n = len(values)
    coeffs = np.fft.rfft(values)[: max_lag + 1] / n
    if midpoint:
        m = np.arange(max_lag + 1)
        coeffs = coeffs * np.exp(-1j * math.pi * m / n)
    # grid starts at -pi, not 0
    m = np.arange(max_lag + 1)
    coeffs = coeffs * np.exp(1j * math.pi * m)
    return coeffs


def fourier_coeffs_quadrature(
    fn, max_lag: int, tol: float = _DEFAULT_TOL, max_log2: int = _MAX_GRID_LOG2
):
    """Doubling-grid quadrature of int e^{int} f dlambda for n = 0..max_lag."""
    k = max(10, (max_lag * 4).bit_length())
    prev = None
    while k <= max_log2:
        n = 2**k
        vals = fn(_grid(n))
        coeffs = np.real(_fourier_by_fft(vals, max_lag, midpoint=False))
        if prev is not None:
            change = float(np.max(np.abs(coeffs - prev)))
            if change < tol:
                return coeffs, n
        prev = coeffs
        k += 1
    raise QuadratureNotConverged("autocovariance", change, tol, 2**max_log2)


def log_integral_quadrature(
    fn, tol: float = _DEFAULT_TOL, max_log2: int = _MAX_GRID_LOG2
) -> float:
    """Doubling midpoint quadrature of int log f dlambda (f assumed a.e. > 0)."""
    k = 10
    prev = None
    change = math.inf
    while k <= max_log2:
        n = 2**k
        vals = np.asarray(fn(_grid(n, midpoint=True)), dtype=np.float64)
        with np.errstate(divide="ignore"):
            cur = float(np.mean(np.log(vals)))
        if not math.isfinite(cur):
            raise QuadratureNotConverged("szego integral", math.inf, tol, n)
        if prev is not None:
            change = abs(cur - prev)
            if change < tol:
                return cur
        prev = cur
        k += 1
    raise QuadratureNotConverged("szego integral", change, tol, 2**max_log2)


def log_fourier_coeffs_quadrature(
    fn, max_n: int, tol: float = _DEFAULT_TOL, max_log2: int = _MAX_GRID_LOG2
) -> np.ndarray:
    """Fourier coefficients L(1..max_n) of log f by doubling midpoint quadrature."""
    k = max(10, (max_n * 4).bit_length())
    prev = None
    change = math.inf
    while k <= max_log2:
        n = 2**k
        vals = np.log(np.asarray(fn(_grid(n, midpoint=True)), dtype=np.float64))
        coeffs = np.real(_fourier_by_fft(vals, max_n, midpoint=True))[1:]
        if prev is not None:
            change = float(np.max(np.abs(coeffs - prev)))
            if change < tol:
                return coeffs
        prev = coeffs
        k += 1
    raise QuadratureNotConverged("log-density Fourier coefficients", change, tol, 2**max_log2)


def _poly_roots(coeffs: np.ndarray):
    """Roots of sum_k c_k z^k, highest-degree trailing zeros stripped."""
    c = np.trim_zeros(np.asarray(coeffs, dtype=np.float64), "b")
    if len(c) == 0:
        raise ZeroSymbol("symbol has no nonzero coefficients")
    return np.roots(c[::-1]), c[-1], len(c) - 1


def log_abs_symbol_integral(coeffs) -> float:
    """int log|sum_k c_k e^{ikt}| dlambda via Jensen's formula."""
    roots, lead, deg = _poly_roots(coeffs)
    if deg == 0:
        return math.log(abs(lead))
    return math.log(abs(lead)) + float(
        np.sum(np.log(np.maximum(np.abs(roots), 1.0)))
    )


def log_abs_symbol_fourier_coeffs(coeffs, max_n: int) -> np.ndarray:
    """Fourier coefficients (of e^{int}, n>=1) of log|sum c_k e^{ikt}|^2.

    Root on/inside the circle contributes -conj(z)^n/n, root outside
    -z^{-n}/n; conjugate pairing makes the sum real.
    """
    roots, _, deg = _poly_roots(coeffs)
    out = np.zeros(max_n, dtype=np.complex128)
    n = np.arange(1, max_n + 1)
    for z in roots:
        if abs(z) <= 1.0:
            out -= np.conj(z) ** n / n
        else:
            out -= (1.0 / z) ** n / n
    return np.real(out)


# ---------------------------------------------------------------------------
# density variants


class SpectralDensity:
    """Base class; subclasses are immutable value objects."""

    def eval(self, t):
        raise NotImplementedError

    def autocovariance(self, max_lag: int) -> AutocovarianceSequence:
        if max_lag < 0:
            raise ModelConfigError("max_lag must be >= 0")
        coeffs, grid = fourier_coeffs_quadrature(self.eval, max_lag)
        return AutocovarianceSequence(coeffs, origin=f"quadrature:{grid}")

    def szego_integral(self) -> float:
        return log_integral_quadrature(self.eval)

    def log_fourier_coeffs(self, max_n: int) -> np.ndarray:
        return log_fourier_coeffs_quadrature(self.eval, max_n)

    def describe(self) -> str:
        raise NotImplementedError

    def to_config(self) -> dict:
        raise NotImplementedError

    def scaled(self, c: float) -> "SpectralDensity":
        if c <= 0:
            raise ModelConfigError("scale factor must be positive")
        return Scaled(self, c)

    def __add__(self, other: "SpectralDensity") -> "SpectralDensity":
        return SumDensity(self, other)

    def __repr__(self):
        return self.describe()


@dataclass(frozen=True, repr=False)
class White(SpectralDensity):
    level: float = 1.0

    def __post_init__(self):
        if self.level <= 0:
            raise ModelConfigError("white level must be positive")

    def eval(self, t):
        return np.full_like(np.asarray(t, dtype=np.float64), self.level)

    def autocovariance(self, max_lag):
        values = np.zeros(max_lag + 1)
        values[0] = self.level
        return AutocovarianceSequence(values)

    def szego_integral(self):
        return math.log(self.level)

    def log_fourier_coeffs(self, max_n):
        return np.zeros(max_n)

    def describe(self):
        return f"white:{self.level:g}"

    def to_config(self):
        return {"kind": "white", "level": self.level}


@dataclass(frozen=True, repr=False)
class PoissonKernel(SpectralDensity):
    """P_r(t) = (1-r^2)/|1-r e^{it}|^2, the Gaussian-Markov (AR(1)) density."""

    r: float

    def __post_init__(self):
        if not abs(self.r) < 1:
            raise ModelConfigError("Poisson kernel needs |r| < 1")

    def eval(self, t):
        t = np.asarray(t, dtype=np.float64)
        r = self.r
        return (1.0 - r * r) / (1.0 - 2.0 * r * np.cos(t) + r * r)

    def autocovariance(self, max_lag):
        return AutocovarianceSequence(self.r ** np.arange(max_lag + 1))

    def szego_integral(self):
        return math.log1p(-self.r * self.r)

    def log_fourier_coeffs(self, max_n):
        n = np.arange(1, max_n + 1)
        return self.r**n / n

    def describe(self):
        return f"poisson:{self.r:g}"

    def to_config(self):
        return {"kind": "poisson", "r": self.r}


@dataclass(frozen=True, repr=False)
class MovingAverage(SpectralDensity):
    """f(t) = |sum_k a_k e^{ikt}|^2."""

    coeffs: tuple

    def __init__(self, coeffs):
        object.__setattr__(self, "coeffs", tuple(float(c) for c in coeffs))
        if not any(c != 0.0 for c in self.coeffs):
            raise ModelConfigError("MA coefficients are all zero")

    def _symbol(self, t):
        t = np.asarray(t, dtype=np.float64)
        acc = np.zeros_like(t, dtype=np.complex128)
        for k, a in enumerate(self.coeffs):
            acc += a * np.exp(1j * k * t)
        return acc

    def eval(self, t):
        return np.abs(self._symbol(t)) ** 2

    def autocovariance(self, max_lag):
        a = np.asarray(self.coeffs)
        q = len(a) - 1
        values = np.zeros(max_lag + 1)
        for n in range(min(q, max_lag) + 1):
            values[n] = float(np.dot(a[: q + 1 - n], a[n:]))
        return AutocovarianceSequence(values)

    def szego_integral(self):
        return 2.0 * log_abs_symbol_integral(self.coeffs)

    def log_fourier_coeffs(self, max_n):
        return log_abs_symbol_fourier_coeffs(self.coeffs, max_n)

    def describe(self):
        return "ma:" + ",".join(f"{c:g}" for c in self.coeffs)

    def to_config(self):
        return {"kind": "ma", "coeffs": list(self.coeffs)}


@dataclass(frozen=True, repr=False)
class AutoRegressive(SpectralDensity):
    """f(t) = s^2 / |1 - sum_k c_k e^{ikt}|^2 with a stable coefficient set."""

    coeffs: tuple
    innovation_variance: float

    def __init__(self, coeffs, innovation_variance):
        object.__setattr__(self, "coeffs", tuple(float(c) for c in coeffs))
        object.__setattr__(self, "innovation_variance", float(innovation_variance))
        if self.innovation_variance <= 0:
            raise ModelConfigError("innovation variance must be positive")
        roots, _, deg = _poly_roots(self._char_poly())
        if deg > 0 and np.min(np.abs(roots)) <= 1.0 + 1e-9:
            raise ModelConfigError("AR coefficients are not stable (pole on/outside the disc)")

    def _char_poly(self):
        return np.concatenate(([1.0], -np.asarray(self.coeffs)))

    def eval(self, t):
        t = np.asarray(t, dtype=np.float64)
        acc = np.ones_like(t, dtype=np.complex128)
        for k, c in enumerate(self.coeffs, start=1):
            acc -= c * np.exp(1j * k * t)
        return self.innovation_variance / np.abs(acc) ** 2

    def autocovariance(self, max_lag):
        c = np.asarray(self.coeffs)
        p = len(c)
        # Yule-Walker: r(j) = sum_k c_k r(|j-k|) + s^2 delta_{j0}, j = 0..p
        A = np.eye(p + 1)
        for j in range(p + 1):
            for kk in range(1, p + 1):
                A[j, abs(j - kk)] -= c[kk - 1]
        rhs = np.zeros(p + 1)
        rhs[0] = self.innovation_variance
        head = np.linalg.solve(A, rhs)
        values = np.zeros(max_lag + 1)
        values[: min(p, max_lag) + 1] = head[: min(p, max_lag) + 1]
        for n in range(p + 1, max_lag + 1):
            values[n] = float(np.dot(c, values[n - p : n][::-1]))
        return AutocovarianceSequence(values)

    def szego_integral(self):
        # int log|1 - sum c_k e^{ikt}|^2 dlambda = 0 for a stable polynomial
        return math.log(self.innovation_variance)

    def describe(self):
        cs = ",".join(f"{c:g}" for c in self.coeffs)
        return f"ar:{cs}:{self.innovation_variance:g}"

    def to_config(self):
        return {
            "kind": "ar",
            "coeffs": list(self.coeffs),
            "innovation_variance": self.innovation_variance,
        }


@dataclass(frozen=True, repr=False)
class PowerSingular(SpectralDensity):
    """f(t) = scale * |1 - e^{it}|^{2 alpha}: Szego-integrable but
    strong-Szego divergent (the log-coefficients are -alpha/n)."""

    alpha: float
    scale: float = 1.0

    def __post_init__(self):
        if not 0.0 < self.alpha < 0.5:
            raise ModelConfigError("power-singular exponent must be in (0, 1/2)")
        if self.scale <= 0:
            raise ModelConfigError("scale must be positive")

    def eval(self, t):
        t = np.asarray(t, dtype=np.float64)
        return self.scale * (2.0 - 2.0 * np.cos(t)) ** self.alpha

    def autocovariance(self, max_lag):
        # merely-integrable integrand: fixed large budget, tolerance reported
        vals = self.eval(_grid(_SINGULAR_GRID))
        coeffs = np.real(_fourier_by_fft(vals, max_lag, midpoint=False))
        return AutocovarianceSequence(coeffs, origin=f"quadrature:{_SINGULAR_GRID}")

    def szego_integral(self):
        # int log|1 - e^{it}| dlambda = 0, so only the scale survives
        return math.log(self.scale)

    def log_fourier_coeffs(self, max_n):
        return -self.alpha / np.arange(1, max_n + 1)

    def describe(self):
        return f"power_singular:{self.alpha:g},{self.scale:g}"

    def to_config(self):
        return {"kind": "power_singular", "alpha": self.alpha, "scale": self.scale}


@dataclass(frozen=True, repr=False)
class FourierTable(SpectralDensity):
    """Density known only through finitely many covariances."""

    table: AutocovarianceSequence

    def _series(self, t, order=None):
        t = np.asarray(t, dtype=np.float64)
        r = self.table.values
        order = len(r) - 1 if order is None else min(order, len(r) - 1)
        acc = np.full_like(t, r[0])
        for n in range(1, order + 1):
            acc += 2.0 * r[n] * np.cos(n * t)
        return acc

    def _fejer(self, t, order):
        """Cesaro mean of the partial sums; nonnegative for a true density."""
        t = np.asarray(t, dtype=np.float64)
        r = self.table.values
        order = min(order, len(r) - 1)
        acc = np.full_like(t, r[0])
        for n in range(1, order + 1):
            acc += 2.0 * (1.0 - n / (order + 1)) * r[n] * np.cos(n * t)
        return acc

    def eval(self, t):
        vals = self._series(t)
        floor = -1e-12 * self.table[0]
        bad = vals < floor
        if np.any(bad):
            raise EvaluationUnavailable(
                f"truncated series reaches {float(np.min(vals)):.3e} "
                f"(below {floor:.3e}); table too short or not positive definite"
            )
        return np.clip(vals, 0.0, None)

    def autocovariance(self, max_lag):
        if max_lag > self.table.max_lag:
            raise ModelConfigError(
                f"table holds lags through {self.table.max_lag}, requested {max_lag}"
            )
        return AutocovarianceSequence(self.table.values[: max_lag + 1], origin=self.table.origin)

    def szego_integral(self):
        # Fejer evaluation keeps the integrand nonnegative.  On a set where
        # the density vanishes the Fejer mean decays like 1/order, so the
        # truncated log-integral keeps dropping by a fixed amount per order
        # doubling; for a log-integrable density the drops are geometric.
        q = self.table.max_lag
        if q < 8:
            raise EvaluationUnavailable("table too short for a Szego integral")
        grid = _grid(max(4096, 8 * q), midpoint=True)

        def truncated(order):
            vals = np.clip(self._fejer(grid, order), 0.0, None)
            with np.errstate(divide="ignore"):
                return float(np.mean(np.maximum(np.log(vals), -60.0)))

        i4, i2, i1 = truncated(q // 4), truncated(q // 2), truncated(q)
        d1 = i2 - i1
        d2 = i4 - i2
        if abs(d1) < 1e-6 or d1 <= 0.0:
            return i1
        if d2 > 0.0 and d1 <= 0.6 * d2:
            # geometric decay: Richardson-extrapolate the remaining bias
            ratio = d1 / d2
            return i1 - d1 * ratio / (1.0 - ratio)
        return NEG_INF

    def log_fourier_coeffs(self, max_n):
        order = self.table.max_lag
        grid = _grid(max(4096, 8 * order), midpoint=True)
        vals = np.clip(self._fejer(grid, order), 1e-300, None)
        coeffs = _fourier_by_fft(np.log(vals), max_n, midpoint=True)
        return np.real(coeffs)[1:]

    def describe(self):
        return f"fourier_table[{self.table.max_lag}]"

    def to_config(self):
        return {"kind": "fourier_table", "covariances": self.table.values.tolist()}


@dataclass(frozen=True, repr=False)
class Scaled(SpectralDensity):
    base: SpectralDensity
    factor: float

    def __post_init__(self):
        if self.factor <= 0:
            raise ModelConfigError("scale factor must be positive")

    def eval(self, t):
        return self.factor * self.base.eval(t)

    def autocovariance(self, max_lag):
        inner = self.base.autocovariance(max_lag)
        return AutocovarianceSequence(self.factor * inner.values, origin=inner.origin)

    def szego_integral(self):
        inner = self.base.szego_integral()
        return inner if inner == NEG_INF else math.log(self.factor) + inner

    def log_fourier_coeffs(self, max_n):
        return self.base.log_fourier_coeffs(max_n)

    def describe(self):
        return f"scaled({self.factor:g},{self.base.describe()})"

    def to_config(self):
        return {"kind": "scaled", "factor": self.factor, "base": self.base.to_config()}


@dataclass(frozen=True, repr=False)
class SumDensity(SpectralDensity):
    """Density f1 + f2: spectral density of an independent Gaussian sum."""

    left: SpectralDensity
    right: SpectralDensity

    def eval(self, t):
        return self.left.eval(t) + self.right.eval(t)

    def autocovariance(self, max_lag):
        a = self.left.autocovariance(max_lag)
        b = self.right.autocovariance(max_lag)
        origin = a.origin if a.origin == b.origin else f"{a.origin}+{b.origin}"
        return AutocovarianceSequence(a.values + b.values, origin=origin)

    def describe(self):
        return f"sum({self.left.describe()},{self.right.describe()})"

    def to_config(self):
        return {"kind": "sum", "terms": [self.left.to_config(), self.right.to_config()]}


@dataclass(frozen=True, repr=False)
class FilterProduct(SpectralDensity):
    """|g|^2 * f for a trigonometric symbol g(t) = sum_k g_k e^{ikt}."""

    symbol: tuple
    base: SpectralDensity

    def __init__(self, symbol, base):
        sym = tuple(float(c) for c in symbol)
        if not any(c != 0.0 for c in sym):
            raise ZeroSymbol("filter symbol is identically zero")
        object.__setattr__(self, "symbol", sym)
        object.__setattr__(self, "base", base)

    def _gain(self, t):
        t = np.asarray(t, dtype=np.float64)
        acc = np.zeros_like(t, dtype=np.complex128)
        for k, c in enumerate(self.symbol):
            acc += c * np.exp(1j * k * t)
        return np.abs(acc) ** 2

    def eval(self, t):
        return self._gain(t) * self.base.eval(t)

    def autocovariance(self, max_lag):
        g = np.asarray(self.symbol)
        q = len(g) - 1
        inner = self.base.autocovariance(max_lag + q)
        values = np.zeros(max_lag + 1)
        for n in range(max_lag + 1):
            acc = 0.0
            for j in range(q + 1):
                for kk in range(q + 1):
                    acc += g[j] * g[kk] * inner[n + kk - j]
            values[n] = acc
        return AutocovarianceSequence(values, origin=inner.origin)

    def szego_integral(self):
        inner = self.base.szego_integral()
        if inner == NEG_INF:
            return NEG_INF
        return inner + 2.0 * log_abs_symbol_integral(self.symbol)

    def log_fourier_coeffs(self, max_n):
        return self.base.log_fourier_coeffs(max_n) + log_abs_symbol_fourier_coeffs(
            self.symbol, max_n
        )

    def describe(self):
        sym = ",".join(f"{c:g}" for c in self.symbol)
        return f"filter([{sym}],{self.base.describe()})"

    def to_config(self):
        return {"kind": "filter", "symbol": list(self.symbol), "base": self.base.to_config()}


# ---------------------------------------------------------------------------
# module-level operation surface


def eval_density(f: SpectralDensity, t):
    """Pointwise density value(s) w.r.t. normalized Lebesgue measure."""
    return f.eval(t)


def autocovariance(f: SpectralDensity, max_lag: int) -> AutocovarianceSequence:
    return f.autocovariance(max_lag)


def szego_integral(f: SpectralDensity) -> float:
    """int log f dlambda; -inf when f vanishes on a set of positive measure."""
    return f.szego_integral()


def szego_integral_quadrature(f: SpectralDensity, tol: float = _DEFAULT_TOL) -> float:
    """Closed-form-free route, kept separate as an independent cross-check."""
    return log_integral_quadrature(f.eval, tol=tol)


def log_density_fourier_coeffs(f: SpectralDensity, max_n: int) -> np.ndarray:
    return f.log_fourier_coeffs(max_n)
