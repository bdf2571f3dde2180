"""Entropy rates, Szego theory and SMB experiments for stationary
Gaussian (and coordinatewise-transformed Gaussian) models."""

from .errors import (
    DegenerateProcess,
    DimensionMismatch,
    EntrospecError,
    EvaluationUnavailable,
    ModelConfigError,
    NonMonotone,
    NotPositiveDefinite,
    NumericalError,
    QuadratureNotConverged,
    RateNotFinite,
    ZeroSymbol,
)
from .field2d import SeparableFieldModel
from .gaussian_model import (
    GaussianProcessModel,
    block_entropy,
    entropy_rate,
    filtered_model,
    infinite_prediction_error,
    log_block_density,
    sum_independent,
)
from .spectral import (
    AutocovarianceSequence,
    AutoRegressive,
    FilterProduct,
    FourierTable,
    MovingAverage,
    PoissonKernel,
    PowerSingular,
    Scaled,
    SpectralDensity,
    SumDensity,
    White,
)
from .toeplitz import LevinsonFactorization, levinson

__version__ = "0.1.0"

__all__ = [
    "AutoRegressive",
    "AutocovarianceSequence",
    "DegenerateProcess",
    "DimensionMismatch",
    "EntrospecError",
    "EvaluationUnavailable",
    "FilterProduct",
    "FourierTable",
    "GaussianProcessModel",
    "LevinsonFactorization",
    "ModelConfigError",
    "MovingAverage",
    "NonMonotone",
    "NotPositiveDefinite",
    "NumericalError",
    "PoissonKernel",
    "PowerSingular",
    "QuadratureNotConverged",
    "RateNotFinite",
    "Scaled",
    "SeparableFieldModel",
    "SpectralDensity",
    "SumDensity",
    "White",
    "ZeroSymbol",
    "block_entropy",
    "entropy_rate",
    "filtered_model",
    "infinite_prediction_error",
    "levinson",
    "log_block_density",
    "sum_independent",
]
