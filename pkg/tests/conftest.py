import math

import numpy as np
import pytest
import scipy.linalg

from entrospec import (
    AutoRegressive,
    GaussianProcessModel,
    MovingAverage,
    PoissonKernel,
    PowerSingular,
    White,
)

SQRT125 = math.sqrt(1.25)


def make_zoo():
    """Strictly positive definite models exercised by most identity tests."""
    return {
        "white1": GaussianProcessModel(White(1.0)),
        "white4": GaussianProcessModel(White(4.0)),
        "poisson05": GaussianProcessModel(PoissonKernel(0.5)),
        "poisson_m03": GaussianProcessModel(PoissonKernel(-0.3)),
        "ma1": GaussianProcessModel(MovingAverage([1.0 / SQRT125, 0.5 / SQRT125])),
        "ar2": GaussianProcessModel(AutoRegressive([0.5, -0.2], 1.0)),
    }


@pytest.fixture(scope="session")
def zoo():
    return make_zoo()


@pytest.fixture(scope="session")
def zoo_with_singular(zoo):
    out = dict(zoo)
    out["power"] = GaussianProcessModel(PowerSingular(0.3, 1.0))
    return out


def dense_cov(model, n):
    acov = model.autocovariance(n - 1)
    return scipy.linalg.toeplitz(acov.values[:n])


def dense_log_det(model, n):
    chol = np.linalg.cholesky(dense_cov(model, n))
    return 2.0 * float(np.sum(np.log(np.diag(chol))))


def dense_quadratic_form(model, x):
    x = np.asarray(x, dtype=np.float64)
    return float(x @ np.linalg.solve(dense_cov(model, len(x)), x))
