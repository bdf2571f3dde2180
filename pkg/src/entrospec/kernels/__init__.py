"""Backend selection for the Toeplitz hot kernels.

The compiled Cython module is preferred; the pure-numpy fallback is used
when the extension was not built or when ENTROSPEC_PURE is set (useful
for the backend-parity tests and the benchmark).
"""

import os

from . import _pykernels

if os.environ.get("ENTROSPEC_PURE"):
    _impl = _pykernels
    BACKEND = "python"
else:
    try:
        from . import _ckernels as _impl

        BACKEND = "c"
    except ImportError:
        _impl = _pykernels
        BACKEND = "python"

levinson_recursion = _impl.levinson_recursion
predictor_from_reflections = _impl.predictor_from_reflections
residuals = _impl.residuals
synthesize = _impl.synthesize

__all__ = [
    "BACKEND",
    "levinson_recursion",
    "predictor_from_reflections",
    "residuals",
    "synthesize",
]
