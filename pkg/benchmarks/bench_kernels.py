"""Timing comparison of the compiled and pure-python Toeplitz kernels.

Usage:
    python3 benchmarks/bench_kernels.py [--orders 256,1024,4096] [--repeat 5]
"""

import argparse
import time

import numpy as np

from entrospec import kernels
from entrospec.kernels import _pykernels

try:
    from entrospec.kernels import _ckernels
except ImportError:
    _ckernels = None


def _time(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench(order, repeat):
    r = 0.5 ** np.arange(order + 1)
    rng = np.random.default_rng(0)
    x = rng.standard_normal(order)
    z = rng.standard_normal(order)

    backends = {"python": _pykernels}
    if _ckernels is not None:
        backends["c"] = _ckernels

    rows = []
    for name, mod in backends.items():
        t_lev = _time(lambda: mod.levinson_recursion(r, order, 1e-300), repeat)
        sigma2, k, _ = mod.levinson_recursion(r, order, 1e-300)
        sigma = np.sqrt(np.asarray(sigma2))
        k = np.asarray(k)
        t_res = _time(lambda: mod.residuals(k, x), repeat)
        t_syn = _time(lambda: mod.synthesize(k, sigma, z), repeat)
        rows.append((name, t_lev, t_res, t_syn))
    return rows


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--orders", default="256,1024,4096")
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    orders = [int(s) for s in args.orders.split(",")]

    print(f"selected backend at import: {kernels.BACKEND}")
    header = f"{'order':>6} {'backend':>8} {'levinson':>12} {'residuals':>12} {'synthesize':>12}"
    print(header)
    print("-" * len(header))
    for order in orders:
        for name, t_lev, t_res, t_syn in bench(order, args.repeat):
            print(
                f"{order:>6} {name:>8} {t_lev * 1e3:>10.2f}ms {t_res * 1e3:>10.2f}ms "
                f"{t_syn * 1e3:>10.2f}ms"
            )


if __name__ == "__main__":
    main()
