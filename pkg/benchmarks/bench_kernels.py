"""Compare the compiled and numpy kernel backends.

Times the three kernel sums on their own, the full kernel estimator, and
(optionally) the whole simulation grid.  Run with ``python3
benchmarks/bench_kernels.py [--full]``.
"""
import argparse
import importlib
import os
import subprocess
import sys
import time
import timeit

import numpy as np

from wigf.estimate import _kernels_py
from wigf.estimate.kde import KdeSpec, np_residual_gwigf


def _best(fn, number):
    return min(timeit.repeat(fn, number=number, repeat=5)) / number


def kernel_table(n=100, m=21):
    rng = np.random.default_rng(0)
    data = np.sort(rng.exponential(2.0, n))
    x = np.linspace(0.1, 12.0, m)
    backends = {"python": _kernels_py}
    try:
        backends["cython"] = importlib.import_module("wigf.estimate._kernels")
    except ImportError:
        print("compiled kernels not built; timing the python backend only")
    spec = KdeSpec(data)
    print(f"kernel sums, n={n}, {m} evaluation points (microseconds per call)")
    print(f"{'backend':8s} {'gauss_kde':>10s} {'gauss_tail':>11s} {'integrand':>10s}")
    for name, k in backends.items():
        t1 = _best(lambda: k.gauss_kde(x, data, 0.4), 2000)
        t2 = _best(lambda: k.gauss_tail(0.5, data, 0.4), 2000)
        t3 = _best(lambda: k.gauss_residual_integrand(x, data, 0.4, 1.7, -0.3), 2000)
        print(f"{name:8s} {t1 * 1e6:10.2f} {t2 * 1e6:11.2f} {t3 * 1e6:10.2f}")
    # the estimator goes through the backend picked at import time
    te = _best(lambda: np_residual_gwigf(spec, 1.7, 0.5, "empirical"), 200)
    from wigf.estimate import BACKEND
    print(f"full estimator ({BACKEND} backend): {te * 1e3:.3f} ms per estimate; "
          f"quadrature alone for the 36,000 estimates of the simulation grid: "
          f"about {36_000 * te:.1f} s", flush=True)


def full_grid():
    code = ("import time; from wigf.estimate import experiment as ex, BACKEND;"
            "t=time.perf_counter();"
            "ex.bootstrap_bias_mse(ex.simulation_grid(), ex.exponential_truth(0.5));"
            "print(f'{BACKEND:8s} full grid, 1 worker: {time.perf_counter()-t:.1f} s')")
    for pure in ("0", "1"):
        env = dict(os.environ, WIGF_PURE_PYTHON=pure)
        subprocess.run([sys.executable, "-c", code], env=env, check=True)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--full", action="store_true", help="also time the full simulation grid")
    args = ap.parse_args()
    kernel_table()
    if args.full:
        full_grid()


if __name__ == "__main__":
    main()
