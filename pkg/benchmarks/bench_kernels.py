"""Compare the compiled and pure-numpy blade-product kernels.

Usage: python3 benchmarks/bench_kernels.py [--repeat N] [--suite]

``--suite`` additionally times one calculus suite in a subprocess per
backend (``CLIFF13_PURE=1`` forces the fallback).
"""
import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from cliff13 import _kernels_py, jets
from cliff13.kernels import CENTRAL_SIGN, product

try:
    from cliff13 import _ckernels
except ImportError:  # extension not built
    _ckernels = None

SUITE_SNIPPET = (
    "import time; from cliff13 import suites, kernels; from cliff13.geometry import tetrad_from_config;"
    "t = time.perf_counter(); suites.calculus_suite(tetrad_from_config({'preset': 'perturbed'}), 0, 20);"
    "print(kernels.BACKEND, time.perf_counter() - t)"
)


def bench(impl, order, repeat, rng):
    if order is None:
        A, B = (rng.normal(size=16) + 1j * rng.normal(size=16) for _ in range(2))
    else:
        m = jets.size(order)
        A, B = (rng.normal(size=(16, m)) + 1j * rng.normal(size=(16, m)) for _ in range(2))
    product(A, B, CENTRAL_SIGN, impl)  # warm up, and fail early on a broken backend
    return min(timeit.repeat(lambda: product(A, B, CENTRAL_SIGN, impl), number=repeat, repeat=5)) / repeat


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=2000)
    ap.add_argument("--suite", action="store_true")
    args = ap.parse_args()
    rng = np.random.default_rng(0)
    impls = [("python", _kernels_py)] + ([("cython", _ckernels)] if _ckernels else [])
    print(f"{'case':<14}" + "".join(f"{name:>12}" for name, _ in impls) + ("     speedup" if _ckernels else ""))
    for label, order in [("point", None), ("jet order 1", 1), ("jet order 2", 2), ("jet order 3", 3)]:
        times = [bench(impl, order, args.repeat, rng) for _, impl in impls]
        row = f"{label:<14}" + "".join(f"{t * 1e6:>10.2f}us" for t in times)
        if _ckernels:
            row += f"{times[0] / times[1]:>11.1f}x"
        print(row)
    if args.suite:
        for pure in ("1", "0"):
            env = dict(os.environ, CLIFF13_PURE=pure)
            out = subprocess.run([sys.executable, "-c", SUITE_SNIPPET], env=env, capture_output=True, text=True)
            print("calculus suite, 20 points:", out.stdout.strip() or out.stderr.strip())


if __name__ == "__main__":
    main()
