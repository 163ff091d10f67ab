#!/usr/bin/env python3
"""Benchmark: compiled split kernel vs numpy fallback.

Times the raw best-split search and a full CART fit with each
implementation.  Run from the repository root:

    python3 benchmarks/bench_split.py [--sizes 500,2000,10000]
"""

import argparse
import time

import numpy as np

from rulescore._kernels import split_py

try:
    from rulescore._kernels import _split as compiled
except ImportError:
    compiled = None


def time_call(fn, *args, repeats=20):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def bench_kernel(n, rng):
    x = rng.uniform(0, 100, n)
    y = rng.normal(size=n)
    codes = rng.integers(0, 4, n).astype(np.int_)

    rows = []
    for name, mod in (("python", split_py), ("compiled", compiled)):
        if mod is None:
            continue
        t_reg = time_call(mod.best_split_regression, x, y, 1)
        t_gini = time_call(mod.best_split_gini, x, codes, 4, 1)
        rows.append((name, t_reg, t_gini))
    return rows


def bench_cart(n, rng):
    import os
    import subprocess
    import sys
    import textwrap

    script = textwrap.dedent(
        f"""
        import time, numpy as np
        from rulescore import CartParams, fit_cart, Dataset, TaskKind
        rng = np.random.default_rng(0)
        X = rng.uniform(0, 100, ({n}, 10))
        y = rng.normal(size={n})
        data = Dataset("bench", tuple(f"x{{j}}" for j in range(10)),
                       ("continuous",)*10, tuple(X[:, j] for j in range(10)),
                       "y", y, TaskKind.REGRESSION)
        t0 = time.perf_counter()
        fit_cart(data, CartParams(max_leaf_nodes=20))
        print(time.perf_counter() - t0)
        """
    )
    out = []
    for name, env_val in (("python", "1"), ("compiled", "0")):
        if name == "compiled" and compiled is None:
            continue
        env = dict(os.environ, RULESCORE_PURE_PYTHON=env_val)
        t = float(subprocess.check_output([sys.executable, "-c", script], env=env))
        out.append((name, t))
    return out


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--sizes", default="500,2000,10000")
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]
    rng = np.random.default_rng(0)

    if compiled is None:
        print("note: compiled kernel unavailable, showing fallback only\n")

    print(f"{'n':>8}  {'impl':<9} {'regression':>12} {'gini':>12}")
    for n in sizes:
        for name, t_reg, t_gini in bench_kernel(n, rng):
            print(f"{n:>8}  {name:<9} {t_reg * 1e3:>10.3f}ms {t_gini * 1e3:>10.3f}ms")

    print(f"\nfull CART fit (20 leaves, 10 features):")
    print(f"{'n':>8}  {'impl':<9} {'fit':>12}")
    for n in sizes:
        for name, t in bench_cart(n, rng):
            print(f"{n:>8}  {name:<9} {t * 1e3:>10.1f}ms")


if __name__ == "__main__":
    main()
