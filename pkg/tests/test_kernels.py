"""Agreement between the compiled split kernel and the numpy fallback.

Data is integer-valued so every partial sum is exact in float64 and the
two implementations must agree bit for bit, tie-breaking included.
"""

import os

import numpy as np
import pytest

from rulescore._kernels import KERNEL_IMPL
from rulescore._kernels import split_py

compiled = pytest.importorskip("rulescore._kernels._split")


def test_compiled_kernel_is_active_by_default():
    if os.environ.get("RULESCORE_PURE_PYTHON") == "1":
        pytest.skip("fallback forced via environment")
    assert KERNEL_IMPL == "compiled"


def test_regression_agreement(rng):
    for _ in range(300):
        n = int(rng.integers(2, 60))
        x = rng.integers(0, 12, n).astype(float)
        y = rng.integers(-20, 21, n).astype(float)
        min_leaf = int(rng.integers(1, 4))
        a = split_py.best_split_regression(x, y, min_leaf)
        b = compiled.best_split_regression(x, y, min_leaf)
        assert a == b or (np.isnan(a[0]) and np.isnan(b[0]) and a[1] == b[1])


def test_gini_agreement(rng):
    for _ in range(300):
        n = int(rng.integers(2, 60))
        n_classes = int(rng.integers(2, 5))
        x = rng.integers(0, 12, n).astype(float)
        y = rng.integers(0, n_classes, n).astype(np.int_)
        min_leaf = int(rng.integers(1, 4))
        a = split_py.best_split_gini(x, y, n_classes, min_leaf)
        b = compiled.best_split_gini(x, y, n_classes, min_leaf)
        assert a == b or (np.isnan(a[0]) and np.isnan(b[0]) and a[1] == b[1])


def test_no_split_when_constant_feature():
    x = np.ones(10)
    y = np.arange(10.0)
    for impl in (split_py, compiled):
        thr, gain = impl.best_split_regression(x, y, 1)
        assert np.isnan(thr) and gain == float("-inf")


def test_min_leaf_respected():
    x = np.arange(10.0)
    y = np.array([0.0] * 5 + [10.0] * 5)
    for impl in (split_py, compiled):
        thr, _ = impl.best_split_regression(x, y, 5)
        assert thr == 4.5
