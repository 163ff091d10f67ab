"""Split-kernel selection: compiled extension when available, numpy otherwise.

Set RULESCORE_PURE_PYTHON=1 to force the fallback (used by the benchmark
and by tests that compare the two implementations).
"""

import os

if os.environ.get("RULESCORE_PURE_PYTHON") == "1":
    from .split_py import NO_SPLIT, best_split_gini, best_split_regression

    KERNEL_IMPL = "python"
else:
    try:
        from ._split import NO_SPLIT, best_split_gini, best_split_regression

        KERNEL_IMPL = "compiled"
    except ImportError:
        from .split_py import NO_SPLIT, best_split_gini, best_split_regression

        KERNEL_IMPL = "python"

__all__ = ["NO_SPLIT", "best_split_gini", "best_split_regression", "KERNEL_IMPL"]
