"""Pure-numpy best-split search; reference fallback for the compiled kernel.

Both kernels must agree: same candidate thresholds (midpoints between
consecutive distinct sorted values), same gain definition (total impurity
decrease, SSE for regression and size-weighted Gini for classification),
and first-maximum tie-breaking, which picks the lowest threshold.
"""

from __future__ import annotations

import numpy as np

NO_SPLIT = (float("nan"), float("-inf"))


def best_split_regression(x, y, min_leaf: int):
    """Return (threshold, gain) maximizing the SSE decrease, or NO_SPLIT.

    gain = SSE(parent) - SSE(left) - SSE(right), computed via the
    sum-of-squares identity so only prefix sums of y are needed.
    """
    n = len(x)
    if n < 2 * min_leaf:
        return NO_SPLIT
    order = np.argsort(x, kind="stable")
    xs = x[order]
    ys = y[order]
    csum = np.cumsum(ys)
    total = csum[-1]

    sizes = np.arange(1, n)  # left-child sizes
    valid = xs[1:] != xs[:-1]
    valid &= (sizes >= min_leaf) & (n - sizes >= min_leaf)
    if not valid.any():
        return NO_SPLIT

    left = csum[:-1]
    with np.errstate(invalid="ignore"):
        gain = left * left / sizes + (total - left) ** 2 / (n - sizes) - total * total / n
    gain[~valid] = float("-inf")
    j = int(np.argmax(gain))
    return float((xs[j] + xs[j + 1]) / 2.0), float(gain[j])


def best_split_gini(x, y_codes, n_classes: int, min_leaf: int):
    """Return (threshold, gain) maximizing the weighted Gini decrease.

    gain = n*G(parent) - nL*G(left) - nR*G(right)
         = sum_c lc^2/nL + sum_c rc^2/nR - sum_c tc^2/n.
    """
    n = len(x)
    if n < 2 * min_leaf:
        return NO_SPLIT
    order = np.argsort(x, kind="stable")
    xs = x[order]
    ys = y_codes[order]

    onehot = np.zeros((n, n_classes))
    onehot[np.arange(n), ys] = 1.0
    counts = np.cumsum(onehot, axis=0)
    total = counts[-1]

    sizes = np.arange(1, n)
    valid = xs[1:] != xs[:-1]
    valid &= (sizes >= min_leaf) & (n - sizes >= min_leaf)
    if not valid.any():
        return NO_SPLIT

    lc = counts[:-1]
    rc = total[None, :] - lc
    with np.errstate(invalid="ignore"):
        gain = (
            (lc * lc).sum(axis=1) / sizes
            + (rc * rc).sum(axis=1) / (n - sizes)
            - float(total @ total) / n
        )
    gain[~valid] = float("-inf")
    j = int(np.argmax(gain))
    return float((xs[j] + xs[j + 1]) / 2.0), float(gain[j])
