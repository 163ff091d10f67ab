# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled best-split search; semantics mirror split_py exactly."""

import numpy as np

cdef extern from "math.h":
    double NAN
    double INFINITY

NO_SPLIT = (float("nan"), float("-inf"))


def best_split_regression(x, y, int min_leaf):
    cdef Py_ssize_t n = len(x)
    if n < 2 * min_leaf:
        return NO_SPLIT
    order = np.argsort(x, kind="stable")
    cdef double[::1] xs = np.ascontiguousarray(x[order], dtype=np.float64)
    cdef double[::1] ys = np.ascontiguousarray(y[order], dtype=np.float64)

    cdef double total = 0.0
    cdef Py_ssize_t i
    for i in range(n):
        total += ys[i]

    cdef double base = total * total / n
    cdef double left = 0.0
    cdef double best_gain = -INFINITY
    cdef double gain
    cdef Py_ssize_t best_j = -1
    cdef Py_ssize_t nl
    for i in range(n - 1):
        left += ys[i]
        nl = i + 1
        if xs[i + 1] == xs[i]:
            continue
        if nl < min_leaf or n - nl < min_leaf:
            continue
        gain = left * left / nl + (total - left) * (total - left) / (n - nl) - base
        if gain > best_gain:
            best_gain = gain
            best_j = i
    if best_j < 0:
        return NO_SPLIT
    return (xs[best_j] + xs[best_j + 1]) / 2.0, best_gain


def best_split_gini(x, y_codes, int n_classes, int min_leaf):
    cdef Py_ssize_t n = len(x)
    if n < 2 * min_leaf:
        return NO_SPLIT
    order = np.argsort(x, kind="stable")
    cdef double[::1] xs = np.ascontiguousarray(x[order], dtype=np.float64)
    cdef long[::1] ys = np.ascontiguousarray(y_codes[order], dtype=np.int_)

    cdef double[::1] left = np.zeros(n_classes)
    cdef double[::1] total = np.zeros(n_classes)
    cdef Py_ssize_t i, c
    for i in range(n):
        total[ys[i]] += 1.0

    cdef double base = 0.0
    for c in range(n_classes):
        base += total[c] * total[c]
    base /= n

    cdef double best_gain = -INFINITY
    cdef double gain, lsq, rsq, rc
    cdef Py_ssize_t best_j = -1
    cdef Py_ssize_t nl
    for i in range(n - 1):
        left[ys[i]] += 1.0
        nl = i + 1
        if xs[i + 1] == xs[i]:
            continue
        if nl < min_leaf or n - nl < min_leaf:
            continue
        lsq = 0.0
        rsq = 0.0
        for c in range(n_classes):
            lsq += left[c] * left[c]
            rc = total[c] - left[c]
            rsq += rc * rc
        gain = lsq / nl + rsq / (n - nl) - base
        if gain > best_gain:
            best_gain = gain
            best_j = i
    if best_j < 0:
        return NO_SPLIT
    return (xs[best_j] + xs[best_j + 1]) / 2.0, best_gain
