import numpy as np
import pytest

from rulescore import (
    Condition,
    Dataset,
    DecisionTree,
    Interval,
    Leaf,
    MemberOf,
    Rule,
    RuleSet,
    Split,
    TaskKind,
    canonicalize,
)

NEG_INF = float("-inf")
POS_INF = float("inf")


def make_regression_dataset(X, y, name="test"):
    X = np.asarray(X, dtype=float)
    return Dataset(
        name=name,
        feature_names=tuple(f"x{j}" for j in range(X.shape[1])),
        kinds=("continuous",) * X.shape[1],
        columns=tuple(X[:, j].copy() for j in range(X.shape[1])),
        target_name="y",
        y=np.asarray(y, dtype=float),
        task=TaskKind.REGRESSION,
    )


def make_classification_dataset(X, y, name="test"):
    X = np.asarray(X, dtype=float)
    return Dataset(
        name=name,
        feature_names=tuple(f"x{j}" for j in range(X.shape[1])),
        kinds=("continuous",) * X.shape[1],
        columns=tuple(X[:, j].copy() for j in range(X.shape[1])),
        target_name="y",
        y=np.array([str(v) for v in y], dtype=object),
        task=TaskKind.CLASSIFICATION,
    )


def random_tree(rng, d=3, max_depth=4, value_counter=None):
    """Random binary tree with numeric splits on features 0..d-1."""
    if value_counter is None:
        value_counter = iter(range(10_000))

    def build(depth, lo, hi):
        # lo/hi bound the reachable region per feature so splits stay sensible
        if depth >= max_depth or rng.random() < 0.3:
            return Leaf(float(next(value_counter)))
        f = int(rng.integers(0, d))
        if hi[f] - lo[f] < 1e-6:
            return Leaf(float(next(value_counter)))
        t = float(rng.uniform(lo[f], hi[f]))
        lo_l, hi_l = lo.copy(), hi.copy()
        lo_r, hi_r = lo.copy(), hi.copy()
        hi_l[f] = t
        lo_r[f] = t
        return Split(f, build(depth + 1, lo_l, hi_l), build(depth + 1, lo_r, hi_r), threshold=t)

    node = build(0, [0.0] * d, [1.0] * d)
    if isinstance(node, Leaf):
        node = Split(0, Leaf(0.0), Leaf(1.0), threshold=0.5)
    return DecisionTree(node)


def random_discretized_rule(rng, n_features=5, q=10):
    k = int(rng.integers(1, n_features + 1))
    feats = sorted(rng.choice(n_features, size=k, replace=False).tolist())
    conds = []
    for f in feats:
        lo = int(rng.integers(1, q + 1))
        hi = int(rng.integers(lo, q + 1))
        conds.append((f, "bin", lo, hi))
    return tuple(conds)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
