"""Built-in rule generators: a best-first CART-style tree and a
redundancy-frequency rule selector over a bootstrapped tree ensemble.

Both are deliberately simplified stand-ins whose job is to exercise the
scoring pipeline end to end; they are not tuned reimplementations of any
published algorithm.  Both are deterministic functions of (data, params),
seed included.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ._kernels import best_split_gini, best_split_regression
from .discretize import QuantileGrid, bin_of, fit_quantile_grid
from .errors import ContradictoryRule, EmptyData, MissingFeature, VacuousRule
from .rules import (
    NEG_INF,
    POS_INF,
    Condition,
    DecisionTree,
    Interval,
    Leaf,
    MemberOf,
    Rule,
    RuleSet,
    Split,
    TaskKind,
    canonicalize,
    tree_to_rules,
)
from .scores import baseline_prediction


@dataclass(frozen=True)
class CartParams:
    max_leaf_nodes: int = 20
    min_samples_leaf: int = 1
    seed: int = 0

    def __post_init__(self):
        if self.max_leaf_nodes < 2:
            raise ValueError("max_leaf_nodes must be >= 2")
        if self.min_samples_leaf < 1:
            raise ValueError("min_samples_leaf must be >= 1")


@dataclass(frozen=True)
class SirusLiteParams:
    n_trees: int = 100
    max_depth: int = 3
    p0: float = 0.05
    q: int = 10
    max_rules: int = 10
    seed: int = 0

    def __post_init__(self):
        if self.n_trees < 1:
            raise ValueError("n_trees must be >= 1")
        if self.max_depth < 1:
            raise ValueError("max_depth must be >= 1")
        if not 0 < self.p0 <= 1:
            raise ValueError("p0 must be in (0, 1]")


def _leaf_value(y, task: TaskKind):
    return baseline_prediction(list(y), task)


def _class_codes(y):
    classes = sorted(set(y.tolist()))
    lookup = {c: i for i, c in enumerate(classes)}
    codes = np.array([lookup[v] for v in y.tolist()], dtype=np.int_)
    return classes, codes


def _best_categorical_split(col, target_stats, min_leaf):
    """Singleton-vs-complement scan; returns (category, gain).

    `target_stats` is (y,) for regression or (codes, n_classes) for
    classification; gain uses the same impurity-decrease definition as the
    numeric kernels.
    """
    n = len(col)
    best_gain = float("-inf")
    best_cat = None
    if len(target_stats) == 1:
        (y,) = target_stats
        total = float(np.sum(y))
        base = total * total / n
        for cat in sorted(set(col.tolist())):
            mask = col == cat
            nl = int(mask.sum())
            if nl < min_leaf or n - nl < min_leaf:
                continue
            left = float(np.sum(y[mask]))
            gain = left * left / nl + (total - left) ** 2 / (n - nl) - base
            if gain > best_gain:
                best_gain = gain
                best_cat = cat
    else:
        codes, n_classes = target_stats
        total = np.bincount(codes, minlength=n_classes).astype(float)
        base = float((total * total).sum()) / n
        for cat in sorted(set(col.tolist())):
            mask = col == cat
            nl = int(mask.sum())
            if nl < min_leaf or n - nl < min_leaf:
                continue
            lc = np.bincount(codes[mask], minlength=n_classes).astype(float)
            rc = total - lc
            gain = float((lc * lc).sum()) / nl + float((rc * rc).sum()) / (n - nl) - base
            # strict > keeps the first (lexicographically smallest) category
            if gain > best_gain:
                best_gain = gain
                best_cat = cat
    return best_cat, best_gain


class _GrowingLeaf:
    __slots__ = ("rows", "depth", "value", "split", "order")

    def __init__(self, rows, depth, value, order):
        self.rows = rows
        self.depth = depth
        self.value = value
        self.split = None  # (gain, feature, threshold_or_category)
        self.order = order  # creation index, breaks ties between leaves


def grow_tree(
    columns: Sequence[np.ndarray],
    kinds: Sequence[str],
    y: np.ndarray,
    task: TaskKind,
    max_leaf_nodes: int,
    min_samples_leaf: int = 1,
    max_depth: int | None = None,
) -> DecisionTree:
    """Best-first growth: repeatedly split the leaf whose best split has
    the largest impurity decrease.

    Candidate thresholds are midpoints between consecutive distinct sorted
    values; ties break toward (lower feature index, lower threshold), and
    between leaves toward the earlier-created leaf.
    """
    n = len(y)
    if n == 0:
        raise EmptyData("cannot grow a tree on an empty dataset")

    if task is TaskKind.CLASSIFICATION:
        classes, codes = _class_codes(y)
        n_classes = len(classes)
    else:
        yf = np.asarray(y, dtype=float)

    def best_split_for(rows, depth):
        if max_depth is not None and depth >= max_depth:
            return None
        if len(rows) < 2 * min_samples_leaf:
            return None
        best = None  # (gain, feature, payload)
        for f, col in enumerate(columns):
            sub = col[rows]
            if kinds[f] == "continuous":
                if task is TaskKind.REGRESSION:
                    thr, gain = best_split_regression(sub, yf[rows], min_samples_leaf)
                else:
                    thr, gain = best_split_gini(
                        sub, codes[rows], n_classes, min_samples_leaf
                    )
                payload = thr
            else:
                stats = (yf[rows],) if task is TaskKind.REGRESSION else (
                    codes[rows],
                    n_classes,
                )
                payload, gain = _best_categorical_split(sub, stats, min_samples_leaf)
            if gain > 0 and (best is None or gain > best[0]):
                best = (gain, f, payload)
        return best

    counter = 0
    root = _GrowingLeaf(np.arange(n), 0, _leaf_value(y, task), counter)
    root.split = best_split_for(root.rows, 0)
    leaves = [root]
    children: dict[int, tuple] = {}

    while len(leaves) < max_leaf_nodes:
        candidates = [lf for lf in leaves if lf.split is not None]
        if not candidates:
            break
        best_leaf = candidates[0]
        for lf in candidates[1:]:
            if lf.split[0] > best_leaf.split[0]:
                best_leaf = lf

        gain, f, payload = best_leaf.split
        col = columns[f][best_leaf.rows]
        if kinds[f] == "continuous":
            mask = col <= payload
        else:
            mask = col == payload
        left_rows = best_leaf.rows[mask]
        right_rows = best_leaf.rows[~mask]

        counter += 1
        left = _GrowingLeaf(
            left_rows, best_leaf.depth + 1, _leaf_value(y[left_rows], task), counter
        )
        counter += 1
        right = _GrowingLeaf(
            right_rows, best_leaf.depth + 1, _leaf_value(y[right_rows], task), counter
        )
        left.split = best_split_for(left_rows, left.depth)
        right.split = best_split_for(right_rows, right.depth)
        children[id(best_leaf)] = (f, payload, kinds[f], left, right)
        leaves.remove(best_leaf)
        leaves.extend([left, right])

    def freeze(node: _GrowingLeaf):
        if id(node) not in children:
            return Leaf(node.value)
        f, payload, kind, left, right = children[id(node)]
        if kind == "continuous":
            return Split(f, freeze(left), freeze(right), threshold=float(payload))
        return Split(f, freeze(left), freeze(right), categories=(payload,))

    return DecisionTree(freeze(root))


def fit_cart(data, p: CartParams) -> DecisionTree:
    """Greedy best-first tree capped at p.max_leaf_nodes leaves."""
    if data.n == 0:
        raise EmptyData("fit_cart on an empty dataset")
    return grow_tree(
        data.columns,
        data.kinds,
        data.y,
        data.task,
        max_leaf_nodes=p.max_leaf_nodes,
        min_samples_leaf=p.min_samples_leaf,
    )


def _paths_to_all_nodes(tree: DecisionTree, universe, cuts_back):
    """Condition paths to every non-root node, with binned thresholds
    mapped back to original-scale cut values via `cuts_back`."""
    out = []

    def branch(node: Split):
        f = node.feature
        if node.threshold is not None:
            cut = cuts_back(f, node.threshold)
            return (
                Condition(f, Interval(NEG_INF, cut)),
                Condition(f, Interval(cut, POS_INF)),
            )
        rest = tuple(c for c in universe[f] if c not in node.categories)
        return (
            Condition(f, MemberOf(node.categories)),
            Condition(f, MemberOf(rest)),
        )

    def walk(node, path):
        if isinstance(node, Leaf):
            return
        lc, rc = branch(node)
        for cond, child in ((lc, node.left), (rc, node.right)):
            new_path = path + [cond]
            out.append(tuple(new_path))
            walk(child, new_path)

    walk(tree.root, [])
    return out


def activation_mask(rule: Rule, columns: Sequence[np.ndarray]) -> np.ndarray:
    """Boolean mask of rows activating `rule`, vectorized per condition."""
    n = len(columns[0]) if columns else 0
    mask = np.ones(n, dtype=bool)
    for cond in rule.conditions:
        if cond.feature >= len(columns):
            raise MissingFeature(f"data has no feature {cond.feature}")
        col = columns[cond.feature]
        if isinstance(cond.test, Interval):
            mask &= (col > cond.test.lower) & (col <= cond.test.upper)
        else:
            mask &= np.isin(col, cond.test.categories)
    return mask


def fit_sirus_lite(data, p: SirusLiteParams) -> RuleSet:
    """Frequency-based rule selection over a bootstrapped tree ensemble.

    Continuous features are pre-binned on a q-quantile grid fitted on
    `data`, shallow trees are grown on bootstrap resamples (per-tree seed
    = p.seed + tree index), every node path becomes a candidate rule over
    the grid's cut values, and rules occurring in at least a p0 fraction
    of trees are kept (at most max_rules, by descending frequency).
    """
    if data.n == 0:
        raise EmptyData("fit_sirus_lite on an empty dataset")

    grid = fit_quantile_grid(data, p.q)
    universe = data.category_universe()

    binned = []
    for f in range(data.d):
        if data.kinds[f] == "continuous":
            binned.append(
                np.array([bin_of(grid, f, v) for v in data.columns[f]], dtype=float)
            )
        else:
            binned.append(data.columns[f])

    def cuts_back(f: int, binned_threshold: float) -> float:
        idx = int(np.floor(binned_threshold))  # split between bins idx and idx+1
        return grid.cuts[f][idx - 1]

    counts: Counter = Counter()
    samples: dict = {}
    for t in range(p.n_trees):
        rng = np.random.default_rng(p.seed + t)
        rows = rng.integers(0, data.n, data.n)
        tree = grow_tree(
            [col[rows] for col in binned],
            data.kinds,
            data.y[rows],
            data.task,
            max_leaf_nodes=2**p.max_depth,
            max_depth=p.max_depth,
        )
        seen = set()
        for path in _paths_to_all_nodes(tree, universe, cuts_back):
            try:
                rule = canonicalize(Rule(path, 0.0), universe)
            except (ContradictoryRule, VacuousRule):
                continue
            key = rule.key()
            if key not in seen:
                seen.add(key)
                samples.setdefault(key, rule)
        counts.update(seen)

    default = baseline_prediction(data.y.tolist(), data.task)
    selected = [
        (counts[k] / p.n_trees, k) for k in counts if counts[k] / p.n_trees >= p.p0
    ]
    if not selected:
        return RuleSet((), data.task, default, warnings=("no rule reached p0",))
    selected.sort(key=lambda fk: (-fk[0], fk[1]))
    selected = selected[: p.max_rules]

    rules = []
    for _, key in selected:
        proto = samples[key]
        mask = activation_mask(proto, data.columns)
        if mask.any():
            pred = baseline_prediction(data.y[mask].tolist(), data.task)
        else:
            pred = default
        rules.append(Rule(proto.conditions, pred))
    return RuleSet(tuple(rules), data.task, default)


def predict_ruleset(rs: RuleSet, x: Sequence):
    """Mean of activated rules' predictions (regression) or their majority
    vote with smallest-code tie-break (classification); the default
    prediction when nothing activates."""
    from .rules import rule_activated

    active = [r.prediction for r in rs.rules if rule_activated(r, x)]
    if not active:
        return rs.default_prediction
    if rs.task is TaskKind.REGRESSION:
        return sum(active) / len(active)
    return baseline_prediction(active, TaskKind.CLASSIFICATION)


def predict_ruleset_batch(rs: RuleSet, columns: Sequence[np.ndarray]) -> list:
    """Row-wise predict_ruleset with vectorized activation masks."""
    n = len(columns[0]) if columns else 0
    masks = [activation_mask(r, columns) for r in rs.rules]
    preds = [r.prediction for r in rs.rules]
    if rs.task is TaskKind.REGRESSION and rs.rules:
        stacked = np.array(masks)
        counts = stacked.sum(axis=0)
        sums = np.array(preds) @ stacked
        out = np.where(counts > 0, sums / np.maximum(counts, 1), rs.default_prediction)
        return [float(v) for v in out]
    out = []
    for i in range(n):
        active = [preds[j] for j, m in enumerate(masks) if m[i]]
        if not active:
            out.append(rs.default_prediction)
        elif rs.task is TaskKind.REGRESSION:
            out.append(sum(active) / len(active))
        else:
            out.append(baseline_prediction(active, TaskKind.CLASSIFICATION))
    return out


def cart_rule_set(data, p: CartParams) -> RuleSet:
    """fit_cart followed by leaf-path extraction."""
    tree = fit_cart(data, p)
    return tree_to_rules(tree, data.task, data.category_universe())
