"""The three component scores and their weighted aggregate.

Predictivity compares model risk against a naive baseline; q-stability is
the Dice-Sorensen overlap of discretized rule sets fitted on two
independent samples; simplicity is the relative size of a model's rule set
within a group of algorithms.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Sequence

from .discretize import DiscretizedRule, discretize_ruleset, fit_quantile_grid
from .errors import (
    AllEmpty,
    DegenerateBaseline,
    EmptyInput,
    FewerThanTwoAlgorithms,
    InvalidWeights,
    LengthMismatch,
)
from .rules import RuleSet, TaskKind


class Contrast(Enum):
    QUADRATIC = "quadratic"
    ZERO_ONE = "zero_one"

    @staticmethod
    def for_task(task: TaskKind) -> "Contrast":
        return Contrast.QUADRATIC if task is TaskKind.REGRESSION else Contrast.ZERO_ONE


@dataclass(frozen=True)
class Weights:
    """Convex weights for predictivity, stability, simplicity."""

    alpha1: float
    alpha2: float
    alpha3: float

    def __post_init__(self):
        a = (self.alpha1, self.alpha2, self.alpha3)
        if any(w < 0 for w in a):
            raise InvalidWeights(f"negative weight in {a}")
        if abs(sum(a) - 1.0) > 1e-12:
            raise InvalidWeights(f"weights {a} sum to {sum(a)!r}, expected 1")

    @staticmethod
    def equal() -> "Weights":
        return Weights(1 / 3, 1 / 3, 1 / 3)

    @staticmethod
    def normalized(a1: float, a2: float, a3: float) -> "Weights":
        total = a1 + a2 + a3
        if total <= 0:
            raise InvalidWeights(f"weights ({a1}, {a2}, {a3}) have non-positive sum")
        return Weights(a1 / total, a2 / total, a3 / total)


def empirical_risk(preds: Sequence, targets: Sequence, c: Contrast) -> float:
    """Mean contrast over the sample: squared error or 0-1 mismatch."""
    if len(preds) != len(targets):
        raise LengthMismatch(f"{len(preds)} predictions vs {len(targets)} targets")
    if len(preds) == 0:
        raise EmptyInput("empirical risk over an empty sample")
    if c is Contrast.QUADRATIC:
        return sum((p - t) ** 2 for p, t in zip(preds, targets)) / len(preds)
    return sum(1 for p, t in zip(preds, targets) if p != t) / len(preds)


def baseline_prediction(train_targets: Sequence, task: TaskKind):
    """Target mean for regression; modal class for classification, ties
    broken by the smallest class code."""
    if len(train_targets) == 0:
        raise EmptyInput("baseline over an empty sample")
    if task is TaskKind.REGRESSION:
        return sum(train_targets) / len(train_targets)
    counts = Counter(train_targets)
    best = max(counts.values())
    return min(c for c, k in counts.items() if k == best)


def predictivity(model_risk: float, baseline_risk: float) -> float:
    """1 - model_risk / baseline_risk; may be negative for models worse
    than the baseline."""
    if model_risk < 0 or baseline_risk < 0:
        raise ValueError("risks must be non-negative")
    if baseline_risk == 0:
        if model_risk == 0:
            return 0.0
        raise DegenerateBaseline(
            "baseline risk is 0 (constant target?) while model risk is positive"
        )
    return 1.0 - model_risk / baseline_risk


def dice_sorensen(a: set[DiscretizedRule], b: set[DiscretizedRule]) -> float:
    """2|a & b| / (|a| + |b|), with 0/0 defined as 0."""
    denom = len(a) + len(b)
    if denom == 0:
        return 0.0
    return 2.0 * len(a & b) / denom


def q_stability(fit: Callable[["Dataset"], RuleSet], d1, d2, q: int) -> float:
    """Fit on each half, discretize each rule set with a grid fitted on its
    own half, and compare.

    `fit` maps a dataset to a RuleSet; seeding for stochastic learners is
    the caller's responsibility (the harness derives per-half seeds).
    """
    r1 = fit(d1)
    r2 = fit(d2)
    g1 = fit_quantile_grid(d1, q)
    g2 = fit_quantile_grid(d2, q)
    return dice_sorensen(discretize_ruleset(g1, r1), discretize_ruleset(g2, r2))


def simplicity_scores(ints: dict[str, int]) -> dict[str, float]:
    """min positive index / own index; algorithms with an empty rule set
    score 0 and do not define the minimum."""
    if len(ints) < 2:
        raise FewerThanTwoAlgorithms("relative simplicity needs >= 2 algorithms")
    positive = [v for v in ints.values() if v > 0]
    if not positive:
        raise AllEmpty("every algorithm has an empty rule set")
    lo = min(positive)
    return {k: (lo / v if v > 0 else 0.0) for k, v in ints.items()}


def interpretability(pred: float, stab: float, simp: float, w: Weights) -> float:
    """Weighted sum of the three scores; negative predictivity is clamped
    to 0 so the result stays in [0, 1]."""
    if not 0.0 <= stab <= 1.0:
        raise ValueError(f"stability {stab} outside [0, 1]")
    if not 0.0 <= simp <= 1.0:
        raise ValueError(f"simplicity {simp} outside [0, 1]")
    return w.alpha1 * max(pred, 0.0) + w.alpha2 * stab + w.alpha3 * simp
