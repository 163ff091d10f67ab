"""Rule intermediate representation.

A rule is an ordered conjunction of per-feature tests plus a constant
prediction.  Canonical rules have at most one condition per feature, sorted
by feature index, which makes syntactic rule comparison well defined.
Two rules are considered syntactically equal iff their canonical condition
lists are equal; predictions are ignored for identity.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Mapping, Sequence, Union

from .errors import ContradictoryRule, MissingFeature, SchemaError, VacuousRule

NEG_INF = float("-inf")
POS_INF = float("inf")


class TaskKind(Enum):
    REGRESSION = "regression"
    CLASSIFICATION = "classification"


@dataclass(frozen=True)
class Interval:
    """Half-open interval (lower, upper] over a continuous feature."""

    lower: float
    upper: float

    def __post_init__(self):
        if not self.lower < self.upper:
            raise ContradictoryRule(f"empty interval ({self.lower}, {self.upper}]")

    @property
    def vacuous(self) -> bool:
        return math.isinf(self.lower) and math.isinf(self.upper)

    def contains(self, v: float) -> bool:
        return self.lower < v <= self.upper


@dataclass(frozen=True)
class MemberOf:
    """Membership test over a categorical feature.

    Categories are kept as a sorted tuple so that rule identity and any
    serialized output are independent of set iteration order.
    """

    categories: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "categories", tuple(sorted(set(self.categories))))
        if not self.categories:
            raise ContradictoryRule("empty category set")

    def contains(self, v: str) -> bool:
        return v in self.categories


Test = Union[Interval, MemberOf]


@dataclass(frozen=True)
class Condition:
    feature: int
    test: Test


@dataclass(frozen=True)
class Rule:
    conditions: tuple[Condition, ...]
    prediction: Union[float, str]

    def key(self) -> tuple:
        """Hashable identity key: conditions only, predictions ignored."""
        return tuple(
            (c.feature, "iv", c.test.lower, c.test.upper)
            if isinstance(c.test, Interval)
            else (c.feature, "cat", c.test.categories)
            for c in self.conditions
        )


@dataclass(frozen=True)
class RuleSet:
    rules: tuple[Rule, ...]
    task: TaskKind
    default_prediction: Union[float, str]
    warnings: tuple[str, ...] = field(default=())


def canonicalize(
    rule: Rule, categories: Mapping[int, Iterable[str]] | None = None
) -> Rule:
    """Merge same-feature conditions, drop vacuous ones, sort by feature.

    `categories` optionally maps feature index to the full observed category
    set; a MemberOf test covering the whole set is vacuous and dropped.
    Raises ContradictoryRule on an empty per-feature intersection and
    VacuousRule if nothing survives.
    """
    by_feature: dict[int, Test] = {}
    for cond in rule.conditions:
        prev = by_feature.get(cond.feature)
        if prev is None:
            by_feature[cond.feature] = cond.test
            continue
        if isinstance(prev, Interval) != isinstance(cond.test, Interval):
            raise ContradictoryRule(
                f"feature {cond.feature} mixes interval and category tests"
            )
        if isinstance(prev, Interval):
            lo = max(prev.lower, cond.test.lower)
            hi = min(prev.upper, cond.test.upper)
            if not lo < hi:
                raise ContradictoryRule(
                    f"feature {cond.feature}: ({lo}, {hi}] is empty"
                )
            by_feature[cond.feature] = Interval(lo, hi)
        else:
            common = tuple(c for c in prev.categories if c in cond.test.categories)
            if not common:
                raise ContradictoryRule(f"feature {cond.feature}: no common category")
            by_feature[cond.feature] = MemberOf(common)

    kept = []
    for f in sorted(by_feature):
        test = by_feature[f]
        if isinstance(test, Interval):
            if test.vacuous:
                continue
        elif categories is not None and f in categories:
            if set(test.categories) >= set(categories[f]):
                continue
        kept.append(Condition(f, test))
    if not kept:
        raise VacuousRule("all conditions vanished under canonicalization")
    return Rule(tuple(kept), rule.prediction)


def rule_length(rule: Rule) -> int:
    return len(rule.conditions)


def interpretability_index(rs: RuleSet) -> int:
    """Sum of rule lengths over the set; 0 for an empty rule set."""
    return sum(rule_length(r) for r in rs.rules)


def rule_activated(rule: Rule, x: Sequence) -> bool:
    """True iff every condition of `rule` holds on observation `x`."""
    for cond in rule.conditions:
        if cond.feature >= len(x):
            raise MissingFeature(f"observation has no feature {cond.feature}")
        v = x[cond.feature]
        if v is None:
            raise MissingFeature(f"observation lacks a value for feature {cond.feature}")
        if not cond.test.contains(v):
            return False
    return True


# --- decision trees -------------------------------------------------------


@dataclass(frozen=True)
class Leaf:
    value: Union[float, str]


@dataclass(frozen=True)
class Split:
    """Internal node; `left` holds where the test passes.

    Numeric nodes test x[feature] <= threshold; categorical nodes test
    x[feature] in categories.
    """

    feature: int
    left: "Leaf | Split"
    right: "Leaf | Split"
    threshold: float | None = None
    categories: tuple[str, ...] | None = None


@dataclass(frozen=True)
class DecisionTree:
    root: Leaf | Split

    def predict_one(self, x: Sequence) -> Union[float, str]:
        node = self.root
        while isinstance(node, Split):
            if node.threshold is not None:
                node = node.left if x[node.feature] <= node.threshold else node.right
            else:
                node = node.left if x[node.feature] in node.categories else node.right
        return node.value

    def n_leaves(self) -> int:
        def count(node):
            if isinstance(node, Leaf):
                return 1
            return count(node.left) + count(node.right)

        return count(self.root)


def _branch_conditions(node: Split, universe: Mapping[int, Iterable[str]] | None):
    """Conditions added by taking the left / right branch of `node`."""
    if node.threshold is not None:
        left = Condition(node.feature, Interval(NEG_INF, node.threshold))
        right = Condition(node.feature, Interval(node.threshold, POS_INF))
    else:
        left = Condition(node.feature, MemberOf(node.categories))
        if universe is None or node.feature not in universe:
            raise ValueError(
                f"categorical split on feature {node.feature} needs its category universe"
            )
        rest = tuple(c for c in universe[node.feature] if c not in node.categories)
        right = Condition(node.feature, MemberOf(rest))
    return left, right


def tree_to_rules(
    tree: DecisionTree,
    task: TaskKind,
    categories: Mapping[int, Iterable[str]] | None = None,
) -> RuleSet:
    """One rule per leaf: canonicalized root-to-leaf path conjunction.

    A single-leaf tree yields the empty rule set with the leaf value as
    default prediction.
    """
    if isinstance(tree.root, Leaf):
        return RuleSet((), task, tree.root.value)

    rules: list[Rule] = []

    def walk(node, path: list[Condition]):
        if isinstance(node, Leaf):
            rules.append(canonicalize(Rule(tuple(path), node.value), categories))
            return
        left_c, right_c = _branch_conditions(node, categories)
        walk(node.left, path + [left_c])
        walk(node.right, path + [right_c])

    walk(tree.root, [])
    default = rules[0].prediction
    return RuleSet(tuple(rules), task, default)


# --- JSON interchange -----------------------------------------------------


def _condition_to_json(c: Condition) -> dict:
    if isinstance(c.test, Interval):
        return {
            "feature": c.feature,
            "kind": "interval",
            "lower": None if math.isinf(c.test.lower) else c.test.lower,
            "upper": None if math.isinf(c.test.upper) else c.test.upper,
            "categories": None,
        }
    return {
        "feature": c.feature,
        "kind": "member_of",
        "lower": None,
        "upper": None,
        "categories": list(c.test.categories),
    }


def rule_set_to_json(rs: RuleSet) -> dict:
    return {
        "task": rs.task.value,
        "default_prediction": rs.default_prediction,
        "rules": [
            {
                "conditions": [_condition_to_json(c) for c in r.conditions],
                "prediction": r.prediction,
            }
            for r in rs.rules
        ],
    }


def rule_set_from_json(obj: dict) -> RuleSet:
    """Parse and canonicalize a rule set in the interchange format."""
    if not isinstance(obj, dict):
        raise SchemaError("top-level value must be an object")
    try:
        task = TaskKind(obj["task"])
    except (KeyError, ValueError) as exc:
        raise SchemaError(f"bad or missing 'task' field: {exc}") from exc
    if "default_prediction" not in obj:
        raise SchemaError("missing 'default_prediction'")
    raw_rules = obj.get("rules")
    if not isinstance(raw_rules, list):
        raise SchemaError("'rules' must be an array")

    rules = []
    for i, raw in enumerate(raw_rules):
        try:
            conds = []
            for raw_c in raw["conditions"]:
                kind = raw_c.get("kind")
                feature = raw_c["feature"]
                if not isinstance(feature, int) or feature < 0:
                    raise SchemaError(f"rule {i}: bad feature index {feature!r}")
                if kind == "interval":
                    lo = raw_c.get("lower")
                    hi = raw_c.get("upper")
                    test = Interval(
                        NEG_INF if lo is None else float(lo),
                        POS_INF if hi is None else float(hi),
                    )
                elif kind == "member_of":
                    cats = raw_c.get("categories")
                    if not cats:
                        raise SchemaError(f"rule {i}: empty categories")
                    test = MemberOf(tuple(str(c) for c in cats))
                else:
                    raise SchemaError(f"rule {i}: unknown condition kind {kind!r}")
                conds.append(Condition(feature, test))
            rule = canonicalize(Rule(tuple(conds), raw["prediction"]))
        except ContradictoryRule as exc:
            raise ContradictoryRule(f"rule {i}: {exc}") from exc
        except SchemaError:
            raise
        except (KeyError, TypeError, ValueError) as exc:
            raise SchemaError(f"rule {i}: {exc}") from exc
        rules.append(rule)
    return RuleSet(tuple(rules), task, obj["default_prediction"])


def load_rule_set(path) -> RuleSet:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"{path}: {exc}") from exc
    return rule_set_from_json(obj)


def save_rule_set(rs: RuleSet, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(rule_set_to_json(rs), fh, indent=2, sort_keys=True)
        fh.write("\n")
