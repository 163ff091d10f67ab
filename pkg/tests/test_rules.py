import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rulescore import (
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
    interpretability_index,
    rule_activated,
    rule_length,
    tree_to_rules,
)
from rulescore.errors import ContradictoryRule, MissingFeature, SchemaError, VacuousRule
from rulescore.rules import rule_set_from_json, rule_set_to_json

from conftest import NEG_INF, POS_INF, random_tree


def iv(f, lo, hi):
    return Condition(f, Interval(lo, hi))


class TestCanonicalize:
    def test_merges_same_feature_intervals(self):
        r = Rule((iv(0, NEG_INF, 5), iv(0, NEG_INF, 3)), 1.0)
        c = canonicalize(r)
        assert c.conditions == (iv(0, NEG_INF, 3),)
        assert rule_length(c) == 1

    def test_sorts_by_feature_index(self):
        r = Rule((iv(2, 1, POS_INF), Condition(0, MemberOf(("a", "b")))), 1.0)
        c = canonicalize(r)
        assert [cond.feature for cond in c.conditions] == [0, 2]
        assert rule_length(c) == 2

    def test_contradictory_intervals(self):
        r = Rule((iv(0, NEG_INF, 3), iv(0, 7, POS_INF)), 1.0)
        with pytest.raises(ContradictoryRule):
            canonicalize(r)

    def test_contradictory_categories(self):
        r = Rule(
            (Condition(0, MemberOf(("a",))), Condition(0, MemberOf(("b",)))), 1.0
        )
        with pytest.raises(ContradictoryRule):
            canonicalize(r)

    def test_vacuous_interval_dropped(self):
        r = Rule((iv(0, NEG_INF, POS_INF), iv(1, NEG_INF, 2)), 1.0)
        assert canonicalize(r).conditions == (iv(1, NEG_INF, 2),)

    def test_all_vacuous_raises(self):
        with pytest.raises(VacuousRule):
            canonicalize(Rule((iv(0, NEG_INF, POS_INF),), 1.0))

    def test_full_category_set_dropped_with_universe(self):
        r = Rule(
            (Condition(0, MemberOf(("a", "b"))), iv(1, NEG_INF, 2)), 1.0
        )
        c = canonicalize(r, categories={0: ("a", "b")})
        assert [cond.feature for cond in c.conditions] == [1]

    @settings(max_examples=200)
    @given(st.data())
    def test_idempotent(self, data):
        n_conds = data.draw(st.integers(1, 6))
        conds = []
        for _ in range(n_conds):
            f = data.draw(st.integers(0, 3))
            lo = data.draw(st.one_of(st.just(NEG_INF), st.floats(-10, 10)))
            hi = data.draw(st.one_of(st.just(POS_INF), st.floats(-10, 10)))
            if lo >= hi:
                lo, hi = min(lo, hi) - 1, max(lo, hi)
                if lo >= hi:
                    continue
            conds.append(iv(f, lo, hi))
        if not conds:
            return
        r = Rule(tuple(conds), 0.0)
        try:
            once = canonicalize(r)
        except (ContradictoryRule, VacuousRule):
            return
        assert canonicalize(once) == once


class TestLengthAndIndex:
    def test_two_features(self):
        r = Rule((iv(0, NEG_INF, 1), iv(3, 0, POS_INF)), 1.0)
        assert rule_length(r) == 2

    def test_single_condition(self):
        assert rule_length(Rule((iv(0, NEG_INF, 1),), 1.0)) == 1

    def test_index_100_short_rules_equal_one_long_rule(self):
        short = RuleSet(
            tuple(Rule((iv(f % 5, float(f), float(f + 1)),), 1.0) for f in range(100)),
            TaskKind.REGRESSION,
            0.0,
        )
        long_conds = tuple(iv(f, float(f), float(f + 1)) for f in range(100))
        long = RuleSet((Rule(long_conds, 1.0),), TaskKind.REGRESSION, 0.0)
        assert interpretability_index(short) == interpretability_index(long) == 100

    def test_empty_rule_set(self):
        assert interpretability_index(RuleSet((), TaskKind.REGRESSION, 0.0)) == 0

    def test_mixed_lengths(self):
        rules = tuple(
            Rule(tuple(iv(f, float(f), float(f + 1)) for f in range(k)), 1.0)
            for k in (1, 2, 3)
        )
        rs = RuleSet(rules, TaskKind.REGRESSION, 0.0)
        assert interpretability_index(rs) == 6

    def test_additive_under_union(self, rng):
        trees = [random_tree(rng) for _ in range(2)]
        sets = [tree_to_rules(t, TaskKind.REGRESSION) for t in trees]
        merged = RuleSet(
            sets[0].rules + sets[1].rules, TaskKind.REGRESSION, 0.0
        )
        assert interpretability_index(merged) == sum(
            interpretability_index(s) for s in sets
        )


class TestActivation:
    def test_boundary_included(self):
        r = Rule((iv(0, NEG_INF, 3),), 1.0)
        assert rule_activated(r, [3.0])

    def test_lower_bound_open(self):
        r = Rule((iv(0, 3, 7),), 1.0)
        assert not rule_activated(r, [3.0])
        assert rule_activated(r, [3.0001])

    def test_category_mismatch(self):
        r = Rule((Condition(1, MemberOf(("a",))),), 1.0)
        assert not rule_activated(r, [0.0, "b"])

    def test_missing_feature(self):
        r = Rule((iv(2, 0, 1),), 1.0)
        with pytest.raises(MissingFeature):
            rule_activated(r, [0.0])


class TestTreeToRules:
    def test_stump(self):
        tree = DecisionTree(Split(0, Leaf(2.0), Leaf(8.0), threshold=5.0))
        rs = tree_to_rules(tree, TaskKind.REGRESSION)
        assert len(rs.rules) == 2
        assert rs.rules[0].conditions == (iv(0, NEG_INF, 5.0),)
        assert rs.rules[0].prediction == 2.0
        assert rs.rules[1].conditions == (iv(0, 5.0, POS_INF),)
        assert rs.rules[1].prediction == 8.0

    def test_path_merging_same_feature(self):
        inner = Split(0, Leaf(1.0), Leaf(2.0), threshold=3.0)
        tree = DecisionTree(Split(0, inner, Leaf(3.0), threshold=5.0))
        rs = tree_to_rules(tree, TaskKind.REGRESSION)
        assert rs.rules[0].conditions == (iv(0, NEG_INF, 3.0),)

    def test_single_leaf_tree(self):
        rs = tree_to_rules(DecisionTree(Leaf(4.2)), TaskKind.REGRESSION)
        assert rs.rules == ()
        assert rs.default_prediction == 4.2

    def test_twenty_leaf_tree_index(self):
        # full binary tree of depth 5 with distinct features at each level,
        # pruned to 20 leaves; expected index computed by manual path count
        def build(depth):
            if depth == 5:
                return Leaf(float(depth))
            return Split(depth, build(depth + 1), build(depth + 1), threshold=0.5 * depth + 1)

        tree = DecisionTree(build(0))
        # 32 leaves of depth 5; distinct features on the path, so every
        # rule keeps all 5 conditions
        rs = tree_to_rules(tree, TaskKind.REGRESSION)
        assert len(rs.rules) == 32
        assert interpretability_index(rs) == 32 * 5

    def test_partition_property(self, rng):
        for _ in range(50):
            tree = random_tree(rng)
            rs = tree_to_rules(tree, TaskKind.REGRESSION)
            for _ in range(10):
                x = rng.uniform(0, 1, 3).tolist()
                active = [r for r in rs.rules if rule_activated(r, x)]
                assert len(active) == 1
                assert active[0].prediction == tree.predict_one(x)

    def test_rule_length_bounded_by_depth(self, rng):
        for _ in range(20):
            tree = random_tree(rng, max_depth=5)
            rs = tree_to_rules(tree, TaskKind.REGRESSION)
            for r in rs.rules:
                assert rule_length(r) <= 5


class TestJsonInterchange:
    def rs(self):
        return RuleSet(
            (
                Rule((iv(0, NEG_INF, 3.0), Condition(2, MemberOf(("a", "b")))), 1.5),
                Rule((iv(1, 0.5, POS_INF),), -2.0),
            ),
            TaskKind.REGRESSION,
            0.25,
        )

    def test_round_trip(self):
        rs = self.rs()
        assert rule_set_from_json(rule_set_to_json(rs)) == rs

    def test_field_names_normative(self):
        obj = rule_set_to_json(self.rs())
        assert set(obj) == {"task", "default_prediction", "rules"}
        cond = obj["rules"][0]["conditions"][0]
        assert set(cond) == {"feature", "kind", "lower", "upper", "categories"}
        assert cond["lower"] is None  # -inf encodes as null

    def test_null_lower_is_open_below(self):
        obj = {
            "task": "regression",
            "default_prediction": 0.0,
            "rules": [
                {
                    "conditions": [
                        {"feature": 0, "kind": "interval", "lower": None, "upper": 1.0, "categories": None}
                    ],
                    "prediction": 2.0,
                }
            ],
        }
        rs = rule_set_from_json(obj)
        assert rs.rules[0].conditions[0].test.lower == NEG_INF

    def test_malformed_kind_names_rule_index(self):
        obj = rule_set_to_json(self.rs())
        obj["rules"][1]["conditions"][0]["kind"] = "between"
        with pytest.raises(SchemaError, match="rule 1"):
            rule_set_from_json(obj)

    def test_contradictory_rule_rejected_with_location(self):
        obj = {
            "task": "regression",
            "default_prediction": 0.0,
            "rules": [
                {
                    "conditions": [
                        {"feature": 0, "kind": "interval", "lower": None, "upper": 1.0, "categories": None},
                        {"feature": 0, "kind": "interval", "lower": 5.0, "upper": None, "categories": None},
                    ],
                    "prediction": 2.0,
                }
            ],
        }
        with pytest.raises(ContradictoryRule, match="rule 0"):
            rule_set_from_json(obj)
