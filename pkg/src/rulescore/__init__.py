"""Interpretability scoring for rule-based and tree-based models."""

from ._kernels import KERNEL_IMPL
from .dataset import Dataset, load_csv
from .discretize import QuantileGrid, bin_of, discretize_rule, discretize_ruleset, fit_quantile_grid
from .harness import (
    AlgorithmSpec,
    EvaluationConfig,
    FoldPlan,
    ScoreReport,
    evaluate,
    import_rules,
    kfold_split,
    score_correlations,
    stability_split,
    write_report,
)
from .learners import (
    CartParams,
    SirusLiteParams,
    cart_rule_set,
    fit_cart,
    fit_sirus_lite,
    predict_ruleset,
    predict_ruleset_batch,
)
from .rules import (
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
    load_rule_set,
    rule_activated,
    rule_length,
    save_rule_set,
    tree_to_rules,
)
from .scores import (
    Contrast,
    Weights,
    baseline_prediction,
    dice_sorensen,
    empirical_risk,
    interpretability,
    predictivity,
    q_stability,
    simplicity_scores,
)

__version__ = "0.1.0"
