"""Exception hierarchy shared by all modules."""


class RuleScoreError(Exception):
    """Base class for all errors raised by this package."""


class ContradictoryRule(RuleScoreError):
    """A rule whose per-feature condition intersection is empty."""


class VacuousRule(RuleScoreError):
    """A rule whose conditions all vanish under canonicalization."""


class MissingFeature(RuleScoreError):
    """An observation lacks a feature tested by a rule."""


class EmptyData(RuleScoreError):
    """A fit or grid operation received an empty dataset."""


class UnknownFeature(RuleScoreError):
    """A feature index is not covered by the quantile grid."""


class LengthMismatch(RuleScoreError):
    """Prediction and target sequences differ in length."""


class EmptyInput(RuleScoreError):
    """An aggregate was requested over an empty sequence."""


class DegenerateBaseline(RuleScoreError):
    """Baseline risk is zero while the model risk is positive."""


class FewerThanTwoAlgorithms(RuleScoreError):
    """Relative simplicity needs at least two algorithms."""


class AllEmpty(RuleScoreError):
    """Every algorithm produced an empty rule set."""


class InvalidWeights(RuleScoreError):
    """Score weights are negative or do not sum to one."""


class MissingValues(RuleScoreError):
    """A dataset cell is empty."""


class UnknownTarget(RuleScoreError):
    """The declared target column is absent from the file."""


class ParseError(RuleScoreError):
    """A cell could not be parsed with its declared column kind."""


class BadK(RuleScoreError):
    """Fold count outside [2, n]."""


class TooSmall(RuleScoreError):
    """Training set too small for the half-split protocol."""


class InsufficientRows(RuleScoreError):
    """Correlation requested over fewer than two score rows."""


class SchemaError(RuleScoreError):
    """A rule-set JSON file violates the interchange schema."""
