"""Per-feature empirical quantile grids and rule discretization.

Discretization replaces interval boundaries with bin indices on a q-bin
quantile grid; it feeds the stability score only and never changes a
fitted model.
"""

from __future__ import annotations

import math
from bisect import bisect_left
from dataclasses import dataclass
from typing import TYPE_CHECKING

from .errors import EmptyData, UnknownFeature
from .rules import Interval, MemberOf, Rule, RuleSet

if TYPE_CHECKING:
    from .dataset import Dataset


@dataclass(frozen=True)
class QuantileGrid:
    """Sorted cut points per continuous feature, defining up to q bins.

    Tied quantiles are collapsed, so the effective bin count of a feature
    (len(cuts) + 1) can be below q on low-cardinality columns.
    """

    q: int
    cuts: dict[int, tuple[float, ...]]
    fitted_on: str = ""

    def n_bins(self, f: int) -> int:
        return len(self.cuts[f]) + 1


# A discretized rule is its hashable condition tuple: entries are
# (feature, "bin", p_lower, p_upper) or (feature, "cat", categories).
DiscretizedRule = tuple


def fit_quantile_grid(data: "Dataset", q: int) -> QuantileGrid:
    """Cut p (p = 1..q-1) is the sorted-column value at 0-based index
    ceil(n*p/q) - 1; no interpolation, duplicates collapsed."""
    if q < 2:
        raise ValueError(f"q must be >= 2, got {q}")
    if data.n == 0:
        raise EmptyData("cannot fit a quantile grid on an empty dataset")
    cuts: dict[int, tuple[float, ...]] = {}
    for f in range(data.d):
        if data.kinds[f] != "continuous":
            continue
        col = sorted(data.columns[f])
        n = len(col)
        raw = [col[-(-(n * p) // q) - 1] for p in range(1, q)]
        dedup = sorted(set(raw))
        cuts[f] = tuple(float(v) for v in dedup)
    return QuantileGrid(q, cuts, fitted_on=data.name)


def bin_of(grid: QuantileGrid, f: int, v: float) -> int:
    """Smallest p with v <= cuts[f][p-1], else the last bin.

    Bins are left-open/right-closed, so a value equal to a cut belongs to
    the lower bin, matching the (lower, upper] condition semantics.
    """
    if f not in grid.cuts:
        raise UnknownFeature(f"feature {f} has no quantile cuts")
    return bisect_left(grid.cuts[f], v) + 1


def discretize_rule(grid: QuantileGrid, rule: Rule) -> DiscretizedRule:
    """Map each interval (a, b] to the bin pair (bin_of(a), bin_of(b));
    infinite ends map to the first/last bin.  MemberOf passes through."""
    out = []
    for cond in rule.conditions:
        if isinstance(cond.test, Interval):
            lo, hi = cond.test.lower, cond.test.upper
            p_lo = 1 if math.isinf(lo) else bin_of(grid, cond.feature, lo)
            p_hi = (
                grid.n_bins(cond.feature)
                if math.isinf(hi)
                else bin_of(grid, cond.feature, hi)
            )
            out.append((cond.feature, "bin", p_lo, p_hi))
        else:
            assert isinstance(cond.test, MemberOf)
            out.append((cond.feature, "cat", cond.test.categories))
    return tuple(out)


def discretize_ruleset(grid: QuantileGrid, rs: RuleSet) -> set[DiscretizedRule]:
    """Set semantics: distinct rules collapsing to the same bins count once."""
    return {discretize_rule(grid, r) for r in rs.rules}
