"""Evaluation protocol: k-fold cross-validation, half-split stability,
per-fold relative simplicity, score averaging and correlations.

Per fold and algorithm: fit on the training split (rule-set size), predict
the test split against the training-target baseline (predictivity), refit
on two random halves of the training split (stability), then combine with
the configured weights.  Everything is a pure function of the inputs
including the seed, so two runs produce byte-identical reports.
"""

from __future__ import annotations

import csv
import hashlib
import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .dataset import Dataset
from .errors import BadK, FewerThanTwoAlgorithms, InsufficientRows, RuleScoreError, TooSmall
from .learners import (
    CartParams,
    SirusLiteParams,
    cart_rule_set,
    fit_sirus_lite,
    predict_ruleset_batch,
)
from .rules import RuleSet, interpretability_index, load_rule_set
from .scores import (
    Contrast,
    Weights,
    baseline_prediction,
    empirical_risk,
    interpretability,
    predictivity,
    q_stability,
    simplicity_scores,
)

SCORE_NAMES = ("predictivity", "stability", "simplicity", "interpretability")


@dataclass(frozen=True)
class FoldPlan:
    k: int
    assignments: tuple[int, ...]  # row index -> fold index
    seed: int

    def fold_rows(self, fold: int) -> list[int]:
        return [i for i, f in enumerate(self.assignments) if f == fold]


def kfold_split(n: int, k: int, seed: int) -> FoldPlan:
    """Deterministic shuffled assignment with fold sizes differing by <= 1."""
    if not 2 <= k <= n:
        raise BadK(f"need 2 <= k <= n, got k={k}, n={n}")
    rng = np.random.default_rng(seed)
    perm = rng.permutation(n)
    assignments = [0] * n
    for pos, row in enumerate(perm):
        assignments[row] = pos % k
    return FoldPlan(k, tuple(assignments), seed)


def stability_split(train: Dataset, seed: int) -> tuple[Dataset, Dataset]:
    """Disjoint random halves of sizes floor(n/2) and ceil(n/2)."""
    if train.n < 4:
        raise TooSmall(f"need >= 4 rows for the half-split protocol, got {train.n}")
    rng = np.random.default_rng(seed)
    perm = rng.permutation(train.n)
    half = train.n // 2
    return train.subset(perm[:half]), train.subset(perm[half:])


def _derived_seed(*parts) -> int:
    digest = hashlib.sha256(":".join(str(p) for p in parts).encode()).digest()
    return int.from_bytes(digest[:8], "big")


@dataclass(frozen=True)
class AlgorithmSpec:
    """One entry of the comparison set.

    source: "builtin-cart" | "builtin-sirus-lite" | "imported-rules".
    For imported rules, `rules` holds the fixed rule set (it cannot be
    refit, so its stability is reported as unavailable).
    """

    id: str
    source: str
    params: dict = field(default_factory=dict)
    rules: RuleSet | None = None

    def fitter(self, seed: int) -> Callable[[Dataset], RuleSet] | None:
        if self.source == "builtin-cart":
            p = CartParams(seed=seed, **self.params)
            return lambda data: cart_rule_set(data, p)
        if self.source == "builtin-sirus-lite":
            p = SirusLiteParams(seed=seed, **self.params)
            return lambda data: fit_sirus_lite(data, p)
        if self.source == "imported-rules":
            return None
        raise ValueError(f"unknown algorithm source {self.source!r}")


@dataclass(frozen=True)
class EvaluationConfig:
    algorithms: tuple[AlgorithmSpec, ...]
    k: int = 10
    q: int = 10
    weights: Weights = field(default_factory=Weights.equal)
    seed: int = 0
    jobs: int = 1

    def __post_init__(self):
        if len(self.algorithms) < 2:
            raise FewerThanTwoAlgorithms(
                "relative simplicity needs at least 2 algorithms"
            )


@dataclass
class ScoreReport:
    per_fold: list[dict]  # dataset, algorithm, fold, 4 score fields
    means: dict  # dataset -> algorithm -> score -> float | None
    correlations: dict  # {"labels": [...], "matrix": 3x3 (None = undefined)}
    failures: list[dict]
    config: dict


def score_correlations(rows: Sequence[Sequence[float]]) -> list[list[float | None]]:
    """Pearson correlation over (pred, stab, simp) columns.

    A column with zero variance yields undefined (None) off-diagonal
    entries; the diagonal is always 1.
    """
    data = np.asarray(rows, dtype=float)
    if data.ndim != 2 or data.shape[0] < 2:
        raise InsufficientRows("need >= 2 score rows for correlations")
    cols = data.shape[1]
    centered = data - data.mean(axis=0)
    norms = np.sqrt((centered**2).sum(axis=0))
    out: list[list[float | None]] = []
    for i in range(cols):
        row: list[float | None] = []
        for j in range(cols):
            if i == j:
                row.append(1.0)
            elif norms[i] == 0 or norms[j] == 0:
                row.append(None)
            else:
                row.append(float(centered[:, i] @ centered[:, j] / (norms[i] * norms[j])))
        out.append(row)
    return out


def import_rules(path) -> RuleSet:
    """Load a rule-set interchange file (parsed and canonicalized)."""
    return load_rule_set(path)


def _evaluate_fold(dataset: Dataset, plan: FoldPlan, fold: int, cfg: EvaluationConfig):
    """Scores for every algorithm on one fold; returns (rows, failures)."""
    test_rows = plan.fold_rows(fold)
    train_rows = [i for i in range(dataset.n) if plan.assignments[i] != fold]
    train = dataset.subset(train_rows)
    test = dataset.subset(test_rows)
    contrast = Contrast.for_task(dataset.task)

    baseline = baseline_prediction(train.y.tolist(), dataset.task)
    baseline_risk = empirical_risk([baseline] * test.n, test.y.tolist(), contrast)

    results: dict[str, dict] = {}
    failures: list[dict] = []
    ints: dict[str, int] = {}

    for spec in cfg.algorithms:
        try:
            fit_seed = _derived_seed(cfg.seed, dataset.name, fold, spec.id, "fit")
            fitter = spec.fitter(fit_seed)
            if fitter is None:
                rs = spec.rules
                stab = None
            else:
                rs = fitter(train)
                stab_seed = _derived_seed(cfg.seed, dataset.name, fold, "stability")
                d1, d2 = stability_split(train, stab_seed)
                h1 = spec.fitter(_derived_seed(cfg.seed, dataset.name, fold, spec.id, "h1"))
                h2 = spec.fitter(_derived_seed(cfg.seed, dataset.name, fold, spec.id, "h2"))
                stab = q_stability(
                    lambda d, f1=h1, f2=h2: (f1 if d is d1 else f2)(d), d1, d2, cfg.q
                )
            preds = predict_ruleset_batch(rs, test.columns)
            model_risk = empirical_risk(preds, test.y.tolist(), contrast)
            pred = predictivity(model_risk, baseline_risk)
            ints[spec.id] = interpretability_index(rs)
            results[spec.id] = {"predictivity": pred, "stability": stab}
        except RuleScoreError as exc:
            failures.append(
                {
                    "dataset": dataset.name,
                    "fold": fold,
                    "algorithm": spec.id,
                    "error": f"{type(exc).__name__}: {exc}",
                }
            )

    try:
        simps = simplicity_scores(ints)
    except RuleScoreError as exc:
        simps = {a: None for a in ints}
        failures.append(
            {
                "dataset": dataset.name,
                "fold": fold,
                "algorithm": "*",
                "error": f"{type(exc).__name__}: {exc}",
            }
        )

    rows = []
    for spec in cfg.algorithms:
        if spec.id not in results:
            continue
        r = results[spec.id]
        simp = simps.get(spec.id)
        if r["stability"] is not None and simp is not None:
            interp = interpretability(
                r["predictivity"], r["stability"], simp, cfg.weights
            )
        else:
            interp = None
        rows.append(
            {
                "dataset": dataset.name,
                "algorithm": spec.id,
                "fold": fold,
                "predictivity": r["predictivity"],
                "stability": r["stability"],
                "simplicity": simp,
                "interpretability": interp,
            }
        )
    return rows, failures


def evaluate(datasets: Sequence[Dataset], cfg: EvaluationConfig) -> ScoreReport:
    units = []
    plans = {}
    for ds in datasets:
        plans[ds.name] = kfold_split(ds.n, cfg.k, _derived_seed(cfg.seed, ds.name, "folds"))
        for fold in range(cfg.k):
            units.append((ds, fold))

    def run(unit):
        ds, fold = unit
        return _evaluate_fold(ds, plans[ds.name], fold, cfg)

    if cfg.jobs > 1:
        with ThreadPoolExecutor(max_workers=cfg.jobs) as pool:
            outcomes = list(pool.map(run, units))
    else:
        outcomes = [run(u) for u in units]

    per_fold: list[dict] = []
    failures: list[dict] = []
    for rows, fails in outcomes:
        per_fold.extend(rows)
        failures.extend(fails)

    means: dict = {}
    for ds in datasets:
        means[ds.name] = {}
        for spec in cfg.algorithms:
            entry = {}
            for score in SCORE_NAMES:
                vals = [
                    r[score]
                    for r in per_fold
                    if r["dataset"] == ds.name
                    and r["algorithm"] == spec.id
                    and r[score] is not None
                ]
                entry[score] = sum(vals) / len(vals) if vals else None
            means[ds.name][spec.id] = entry

    triples = [
        (r["predictivity"], r["stability"], r["simplicity"])
        for r in per_fold
        if r["stability"] is not None and r["simplicity"] is not None
    ]
    if len(triples) >= 2:
        matrix = score_correlations(triples)
    else:
        matrix = [[1.0 if i == j else None for j in range(3)] for i in range(3)]

    config = {
        "k": cfg.k,
        "q": cfg.q,
        "seed": cfg.seed,
        "weights": [cfg.weights.alpha1, cfg.weights.alpha2, cfg.weights.alpha3],
        "algorithms": [
            {"id": s.id, "source": s.source, "params": s.params} for s in cfg.algorithms
        ],
        "datasets": [ds.name for ds in datasets],
    }
    return ScoreReport(
        per_fold=per_fold,
        means=means,
        correlations={"labels": ["predictivity", "stability", "simplicity"], "matrix": matrix},
        failures=failures,
        config=config,
    )


# --- report artifacts -----------------------------------------------------


def _fmt(v, digits=None) -> str:
    if v is None:
        return ""
    if digits is not None:
        return f"{v:.{digits}f}"
    return repr(float(v))


def write_report(report: ScoreReport, outdir) -> list[str]:
    """Write report.json, scores.csv, summary.md and boxplot_data.csv."""
    os.makedirs(outdir, exist_ok=True)
    written = []

    path = os.path.join(outdir, "report.json")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(
            {
                "config": report.config,
                "per_fold": report.per_fold,
                "means": report.means,
                "correlations": report.correlations,
                "failures": report.failures,
            },
            fh,
            indent=2,
            sort_keys=True,
            allow_nan=False,
        )
        fh.write("\n")
    written.append(path)

    path = os.path.join(outdir, "scores.csv")
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["dataset", "algorithm", "fold", *SCORE_NAMES])
        for r in report.per_fold:
            writer.writerow(
                [r["dataset"], r["algorithm"], r["fold"]]
                + [_fmt(r[s]) for s in SCORE_NAMES]
            )
    written.append(path)

    path = os.path.join(outdir, "boxplot_data.csv")
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["dataset", "algorithm", "fold", "score", "value"])
        for r in report.per_fold:
            for s in SCORE_NAMES:
                if r[s] is not None:
                    writer.writerow([r["dataset"], r["algorithm"], r["fold"], s, _fmt(r[s])])
    written.append(path)

    path = os.path.join(outdir, "summary.md")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("# Evaluation summary\n")
        for ds_name in report.config["datasets"]:
            fh.write(f"\n## {ds_name}\n\n")
            fh.write("| algorithm | predictivity | stability | simplicity | interpretability |\n")
            fh.write("|---|---|---|---|---|\n")
            for alg, entry in report.means[ds_name].items():
                cells = [_fmt(entry[s], 2) if entry[s] is not None else "n/a" for s in SCORE_NAMES]
                fh.write(f"| {alg} | " + " | ".join(cells) + " |\n")
        fh.write("\n## Score correlations\n\n")
        labels = report.correlations["labels"]
        fh.write("| | " + " | ".join(labels) + " |\n")
        fh.write("|---|" + "---|" * len(labels) + "\n")
        for lab, row in zip(labels, report.correlations["matrix"]):
            cells = [_fmt(v, 2) if v is not None else "undefined" for v in row]
            fh.write(f"| {lab} | " + " | ".join(cells) + " |\n")
        if report.failures:
            fh.write("\n## Failures\n\n")
            for f in report.failures:
                fh.write(f"- {f['dataset']} fold {f['fold']} {f['algorithm']}: {f['error']}\n")
    written.append(path)

    return written
