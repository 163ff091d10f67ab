"""Command-line interface.

Subcommands: evaluate (full protocol with report artifacts), score-rules
(stability of two rule files discretized on a dataset), validate-rules
(schema check), make-folds (emit a fold plan).  Exit codes: 0 success,
1 usage error, 2 data/schema error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .dataset import load_csv
from .discretize import discretize_ruleset, fit_quantile_grid
from .errors import InvalidWeights, RuleScoreError
from .harness import (
    AlgorithmSpec,
    EvaluationConfig,
    evaluate,
    import_rules,
    kfold_split,
    write_report,
)
from .rules import load_rule_set
from .scores import Weights, dice_sorensen

USAGE_ERROR = 1
DATA_ERROR = 2


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors; remap to 1
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(USAGE_ERROR)


def _parse_weights(text: str) -> Weights:
    parts = text.split(",")
    if len(parts) != 3:
        raise InvalidWeights(f"--weights expects three comma-separated numbers, got {text!r}")
    try:
        a1, a2, a3 = (float(p) for p in parts)
    except ValueError as exc:
        raise InvalidWeights(f"--weights {text!r}: {exc}") from exc
    return Weights.normalized(a1, a2, a3)


def _default_seed() -> int:
    env = os.environ.get("RULESCORE_SEED")
    return int(env) if env else 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="rulescore")
    sub = parser.add_subparsers(dest="command", required=True)

    ev = sub.add_parser("evaluate", help="run the full cross-validated protocol")
    ev.add_argument("--data", required=True, help="comma-separated CSV paths")
    ev.add_argument("--target", required=True, help="target column name")
    ev.add_argument(
        "--algos",
        required=True,
        help="comma-separated: cart, sirus-lite, rules:FILE.json",
    )
    ev.add_argument("--categorical", default="", help="comma-separated categorical column names")
    ev.add_argument("--seed", type=int, default=None)
    ev.add_argument("--q", type=int, default=10)
    ev.add_argument("--folds", type=int, default=10)
    ev.add_argument("--weights", default="1,1,1")
    ev.add_argument("--jobs", type=int, default=1)
    ev.add_argument("--max-leaf-nodes", type=int, default=20)
    ev.add_argument("--out", default=".", help="output directory for report artifacts")

    sr = sub.add_parser("score-rules", help="Dice-Sorensen stability of two rule files")
    sr.add_argument("--rules", required=True)
    sr.add_argument("--rules2", required=True)
    sr.add_argument("--data", required=True)
    sr.add_argument("--target", required=True)
    sr.add_argument("--categorical", default="")
    sr.add_argument("--q", type=int, default=10)

    vr = sub.add_parser("validate-rules", help="check a rule-set JSON file")
    vr.add_argument("path")

    mf = sub.add_parser("make-folds", help="emit a deterministic fold plan")
    mf.add_argument("--n", type=int, required=True)
    mf.add_argument("--folds", type=int, default=10)
    mf.add_argument("--seed", type=int, default=None)

    return parser


def _cmd_evaluate(args) -> int:
    if args.q < 2:
        print("error: --q must be >= 2", file=sys.stderr)
        return USAGE_ERROR
    if args.folds < 2:
        print("error: --folds must be >= 2", file=sys.stderr)
        return USAGE_ERROR
    weights = _parse_weights(args.weights)

    specs = []
    for token in args.algos.split(","):
        token = token.strip()
        if token == "cart":
            specs.append(
                AlgorithmSpec(
                    "cart", "builtin-cart", {"max_leaf_nodes": args.max_leaf_nodes}
                )
            )
        elif token == "sirus-lite":
            specs.append(AlgorithmSpec("sirus-lite", "builtin-sirus-lite", {"q": args.q}))
        elif token.startswith("rules:"):
            path = token[len("rules:"):]
            rs = import_rules(path)
            specs.append(
                AlgorithmSpec(os.path.basename(path), "imported-rules", rules=rs)
            )
        else:
            print(f"error: unknown algorithm {token!r} in --algos", file=sys.stderr)
            return USAGE_ERROR
    if len(specs) < 2:
        print("error: --algos needs at least two algorithms (relative simplicity)", file=sys.stderr)
        return USAGE_ERROR

    categorical = [c for c in args.categorical.split(",") if c]
    datasets = [
        load_csv(path.strip(), target=args.target, categorical=categorical)
        for path in args.data.split(",")
    ]
    seed = args.seed if args.seed is not None else _default_seed()
    cfg = EvaluationConfig(
        algorithms=tuple(specs),
        k=args.folds,
        q=args.q,
        weights=weights,
        seed=seed,
        jobs=args.jobs,
    )
    report = evaluate(datasets, cfg)
    for path in write_report(report, args.out):
        print(path)
    return 0


def _cmd_score_rules(args) -> int:
    data = load_csv(
        args.data,
        target=args.target,
        categorical=[c for c in args.categorical.split(",") if c],
    )
    grid = fit_quantile_grid(data, args.q)
    a = discretize_ruleset(grid, load_rule_set(args.rules))
    b = discretize_ruleset(grid, load_rule_set(args.rules2))
    print(dice_sorensen(a, b))
    return 0


def _cmd_validate_rules(args) -> int:
    rs = load_rule_set(args.path)
    print(f"{args.path}: valid ({len(rs.rules)} rules, task {rs.task.value})")
    return 0


def _cmd_make_folds(args) -> int:
    seed = args.seed if args.seed is not None else _default_seed()
    plan = kfold_split(args.n, args.folds, seed)
    json.dump(
        {"k": plan.k, "seed": plan.seed, "assignments": list(plan.assignments)},
        sys.stdout,
    )
    print()
    return 0


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "evaluate":
            return _cmd_evaluate(args)
        if args.command == "score-rules":
            return _cmd_score_rules(args)
        if args.command == "validate-rules":
            return _cmd_validate_rules(args)
        if args.command == "make-folds":
            return _cmd_make_folds(args)
    except InvalidWeights as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except (RuleScoreError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return DATA_ERROR
    return USAGE_ERROR


def main() -> None:
    raise SystemExit(run())
