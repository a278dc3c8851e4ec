"""Command-line interface: every subcommand emits one table.

Exit codes: 0 success, 1 a verification check failed, 2 usage/domain error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from datetime import datetime, timezone
from fractions import Fraction
from typing import Any, Sequence

from . import __version__
from .exact import parse_rational, to_decimal
from .inference import (
    DegenerateFunctionError,
    Prior,
    SymmetricBooleanFunction,
    bayes_optimal_strategy,
    bayes_success,
    function_success_profile,
    optimal_worst_case_strategy,
    parity_algorithm,
    parity_even_probability,
    standard_strategy,
    success_by_weight,
    threshold_one_sided,
    threshold_two_sided,
)
from .repr_theory import Partition, character, dim_irrep, dim_two_row, hook_lengths
from .sampling import (
    distinguish_bound,
    l1_closed_form,
    l1_distance,
    weight_outcome_distribution,
)
from .simulate import DEFAULT_TRIALS, ScenarioConfig, run_scenario, sweep
from .verification import LEVELS, run_suite

FORMATS = ("csv", "json", "pretty")
FORMAT_ENV = "HIDDENBASIS_FORMAT"


class UsageError(ValueError):
    pass


def _exact(row: dict, key: str, value: Fraction | int) -> None:
    row[key] = str(Fraction(value))
    row[f"{key}_decimal"] = to_decimal(value)


def parse_partition(text: str) -> Partition:
    """'4,2' -> (4,2); parts must be positive and non-increasing."""
    try:
        parts = [int(p) for p in text.split(",") if p.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of integers: {text!r}") from exc
    if not parts or any(p <= 0 for p in parts):
        raise argparse.ArgumentTypeError(f"partition parts must be positive: {text!r}")
    if any(a < b for a, b in zip(parts, parts[1:])):
        raise argparse.ArgumentTypeError(f"partition parts must be non-increasing: {text!r}")
    return Partition(parts)


def read_prior(path: str, n: int) -> Prior:
    """Two-column CSV (k, weight), optional header; weights parsed exactly then normalised."""
    weights: dict[int, Fraction] = {}
    with open(path, newline="") as fh:
        for lineno, row in enumerate(csv.reader(fh), start=1):
            if not row or all(not c.strip() for c in row):
                continue
            if len(row) != 2:
                raise UsageError(f"{path}:{lineno}: expected 2 columns (k, weight), got {len(row)}")
            if lineno == 1 and row[0].strip().lower() == "k":
                continue
            try:
                k = int(row[0])
                w = parse_rational(row[1])
            except ValueError as exc:
                raise UsageError(f"{path}:{lineno}: malformed row {row}: {exc}") from exc
            if k in weights:
                raise UsageError(f"{path}:{lineno}: duplicate k={k}")
            if w < 0:
                raise UsageError(f"{path}:{lineno}: negative weight {row[1]}")
            weights[k] = w
    if not weights:
        raise UsageError(f"{path}: no prior rows")
    return Prior.from_weights(n, weights)


# -- subcommands: each returns a list of row dicts --


def cmd_dist(args) -> list[dict]:
    dist = weight_outcome_distribution(args.n, args.k)
    rows = []
    for ell, p in dist.probs.items():
        row: dict[str, Any] = {"l": ell}
        _exact(row, "prob", p)
        rows.append(row)
    return rows


def cmd_dims(args) -> list[dict]:
    rows = []
    for ell in range(args.n // 2 + 1):
        lam = Partition.two_row(args.n, ell)
        closed, hooks = dim_two_row(args.n, ell), dim_irrep(lam)
        rows.append(
            {
                "l": ell,
                "partition": str(lam),
                "dim_two_row": closed,
                "dim_hook_length": hooks,
                "hooks": " ".join("/".join(map(str, r)) for r in hook_lengths(lam)),
                "agree": closed == hooks,
            }
        )
    return rows


def cmd_char(args) -> list[dict]:
    return [{"lambda": str(args.lam), "rho": str(args.rho), "character": character(args.lam, args.rho)}]


def cmd_bounds(args) -> list[dict]:
    n = args.n
    rows = []
    for k in range(n // 2):
        row: dict[str, Any] = {"k": k}
        closed = l1_closed_form(n, k)
        _exact(row, "l1", closed)
        row["l1_direct_agrees"] = l1_distance(weight_outcome_distribution(n, k), weight_outcome_distribution(n, k + 1)) == closed
        _exact(row, "success_bound", distinguish_bound(n, k))
        rows.append(row)
    return rows


def cmd_verify(args) -> list[dict]:
    results = run_suite(args.n, args.level, args.seed)
    args.failed = not all(r.passed for r in results)
    return [
        {"check": r.name, "passed": r.passed, "observed": r.observed, "tolerance": r.tolerance} for r in results
    ]


def cmd_strategy(args) -> list[dict]:
    n = args.n
    if args.objective == "worst-case":
        if args.prior:
            raise UsageError("--prior only applies to --objective bayes")
        o, value = optimal_worst_case_strategy(n)
    else:
        prior = read_prior(args.prior, n) if args.prior else Prior.uniform(n)
        o = bayes_optimal_strategy(n, prior)
        value = bayes_success(o, prior, n)
    per_k = success_by_weight(o, n)
    rows = []
    for k in range(o.size):
        row: dict[str, Any] = {"k": k}
        for ell in range(o.size):
            row[f"O_l{ell}"] = str(o[k, ell])
        _exact(row, "success_given_k", per_k[k])
        _exact(row, "objective", value)
        rows.append(row)
    return rows


def _function_rows(n: int, f: SymmetricBooleanFunction, post, extra) -> list[dict]:
    std = standard_strategy(n)
    one_sided = function_success_profile(f, std)
    two_sided = function_success_profile(f, std, post)
    rows = []
    for k in range(n // 2 + 1):
        row: dict[str, Any] = {"k": k, "f": f(k)}
        extra(row, k)
        _exact(row, "one_sided_success", one_sided[k])
        _exact(row, "two_sided_success", two_sided[k])
        _exact(row, "q0", post.q0)
        _exact(row, "q1", post.q1)
        row["flip"] = post.flip
        _exact(row, "worst_case_success", post.success)
        rows.append(row)
    return rows


def cmd_threshold(args) -> list[dict]:
    failure, _ = threshold_one_sided(args.n, args.t)
    post = threshold_two_sided(args.n, args.t)
    f = SymmetricBooleanFunction.threshold(args.n, args.t)
    return _function_rows(args.n, f, post, lambda row, k: _exact(row, "one_sided_failure", failure[k]))


def cmd_parity(args) -> list[dict]:
    post = parity_algorithm(args.n)
    f = SymmetricBooleanFunction.parity(args.n)
    return _function_rows(
        args.n, f, post, lambda row, k: _exact(row, "prob_guess_even", parity_even_probability(args.n, k))
    )


def cmd_simulate(args) -> list[dict]:
    mode = "exact" if args.mode == "exact-sampled" else args.mode
    trials = args.trials if args.trials is not None else DEFAULT_TRIALS[mode]
    if args.task == "threshold" and args.t is None:
        raise UsageError("--task threshold needs --t")
    if args.k is None:
        reports = sweep(args.n, args.task, trials, args.seed, mode, args.t)
    else:
        cfg = ScenarioConfig(n=args.n, k=args.k, trials=trials, seed=args.seed, mode=mode, task=args.task, t=args.t)
        reports = [run_scenario(cfg)]
    rows = []
    for r in reports:
        row: dict[str, Any] = {
            "n": r.n,
            "k": r.k,
            "task": r.task,
            "mode": r.mode,
            "trials": r.trials,
            "successes": r.successes,
            "rate": r.rate,
        }
        _exact(row, "theory", r.theory)
        row.update(
            stderr=r.stderr,
            z=r.z,
            seed=r.seed,
            stream=r.stream,
            outcome_counts=" ".join(f"{ell}:{c}" for ell, c in r.outcome_counts.items()),
        )
        rows.append(row)
    return rows


# -- output --


def _cell(v: Any) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def render(rows: list[dict], fmt: str, meta: dict) -> str:
    columns: list[str] = []
    for row in rows:
        columns.extend(c for c in row if c not in columns)
    if fmt == "json":
        return json.dumps({"meta": meta, "rows": rows}, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\r\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_cell(row.get(c, "")) for c in columns])
        return buf.getvalue()
    cells = [[_cell(row.get(c, "")) for c in columns] for row in rows]
    widths = [max([len(c)] + [len(r[i]) for r in cells]) for i, c in enumerate(columns)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(columns, widths)).rstrip()]
    lines.append("  ".join("-" * w for w in widths))
    lines += ["  ".join(v.ljust(w) for v, w in zip(r, widths)).rstrip() for r in cells]
    return "\n".join(lines) + "\n"


def _common(parser: argparse.ArgumentParser) -> None:
    # SUPPRESS so flags may appear before or after the subcommand
    parser.add_argument("--format", choices=FORMATS, default=argparse.SUPPRESS, help="output format")
    parser.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="master random seed (default 0)")
    parser.add_argument(
        "--deterministic", action="store_true", default=argparse.SUPPRESS, help="omit the json timestamp"
    )
    parser.add_argument("--output", default=argparse.SUPPRESS, help="write the table to this file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hiddenbasis",
        description="Symmetric functions of qubits after an unknown local unitary and qubit permutation.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    _common(parser)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, func, help: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help)
        _common(p)
        p.set_defaults(func=func)
        return p

    p = add("dist", cmd_dist, "outcome distribution Pr[l | k]")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)

    p = add("dims", cmd_dims, "two-row irrep dimensions with hook-length cross-check")
    p.add_argument("--n", type=int, required=True)

    p = add("char", cmd_char, "symmetric-group character value")
    p.add_argument("--lambda", dest="lam", type=parse_partition, required=True)
    p.add_argument("--rho", type=parse_partition, required=True)

    p = add("bounds", cmd_bounds, "l1 distances and distinguishing bounds per k")
    p.add_argument("--n", type=int, required=True)

    p = add("verify", cmd_verify, "run the brute-force oracle suite")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--level", choices=LEVELS, default="projector")

    p = add("strategy", cmd_strategy, "optimal inference strategy")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--objective", choices=("worst-case", "bayes"), default="worst-case")
    p.add_argument("--prior", help="CSV file of (k, weight) rows for --objective bayes")

    p = add("threshold", cmd_threshold, "two-sided threshold test Th_t")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--t", type=int, required=True)

    p = add("parity", cmd_parity, "two-sided parity test")
    p.add_argument("--n", type=int, required=True)

    p = add("simulate", cmd_simulate, "Monte Carlo reproduction (all k when --k is omitted)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--task", choices=("weight", "threshold", "parity"), default="weight")
    p.add_argument("--t", type=int, help="threshold for --task threshold")
    p.add_argument("--trials", type=int)
    p.add_argument("--mode", choices=("exact", "exact-sampled", "statevector"), default="exact")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    fmt = getattr(args, "format", None) or os.environ.get(FORMAT_ENV, "pretty")
    if fmt not in FORMATS:
        print(f"hiddenbasis: error: {FORMAT_ENV}={fmt!r} is not one of {FORMATS}", file=sys.stderr)
        return 2
    args.seed = getattr(args, "seed", 0)
    deterministic = getattr(args, "deterministic", False)
    args.failed = False
    try:
        rows = args.func(args)
    except (UsageError, DegenerateFunctionError, ValueError) as exc:
        print(f"hiddenbasis {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except MemoryError as exc:
        print(f"hiddenbasis {args.command}: error: {exc}", file=sys.stderr)
        return 2

    meta: dict[str, Any] = {
        "tool": "hiddenbasis",
        "version": __version__,
        "command": args.command,
        "argv": list(sys.argv[1:] if argv is None else argv),
        "seed": args.seed,
    }
    if not deterministic:
        meta["timestamp"] = datetime.now(timezone.utc).isoformat()
    text = render(rows, fmt, meta)
    out = getattr(args, "output", None)
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.failed:
        print(f"hiddenbasis {args.command}: verification failed", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
