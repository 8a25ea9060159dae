"""Command-line entry point.

Exit codes: 0 success, 2 validation error, 3 budget exceeded.
``HYPERTREES_BUDGET`` and ``HYPERTREES_THREADS`` supply defaults; flags win.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import time
from pathlib import Path

from . import asymptotics as asy
from . import census, enumeration, sampling
from .combinatorics import DegreeSequence, parse_degrees, tree_shape
from .errors import DomainError, HypertreeError

DEFAULT_FORMAT = {"count-trees": "table", "tree-degree-count": "table", "compare": "csv"}


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    return int(raw) if raw else default


def _int_list(text: str) -> list[int]:
    return [int(p) for p in text.replace(",", " ").split()]


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--r", type=int, default=3, help="edge size (>= 3)")
    common.add_argument("--n", type=int, help="number of vertices")
    common.add_argument("--k", type=int, help="regular degree (with --n)")
    common.add_argument("--degrees", help="'1,2,3', '2^9', or @path to a file")
    common.add_argument("--samples", type=int, default=1000)
    common.add_argument("--seed", type=int, help="u64 seed; required whenever sampling")
    common.add_argument("--max-rejects", type=int, default=sampling.DEFAULT_MAX_REJECTS)
    common.add_argument("--threads", type=int, default=None)
    common.add_argument("--budget", type=int, default=None, help="census node budget")
    common.add_argument("--format", choices=("json", "csv", "table"), default=None)

    p = argparse.ArgumentParser(prog="hypertrees",
                                description="Spanning hypertrees in random uniform hypergraphs.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("count-trees", parents=[common], help="number of r-hypertrees on [n]")
    c.add_argument("--emit", choices=("trees",), help="also list every hypertree")

    c = sub.add_parser("tree-degree-count", parents=[common],
                       help="number of r-hypertrees with a given degree vector")
    c.add_argument("--x", required=True, help="degree vector of the hypertree")

    sub.add_parser("census", parents=[common], help="exact mean over all of H_r(k)")

    c = sub.add_parser("expected", parents=[common], help="mean spanning-hypertree count")
    c.add_argument("--exact", action="store_true")
    c.add_argument("--mc", action="store_true")
    c.add_argument("--asymptotic", action="store_true")

    c = sub.add_parser("probability", parents=[common],
                       help="probability that H_r(k) contains a hypertree with degrees x")
    c.add_argument("--x", required=True)

    c = sub.add_parser("moments", parents=[common], help="hypergeometric falling moments")
    c.add_argument("--a-max", type=int, default=2)

    c = sub.add_parser("sample", parents=[common], help="draw random hypergraphs or hypertrees")
    c.add_argument("--trees", action="store_true", help="uniform hypertrees on [n]")

    c = sub.add_parser("compare", parents=[common], help="CSV sweep of exact or MC values against the closed form")
    c.add_argument("--n-values", required=True, help="comma-separated vertex counts")
    return p


def _degrees(args) -> DegreeSequence:
    if args.n is not None:
        tree_shape(args.n, args.r)
    if args.degrees:
        text = args.degrees
        if text.startswith("@"):
            text = Path(text[1:]).read_text()
        k = parse_degrees(text)
        if args.n is not None and args.n != k.n:
            raise DomainError(f"--n {args.n} disagrees with {k.n} degrees")
        return k
    if args.n is not None and args.k is not None:
        return DegreeSequence((args.k,) * args.n)
    raise DomainError("give --degrees, or --n with --k")


def _need_seed(args) -> int:
    if args.seed is None:
        raise DomainError("--seed is required when sampling")
    if not 0 <= args.seed < 2**64:
        raise DomainError("--seed must be an unsigned 64-bit integer")
    return args.seed


def _asymptotic_json(k: DegreeSequence, r: int) -> dict:
    out = asy.theorem1_estimate(k, r).to_json()
    out["hypotheses"] = asy.hypotheses(k, r)
    return out


def _rational(q) -> dict:
    return {"num": str(q.numerator), "den": str(q.denominator)}


def cmd_count_trees(args, out):
    n, r = args.n, args.r
    if n is None:
        raise DomainError("--n is required")
    count = enumeration.count_hypertrees(n, r)
    if args.format == "json":
        out.write(json.dumps({"n": n, "r": r, "count": str(count)}) + "\n")
    else:
        out.write(f"{count}\n")
    if args.emit == "trees":
        for T in enumeration.enumerate_hypertrees(n, r):
            out.write(T.to_text())


def cmd_tree_degree_count(args, out):
    x = _int_list(args.x)
    count = enumeration.count_hypertrees_with_degrees(x, args.r)
    if args.format == "json":
        out.write(json.dumps({"x": x, "r": args.r, "count": str(count)}) + "\n")
    else:
        out.write(f"{count}\n")


def cmd_census(args, out):
    k = _degrees(args)
    res = census.exact_expected_spanning_hypertrees(k, args.r, budget=args.budget, workers=args.threads)
    _emit(args, out, res.to_json())


def cmd_expected(args, out):
    k = _degrees(args)
    tree_shape(k.n, args.r)
    modes = [m for m in ("exact", "mc", "asymptotic") if getattr(args, m)] or ["asymptotic"]
    report: dict = {"degrees": str(k), "r": args.r}
    for mode in modes:
        if mode == "exact":
            res = census.exact_expected_spanning_hypertrees(k, args.r, budget=args.budget,
                                                            workers=args.threads)
            report["exact"] = res.to_json()
        elif mode == "mc":
            est = sampling.mc_expected_spanning_hypertrees(
                k, args.r, args.samples, _need_seed(args), workers=args.threads,
                max_rejects=args.max_rejects)
            report["mc"] = est.to_json()
        else:
            report["asymptotic"] = _asymptotic_json(k, args.r)
    _emit(args, out, report)


def cmd_probability(args, out):
    k = _degrees(args)
    x = _int_list(args.x)
    est = asy.tree_probability_estimate(k, args.r, x)
    report = {"degrees": str(k), "r": args.r, "x": x, "asymptotic": est.to_json()}
    if all(xi <= ki for xi, ki in zip(x, k.degrees)):
        report["leading_factor"] = _rational(census.leading_factor(k, args.r, x, tree_shape(k.n, args.r).t))
    try:
        T = next(enumeration.enumerate_hypertrees(k.n, args.r, degrees=x))
        freq = census.census_containment_probability(k, args.r, T, budget=args.budget)
        report["census"] = {"tree": [list(e) for e in T.edges], **_rational(freq)}
    except HypertreeError as exc:
        if exc.exit_code != 3:
            raise
        report["census"] = None
    _emit(args, out, report)


def cmd_moments(args, out):
    k = _degrees(args)
    t = tree_shape(k.n, args.r).t
    rows = []
    for j in range(1, k.n + 1):
        for a in range(args.a_max + 1):
            m = asy.hypergeom_falling_moment(j, a, k, t)
            rows.append({"j": j, "a": a, **_rational(m)})
    report = {"degrees": str(k), "r": args.r, "t": t, "moments": rows,
              "expected_lambda": _rational(asy.expected_lambda_exact(k, args.r)),
              "lambda0": _rational(asy.lambda0(k, args.r, exact=True))}
    _emit(args, out, report)


def cmd_sample(args, out):
    seed = _need_seed(args)
    if args.trees:
        if args.n is None:
            raise DomainError("--n is required with --trees")
        for i in range(args.samples):
            out.write(sampling.sample_uniform_hypertree(args.n, args.r, sampling.stream(seed, i)).to_text())
        return
    k = _degrees(args)
    for i in range(args.samples):
        H = sampling.sample_simple_hypergraph(k, args.r, sampling.stream(seed, i),
                                              max_rejects=args.max_rejects)
        out.write(H.to_text())


def cmd_compare(args, out):
    if args.k is None:
        raise DomainError("--k is required for compare")
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "r", "k_spec", "method", "log10_value", "stderr_or_error_bound", "regime_ok", "seconds"])
    for n in _int_list(args.n_values):
        k = DegreeSequence((args.k,) * n)
        label = f"{args.k}^{n}"
        t0 = time.perf_counter()
        try:
            res = census.exact_expected_spanning_hypertrees(k, args.r, budget=args.budget,
                                                            workers=args.threads)
            method = "exact"
            log10 = math.log10(res.expectation) if res.expectation else float("-inf")
            err = 0.0
        except HypertreeError as exc:
            if exc.exit_code != 3:
                raise
            est = sampling.mc_expected_spanning_hypertrees(
                k, args.r, args.samples, _need_seed(args), workers=args.threads,
                max_rejects=args.max_rejects)
            method = "mc"
            log10 = math.log10(est.mean) if est.mean else float("-inf")
            err = est.stderr / (est.mean * math.log(10)) if est.mean else float("inf")
        w.writerow([n, args.r, label, method, f"{log10:.12g}", f"{err:.6g}", "", f"{time.perf_counter() - t0:.3f}"])
        t0 = time.perf_counter()
        th = asy.theorem1_estimate(k, args.r)
        w.writerow([n, args.r, label, "asymptotic", f"{th.value.log10_abs:.12g}",
                    f"{th.error_exponent_bound:.6g}", th.regime_ok, f"{time.perf_counter() - t0:.3f}"])
    out.write(buf.getvalue())


def _emit(args, out, report: dict) -> None:
    if args.format == "table":
        for key, val in report.items():
            out.write(f"{key}: {json.dumps(val) if isinstance(val, (dict, list)) else val}\n")
    elif args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        flat = _flatten(report)
        w.writerow(flat.keys())
        w.writerow(flat.values())
    else:
        out.write(json.dumps(report, indent=2) + "\n")


def _flatten(d: dict, prefix: str = "") -> dict:
    flat = {}
    for key, val in d.items():
        name = f"{prefix}{key}"
        if isinstance(val, dict):
            flat.update(_flatten(val, name + "."))
        else:
            flat[name] = json.dumps(val) if isinstance(val, list) else val
    return flat


HANDLERS = {
    "count-trees": cmd_count_trees,
    "tree-degree-count": cmd_tree_degree_count,
    "census": cmd_census,
    "expected": cmd_expected,
    "probability": cmd_probability,
    "moments": cmd_moments,
    "sample": cmd_sample,
    "compare": cmd_compare,
}


def run(argv: list[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    if args.budget is None:
        args.budget = _env_int("HYPERTREES_BUDGET", census.DEFAULT_BUDGET)
    if args.threads is None:
        args.threads = _env_int("HYPERTREES_THREADS", 1)
    if args.format is None:
        args.format = DEFAULT_FORMAT.get(args.command, "json")
    try:
        HANDLERS[args.command](args, out)
    except HypertreeError as exc:
        err.write(f"error [{exc.hypothesis}]: {exc}\n")
        return exc.exit_code
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
