"""Command-line front end.  Every command prints one JSON report to stdout.

Exit codes: 0 success, 1 an invariant was violated, 2 bad usage or input.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from fractions import Fraction

from . import __version__
from .convex import PointSequence, PreconditionError, default_workers, enumerate_tverberg_partitions
from .kernel import GenericityError
from .pointio import load_points, points_to_csv
from .predicates import (
    SequenceFamily,
    StatementError,
    StatementSyntaxError,
    convex_position_4,
    eval_statement,
    moment_curve_sequence,
    parity_cross_check,
    parse_statement,
    random_homogeneous_sequence,
    scan_unavoidability,
    sixpt,
    statement_predicate,
    tverberg_predicate,
)
from .stair import InvariantViolation, enumerate_stair_tverberg, stair_count
from .stretched import (
    check_transference,
    diagonal_census_report,
    diagonal_grid_points,
    random_far_points,
    sierksma_experiment,
)
from .type_algebra import (
    TypeParseError,
    colorful_count,
    enumerate_333_intersecting,
    enumerate_colorful,
    enumerate_types,
    has_consecutive_pair,
    is_colorful,
    mirror,
    plane_side_predicates_3334,
    t_param,
    zigzag,
)

SCHEMA_VERSION = 1


class UsageError(ValueError):
    pass


def _fmt_point(p) -> list[str]:
    return [str(Fraction(c)) for c in p]


def _parse_sizes(text: str | None):
    if text is None:
        return None
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"--sizes expects comma-separated integers, got {text!r}")


def _check_dr(d: int, r: int):
    if d < 1 or r < 2:
        raise UsageError("need d >= 1 and r >= 2")


def cmd_types(args) -> tuple[dict, bool]:
    _check_dr(args.d, args.r)
    sizes = _parse_sizes(args.sizes)
    if args.zigzag:
        types = [zigzag(args.d, args.r).encoding()]
    elif args.colorful:
        types = enumerate_colorful(args.d, args.r, sizes)
    else:
        types = [t for t in enumerate_types(args.d, args.r)
                 if sizes is None or sorted(t.count(s) for s in set(t)) == sorted(sizes)]
    if args.no_consecutive:
        types = [t for t in types if not has_consecutive_pair(t)]
    result = {"count": len(types), "types": types[:args.limit] if args.limit else types}
    if args.classify:
        result["classification"] = {
            t: {"colorful": is_colorful(t), "consecutive_pair": has_consecutive_pair(t), "mirror": mirror(t),
                "sizes": sorted(t.count(s) for s in set(t))}
            for t in result["types"]
        }
    if args.colorful and sizes is None:
        result["expected_count"] = colorful_count(args.d, args.r)
        return result, len(types) == colorful_count(args.d, args.r)
    return result, True


def cmd_appendix(args) -> tuple[dict, bool]:
    census = enumerate_333_intersecting()
    preds = plane_side_predicates_3334()
    result = {
        "census_333": census,
        "predicates_3334": {"count": len(preds), "predicates": preds,
                            "colorful_3334_types": len(enumerate_colorful(3, 4, (3, 3, 3, 4)))},
    }
    return result, census["residual_matches_listed_with_mirrors"]


def cmd_tverberg(args) -> tuple[dict, bool]:
    seq = load_points(args.points)
    d = seq.dim
    if len(seq) != t_param(d, args.r):
        raise UsageError(f"need T({d},{args.r}) = {t_param(d, args.r)} points, got {len(seq)}")
    certs = enumerate_tverberg_partitions(seq, args.r, workers=args.workers)
    ok = all(c.check(seq) for c in certs)
    result = {
        "d": d,
        "r": args.r,
        "count": len(certs),
        "lower_bound": colorful_count(d, args.r),
        "partitions": [{"type": c.type.encoding(), "parts": str(c.type), "point": _fmt_point(c.tverberg_point)}
                       for c in certs],
        "certificates_verified": ok,
    }
    return result, ok


def cmd_stair(args) -> tuple[dict, bool]:
    seq = load_points(args.points)
    res = enumerate_stair_tverberg(seq.points, args.r, method=args.method)
    d = seq.dim
    parts = [[sorted(p) for p in part] for part in res.partitions]
    result = {
        "d": d,
        "r": args.r,
        "method": args.method,
        "count": len(parts),
        "expected_count": stair_count(d, args.r),
        "partitions": parts,
        "common_point": _fmt_point(res.common_point) if res.common_point is not None else None,
    }
    return result, len(parts) == stair_count(d, args.r)


def cmd_grid(args) -> tuple[dict, bool]:
    _check_dr(args.d, args.r)
    n = t_param(args.d, args.r)
    if args.diagonal:
        report = check_transference(diagonal_grid_points(args.d, n), args.r)
        census = diagonal_census_report(args.d, args.r, workers=args.workers)
        ok = not report["disagreements"] and census["equal"]
        return {"mode": "diagonal", "transference": report, "census": census}, ok
    rng = random.Random(args.seed)
    runs = []
    for _ in range(args.trials):
        rep = check_transference(random_far_points(args.d, args.r, rng, args.m), args.r)
        runs.append(rep)
    disagreements = sum(len(rep["disagreements"]) for rep in runs)
    counts = sorted({len(rep["euclidean_positive"]) for rep in runs})
    sierksma = sierksma_experiment(args.d, args.r, args.trials, args.seed, args.m, workers=args.workers)
    result = {
        "mode": "random",
        "trials": args.trials,
        "disagreements": disagreements,
        "euclidean_counts": counts,
        "expected_count": colorful_count(args.d, args.r),
        "runs": runs if args.verbose else [],
        "sierksma": sierksma,
    }
    ok = disagreements == 0 and counts == [colorful_count(args.d, args.r)] and sierksma["constant"]
    return result, ok


def _family_sequence(args):
    if args.points:
        return load_points(args.points)
    if args.d is None or args.n is None:
        raise UsageError("give --points, or --family with --d and --n")
    if args.family == "moment-curve":
        return moment_curve_sequence(args.d, args.n)
    if args.family == "perturbed-convex":
        return random_homogeneous_sequence(args.d, args.n, args.seed)
    return SequenceFamily("stretched-diagonal", args.d).generate(args.n, None)


def cmd_eval(args) -> tuple[dict, bool]:
    seq = _family_sequence(args)
    result = {"d": seq.dim, "n": len(seq)}
    if args.statement:
        s = parse_statement(args.statement, seq.dim)
        result["statement"] = str(s)
        result["value"] = eval_statement(seq, s)
    ok = True
    if args.parity_suite:
        check = parity_cross_check(seq)
        result["parity"] = check
        ok = not check["mismatches"]
    if not args.statement and not args.parity_suite:
        raise UsageError("nothing to evaluate: give a statement or --parity-suite")
    return result, ok


def _predicate(text: str, d: int):
    negate = text.startswith("not:")
    body = text[4:] if negate else text
    if body == "sixpt":
        pred = sixpt
    elif body == "convex4":
        pred = convex_position_4
    elif body.startswith("stmt:"):
        pred = statement_predicate(body[5:], d)
    elif body.startswith("tv:"):
        pred = tverberg_predicate(body[3:], d)
    else:
        raise UsageError(f"unknown predicate {text!r}; use sixpt, convex4, stmt:<statement>, tv:<encoding>, "
                         "optionally prefixed with not:")
    return pred.negate() if negate else pred


def cmd_scan(args) -> tuple[dict, bool]:
    pred = _predicate(args.predicate, args.d)
    family = SequenceFamily(args.family, args.d)
    report = scan_unavoidability(pred, family, args.max_n, args.budget, args.seed)
    if report["counterexample"] is not None:
        seq = PointSequence(tuple(tuple(Fraction(c) for c in p) for p in report["counterexample"]))
        report["counterexample_csv"] = points_to_csv(seq)
    return report, True


COMMANDS = {
    "types": cmd_types,
    "appendix": cmd_appendix,
    "tverberg": cmd_tverberg,
    "stair": cmd_stair,
    "grid": cmd_grid,
    "eval": cmd_eval,
    "scan": cmd_scan,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tverberg-lab", description=__doc__.splitlines()[0])
    parser.add_argument("--pretty", action="store_true", help="human-readable output instead of JSON")
    parser.add_argument("--no-timing", action="store_true", help="omit wall-clock timing from the report")
    parser.add_argument("--workers", type=int, default=None,
                        help="worker processes (default: $TVERBERG_LAB_WORKERS or 1)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("types", help="enumerate and classify Tverberg types")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--colorful", action="store_true")
    p.add_argument("--zigzag", action="store_true")
    p.add_argument("--sizes", help="part sizes, e.g. 3,3,3,4")
    p.add_argument("--no-consecutive", action="store_true", help="drop types with two adjacent equal symbols")
    p.add_argument("--classify", action="store_true")
    p.add_argument("--limit", type=int, default=0, help="list at most this many types (count is unaffected)")

    sub.add_parser("appendix", help="the (3,3,3) census and the (3,3,3,4) predicate strings")

    p = sub.add_parser("tverberg", help="all Tverberg partitions of a point file")
    p.add_argument("points")
    p.add_argument("--r", type=int, required=True)

    p = sub.add_parser("stair", help="stair-Tverberg partitions of a point file")
    p.add_argument("points")
    p.add_argument("--r", type=int, required=True)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--oracle", dest="method", action="store_const", const="bruteforce")
    g.add_argument("--recursive", dest="method", action="store_const", const="recursive")
    g.add_argument("--both", dest="method", action="store_const", const="both")
    p.set_defaults(method="recursive")

    p = sub.add_parser("grid", help="stretched-grid transference and counting experiments")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--diagonal", action="store_true")
    g.add_argument("--random", action="store_true")
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--m", type=int, default=None, help="grid side (default: twice the minimum)")
    p.add_argument("--verbose", action="store_true", help="include every per-trial report")

    p = sub.add_parser("eval", help="evaluate a separation statement")
    p.add_argument("statement", nargs="?")
    p.add_argument("--points")
    p.add_argument("--family", choices=SequenceFamily.KINDS, default="moment-curve")
    p.add_argument("--d", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--parity-suite", action="store_true", help="cross-check the parity rule on every point-only statement")

    p = sub.add_parser("scan", help="search a sequence family for sequences avoiding a predicate")
    p.add_argument("predicate", help="sixpt | convex4 | stmt:<statement> | tv:<encoding>, optionally not:<...>")
    p.add_argument("--family", choices=SequenceFamily.KINDS, default="perturbed-convex")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--budget", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    return parser


def _parameters(args) -> dict:
    skip = {"command", "pretty", "no_timing", "workers"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def _pretty(obj, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        lines = []
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.append(_pretty(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {v}")
        return "\n".join(lines)
    if isinstance(obj, list):
        if all(not isinstance(x, (dict, list)) for x in obj):
            return "\n".join(f"{pad}{x}" for x in obj)
        return "\n".join(_pretty(x, indent) for x in obj)
    return f"{pad}{obj}"


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.workers is None:
        args.workers = default_workers()
    start = time.perf_counter()
    try:
        result, ok = COMMANDS[args.command](args)
    except (UsageError, TypeParseError, StatementSyntaxError, StatementError, PreconditionError,
            GenericityError, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InvariantViolation as exc:
        result, ok = {"invariant_violation": str(exc)}, False
    report = {
        "schema_version": SCHEMA_VERSION,
        "artifact_version": __version__,
        "command": args.command,
        "parameters": _parameters(args),
        "seed": getattr(args, "seed", None),
        "status": "ok" if ok else "invariant-violation",
        "result": result,
    }
    if not args.no_timing:
        report["timing"] = {"seconds": round(time.perf_counter() - start, 3)}
    if args.pretty:
        print(_pretty(report))
    else:
        print(json.dumps(report, sort_keys=True))
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
