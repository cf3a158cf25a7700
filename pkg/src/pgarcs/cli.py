"""Command-line entry point: ``pgarcs <subcommand> ...``.

Exit status: 0 success, 1 verification failure, 2 usage or input error.
"""
from __future__ import annotations

import argparse
import os
import secrets
import sys

from . import kernel
from .arc import ArcError, read_arc, verify_arc, verify_complete, write_arc
from .constructors import (
    EXHAUSTIVE_MAX_Q,
    PRNG_ID,
    Algorithm,
    exhaustive_min,
    fop_complete,
    make_lex_order,
    random_complete,
)
from .field import is_prime
from .geometry import GeometryError, PlaneParams, point_from_index
from .singer import singer_is_collineation_sample, singer_point_order
from .survey import (
    MAIN,
    ExperimentConfig,
    ReferenceTable,
    SurveyError,
    compare_to_reference,
    emit_outputs,
    load_reference,
    primes_in_range,
    ratio_stats,
    run_survey,
    summarize,
    trial_seed,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _prime(text: str) -> int:
    try:
        q = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if not is_prime(q):
        raise argparse.ArgumentTypeError(f"q must be prime, got {q}")
    return q


def _seed(text: str) -> int:
    s = int(text, 0)
    if not 0 <= s < 2**64:
        raise argparse.ArgumentTypeError("seed must be in [0, 2^64)")
    return s


def _fmt_points(plane, pts) -> str:
    return ",".join("({},{},{})".format(*point_from_index(plane, i)) for i in pts)


def cmd_random(args) -> int:
    plane = PlaneParams(args.q)
    seed = args.seed
    if seed is None:
        seed = secrets.randbits(64)
        print(f"seed={seed} (drawn from system entropy)")
    results = []
    for t in range(args.trials):
        s = seed if args.trials == 1 else trial_seed(seed, args.q, t)
        res = random_complete(plane, s)
        results.append(res)
        print(f"q={args.q} seed={s} size={res.size}")
        print(f"points: {_fmt_points(plane, res.points)}")
    if args.out:
        write_arc(args.out, args.q, results[-1].points)
    return EXIT_OK


def cmd_fop(args) -> int:
    plane = PlaneParams(args.q)
    if args.order == "lex":
        order = make_lex_order(plane)
    else:
        order = singer_point_order(plane).as_point_order()
    res = fop_complete(plane, order)
    print(f"q={args.q} order={args.order} size={res.size}")
    print(f"points: {_fmt_points(plane, res.points)}")
    if args.out:
        write_arc(args.out, args.q, res.points)
    return EXIT_OK


def cmd_survey(args) -> int:
    if args.lo > args.hi:
        raise UsageError(f"--from {args.lo} exceeds --to {args.hi}")
    algos = [Algorithm(a.strip().upper()) for a in args.algorithms.split(",") if a.strip()]
    qs = primes_in_range(max(args.lo, 2), args.hi)
    if not qs:
        raise UsageError(f"no primes in [{args.lo}, {args.hi}]")
    cfg = ExperimentConfig(qs, trials=args.trials, algorithms=algos, base_seed=args.seed, workers=args.workers)
    records = run_survey(cfg)
    summary = summarize(records, cfg)

    for a in algos:
        st = ratio_stats(records, args.lo, args.hi, a)
        print(f"{a}: {st.count} arcs, size/sqrt(q ln q) mean={st.mean:.4f} min={st.min:.4f} max={st.max:.4f}")
    print(f"bound {MAIN.D}*sqrt(q ln q) violations (q>5): {len(summary['bound_violations'])}")

    ref, label = None, None
    if args.ref:
        ref = load_reference(None if args.ref == "bundled" else args.ref)
        label = args.ref
    elif Algorithm.FOP_LEX in algos and Algorithm.RANDOM in algos:
        ref = ReferenceTable.from_records(records, Algorithm.FOP_LEX)
        label = "FOP_LEX (this run)"
    comparison = None
    if ref is not None:
        ours = [r for r in records if r.algorithm == str(Algorithm.RANDOM)] or records
        pairs, skipped = compare_to_reference(ours, ref)
        comparison = {"reference": label, "pairs": [{"q": q, "pct_diff": d} for q, d in pairs],
                      "skipped": sorted(set(skipped))}
        summary["comparison"] = comparison
        if pairs:
            mean = sum(d for _, d in pairs) / len(pairs)
            print(f"reference {label}: {len(pairs)} pairs, mean (ref - ours)/ref = {mean:.3f}%")
        if skipped:
            print(f"reference {label}: {len(set(skipped))} q values without reference rows")

    if args.out:
        written = emit_outputs(records, summary, args.out, include_timing=args.timing)
        for p in written:
            print(f"wrote {p}")
    return EXIT_OK


def cmd_verify(args) -> int:
    q, pts = read_arc(args.arc)
    plane = PlaneParams(q)
    is_arc = verify_arc(plane, pts)
    if not is_arc:
        print("arc: FAIL, complete: SKIPPED")
        return EXIT_FAIL
    complete = verify_complete(plane, pts)
    print(f"arc: OK, complete: {'OK' if complete else 'FAIL'}")
    return EXIT_OK if complete else EXIT_FAIL


def cmd_minimal(args) -> int:
    if args.q > EXHAUSTIVE_MAX_Q:
        raise UsageError(f"minimal supports q <= {EXHAUSTIVE_MAX_Q}, got {args.q}")
    plane = PlaneParams(args.q)
    res = exhaustive_min(plane, args.cap)
    if not res.found:
        print(f"q={args.q}: no complete arc within cap {args.cap}")
        return EXIT_FAIL
    print(f"q={args.q} minimum complete arc size={res.size}")
    print(f"witness: {_fmt_points(plane, res.witness)}")
    return EXIT_OK


def cmd_singer_check(args) -> int:
    plane = PlaneParams(args.q)
    so = singer_point_order(plane)
    order = so.as_point_order()
    bij = order.is_bijection(plane.n_points)
    coll = singer_is_collineation_sample(so, args.trials, seed=args.seed)
    res = fop_complete(plane, order)
    print(f"q={args.q} primitive cubic: {so.poly}")
    print(f"bijective: {'OK' if bij else 'FAIL'}")
    print(f"collineation sample ({args.trials}): {'OK' if coll else 'FAIL'}")
    print(f"FOP Singer arc: size={res.size}, verified")
    return EXIT_OK if bij and coll else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="pgarcs", description="Complete arcs in PG(2,q), q prime.")
    ap.add_argument("--version", action="version", version=f"%(prog)s (kernel: {kernel.BACKEND}, prng: {PRNG_ID})")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("random", help="random complete arc")
    p.add_argument("-q", type=_prime, required=True)
    p.add_argument("--seed", type=_seed)
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--out", help="write the (last) arc in q=.. n=.. pts=.. format")
    p.set_defaults(func=cmd_random)

    p = sub.add_parser("fop", help="fixed-order greedy arc")
    p.add_argument("-q", type=_prime, required=True)
    p.add_argument("--order", choices=("lex", "singer"), default="lex")
    p.add_argument("--out")
    p.set_defaults(func=cmd_fop)

    p = sub.add_parser("survey", help="batch run over a prime range")
    p.add_argument("--from", dest="lo", type=int, required=True)
    p.add_argument("--to", dest="hi", type=int, required=True)
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--seed", type=_seed, default=0)
    p.add_argument("--workers", type=int, default=int(os.environ.get("PGARCS_WORKERS", "1")))
    p.add_argument("--algorithms", default="RANDOM", help="comma list of RANDOM,FOP_LEX,FOP_SINGER")
    p.add_argument("--out", help="directory for trials.csv, summary.json, plot_*.dat")
    p.add_argument("--ref", help="reference CSV (q,size) or 'bundled' for the shipped random-arc table")
    p.add_argument("--timing", action="store_true", help="fill elapsed_ms (makes output run-dependent)")
    p.set_defaults(func=cmd_survey)

    p = sub.add_parser("verify", help="check an arc file with the slow oracles")
    p.add_argument("--arc", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("minimal", help="exhaustive smallest complete arc (q <= 11)")
    p.add_argument("-q", type=_prime, required=True)
    p.add_argument("--cap", type=int, default=None)
    p.set_defaults(func=cmd_minimal)

    p = sub.add_parser("singer-check", help="Singer order sanity checks")
    p.add_argument("-q", type=_prime, required=True)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_singer_check)
    return ap


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "trials", 1) is not None and getattr(args, "trials", 1) < 1:
        print("error: --trials must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, GeometryError, ArcError, SurveyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
