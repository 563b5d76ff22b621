"""Command-line entry point.

Exit codes: 0 success, 1 usage or input error (also a rejected ``verify``),
2 when ``solve`` ends stuck or ``search-stuck`` finds a certificate.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import tempfile
from collections.abc import Sequence
from fractions import Fraction

from hypermatch import discounts as disc
from hypermatch.analysis import (
    BiUniformParams,
    biuniform_T,
    lemma_conditions,
    max_q,
    search_stuck,
)
from hypermatch.errors import HypermatchError, MalformedFile
from hypermatch.generators import GenSpec, generate
from hypermatch.io import (
    certificate_to_dict,
    dump_json,
    instance_to_dict,
    load_instance,
    outcome_from_dict,
    outcome_to_dict,
)
from hypermatch.rational import format_rational, parse_rational, round_decimal
from hypermatch.rational_lp import max_weight_basic_fractional_matching
from hypermatch.rounding import Stuck, find_matching, verify_outcome
from hypermatch.sampling import check_inclusion_bound

log = logging.getLogger("hypermatch")

EXIT_OK, EXIT_INPUT, EXIT_STUCK = 0, 1, 2


class UsageError(Exception):
    pass


def _write(text: str, path: str | None) -> None:
    """Write to stdout, or atomically to ``path``."""
    if path is None:
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise


def _rational_arg(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _profile(inst, schedule_text: str) -> disc.DiscountProfile:
    schedule = disc.parse_schedule(schedule_text, rank=inst.hypergraph.rank)
    return disc.make_profile(inst.hypergraph, schedule)


def cmd_gen(args: argparse.Namespace) -> int:
    params = {
        "m": args.m,
        "k": args.k,
        "l": args.l,
        "n": args.n,
        "p": args.order,
        "size_min": args.size_min,
        "size_max": args.size_max,
        "m_k": args.m_k,
        "m_l": args.m_l,
    }
    try:
        inst = generate(GenSpec(args.kind, {k: v for k, v in params.items() if v is not None}, args.seed))
    except KeyError as exc:
        raise UsageError(f"--kind {args.kind} needs --{exc.args[0].replace('_', '-')}") from exc
    _write(dump_json(instance_to_dict(inst)), args.out)
    return EXIT_OK


def cmd_solve(args: argparse.Namespace) -> int:
    inst = load_instance(args.instance)
    inst.require_nonnegative()
    g = _profile(inst, args.schedule)
    outcome = find_matching(inst, g)
    body = outcome_to_dict(outcome, g, g.schedule_name, with_trace=False)
    if args.trace:
        _write(dump_json(outcome_to_dict(outcome, with_trace=True)["trace"]), args.trace)
    _write(dump_json(body), args.out)
    return EXIT_STUCK if isinstance(outcome, Stuck) else EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    inst = load_instance(args.instance)
    try:
        with open(args.outcome) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise MalformedFile(f"cannot read outcome {args.outcome}: {exc}") from exc
    if isinstance(data, dict) and "found" in data and "status" not in data:
        # search-stuck output
        if not data["found"]:
            raise UsageError("search-stuck output holds no certificate to verify")
        data = {**data, "status": "error"}
    outcome = outcome_from_dict(data)
    schedule = args.schedule or data.get("schedule")
    if schedule is None and "discounts" not in data:
        raise UsageError("outcome names no schedule; pass --schedule")
    if schedule is not None:
        g = list(_profile(inst, schedule))
        if "discounts" in data and [parse_rational(v) for v in data["discounts"]] != g:
            log.info("recorded discounts disagree with schedule %s", schedule)
            print(json.dumps({"valid": False, "reason": "discounts mismatch"}))
            return EXIT_INPUT
    else:
        g = [parse_rational(v) for v in data["discounts"]]
    ok = verify_outcome(inst, g, outcome)
    print(json.dumps({"valid": ok}))
    return EXIT_OK if ok else EXIT_INPUT


def cmd_sample(args: argparse.Namespace) -> int:
    inst = load_instance(args.instance)
    x = max_weight_basic_fractional_matching(inst).x
    lines = ["edge\tsize\tx\texact\tbound\tbound_holds\tfrequency\tz"]
    for r in check_inclusion_bound(inst.hypergraph, x, args.samples, args.seed):
        lines.append(
            "\t".join(
                [
                    str(r.edge),
                    str(len(inst.hypergraph.edges[r.edge])),
                    format_rational(r.x),
                    format_rational(r.exact),
                    format_rational(r.bound),
                    str(r.bound_holds).lower(),
                    f"{r.frequency:.6f}",
                    f"{r.z:.3f}",
                ]
            )
        )
    _write("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def discount_table(schedule: str, ks: Sequence[int]) -> str:
    """TSV rows of exact and 4-place values; ``all`` gives the comparison table."""
    if schedule == "all":
        header = ["k", "baseline", "baseline_4dp", "hstar", "hstar_4dp", "hinf", "hinf_4dp", "htilde", "htilde_4dp"]
        lines = ["\t".join(header)]
        for k in ks:
            b, hs, ht = disc.baseline(k), disc.h_star(k), disc.h_tilde_inf(k)
            hi = disc.h_inf_float(k)
            hi_text = disc.mpmath.nstr(hi, 30, strip_zeros=False)
            lines.append(
                "\t".join(
                    [
                        str(k),
                        format_rational(b),
                        round_decimal(b),
                        format_rational(hs),
                        round_decimal(hs),
                        hi_text,
                        round_decimal(disc.mpmath.nstr(hi, 40)),
                        format_rational(ht),
                        round_decimal(ht),
                    ]
                )
            )
        return "\n".join(lines) + "\n"
    sched = disc.parse_schedule(schedule, rank=max(ks))
    lines = [f"k\t{sched.name}\t{sched.name}_4dp"]
    for k in ks:
        v = sched(k)
        lines.append(f"{k}\t{format_rational(v)}\t{round_decimal(v)}")
    return "\n".join(lines) + "\n"


def cmd_discounts(args: argparse.Namespace) -> int:
    if args.ks:
        ks = [int(t) for t in args.ks.split(",") if t.strip()]
    else:
        ks = list(range(2, args.kmax + 1))
    if not ks or min(ks) < 2:
        raise UsageError("sizes must be >= 2")
    _write(discount_table(args.schedule, ks), args.out)
    return EXIT_OK


def cmd_analyze_biuniform(args: argparse.Namespace) -> int:
    step_fraction = Fraction(1, 1000)
    if args.maximize_q:
        res = max_q(args.k, args.l, args.p, args.mode, args.tol, step_fraction)
        q = res.q
        extra = {"maximized": True, "monotone": res.monotone, "evaluations": res.evaluations}
    else:
        if args.q is None:
            raise UsageError("give --q or --maximize-q")
        q, extra = args.q, {"maximized": False}
    params = BiUniformParams(args.k, args.l, args.p, q)
    T = biuniform_T(params)
    step = args.step if args.step is not None else T * step_fraction
    report = lemma_conditions(params, args.mode, step if args.mode == "grid" else None)
    body = {
        "k": args.k,
        "l": args.l,
        "p": format_rational(args.p),
        "q": format_rational(q),
        "q_decimal": round_decimal(q, 6),
        "T": format_rational(T),
        "mode": args.mode,
        "p_within_hstar": report.p_ok,
        "integer_checks": {format_rational(n): ok for n, ok in report.integer_checks},
        "grid_points": len(report.grid_checks),
        "failures": [format_rational(n) for n in report.failures],
        "midpoint_failures": [format_rational(n) for n in report.midpoint_failures],
        "skipped_T": report.skipped_T,
        "verdict": report.verdict,
        **extra,
    }
    _write(dump_json(body), args.out)
    return EXIT_OK


def cmd_search_stuck(args: argparse.Namespace) -> int:
    inst = load_instance(args.instance)
    g = _profile(inst, args.schedule)
    cert = search_stuck(inst.hypergraph, g)
    body = {"schedule": g.schedule_name, "found": cert is not None}
    if cert is not None:
        body["certificate"] = certificate_to_dict(cert)
    _write(dump_json(body), args.out)
    return EXIT_STUCK if cert is not None else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hypermatch", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="count", default=0)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate an instance")
    p.add_argument("--kind", required=True,
                   choices=["fano", "triangle", "path", "disjoint", "projective_plane", "random", "biuniform"])
    p.add_argument("--seed", type=int, default=0)
    for name in ("n", "m", "k", "l", "order", "size-min", "size-max", "m-k", "m-l"):
        p.add_argument(f"--{name}", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("solve", help="run iterated rounding")
    p.add_argument("--instance", required=True)
    p.add_argument("--schedule", required=True)
    p.add_argument("--trace")
    p.add_argument("--out")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="re-check a solve outcome")
    p.add_argument("--instance", required=True)
    p.add_argument("--outcome", required=True)
    p.add_argument("--schedule")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sample", help="exponential-clock sampling report")
    p.add_argument("--instance", required=True)
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("discounts", help="tabulate discount schedules")
    p.add_argument("--schedule", default="all")
    p.add_argument("--kmax", type=int, default=10)
    p.add_argument("--ks", help="comma-separated sizes, overrides --kmax")
    p.add_argument("--out")
    p.set_defaults(func=cmd_discounts)

    p = sub.add_parser("analyze", help="bi-uniform analysis")
    asub = p.add_subparsers(dest="analysis", required=True)
    b = asub.add_parser("biuniform")
    b.add_argument("--k", type=int, required=True)
    b.add_argument("--l", type=int, required=True)
    b.add_argument("--p", type=_rational_arg, required=True)
    group = b.add_mutually_exclusive_group()
    group.add_argument("--q", type=_rational_arg)
    group.add_argument("--maximize-q", action="store_true")
    b.add_argument("--mode", choices=["integer", "grid"], default="integer")
    b.add_argument("--step", type=_rational_arg)
    b.add_argument("--tol", type=_rational_arg, default=Fraction(1, 10**6))
    b.add_argument("--out")
    b.set_defaults(func=cmd_analyze_biuniform)

    p = sub.add_parser("search-stuck", help="exhaustive stuck-certificate search")
    p.add_argument("--instance", required=True)
    p.add_argument("--schedule", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_search_stuck)
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2), format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (UsageError, HypermatchError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
