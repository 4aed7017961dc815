"""Command-line front end: ``size``, ``coverage``, ``candidates`` and ``verify``.

Exit codes: 0 success, 2 invalid input, 3 infeasible or unreachable,
4 verification failures.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from fractions import Fraction

from .candidates import MixedPreconditionError, candidate_set, candidate_set_mixed
from .coverage import ErrorCriterion, PopulationFrame, acceptance_window, coverage
from .oracle import TIERS, run_verification
from .rational import decimal_approx, format_ratio, parse_ratio
from .sizing import (
    ACCELERATED,
    ASCENDING,
    InfeasibleError,
    SizingRequest,
    UnreachableError,
    minimum_sample_size,
)

SCHEMA_VERSION = "1"
EXIT_OK, EXIT_INVALID, EXIT_INFEASIBLE, EXIT_VERIFY = 0, 2, 3, 4

_KINDS = {"abs": "absolute", "rel": "relative", "mixed": "mixed"}


class InputError(ValueError):
    pass


def _ratio(text):
    try:
        return parse_ratio(text)
    except (TypeError, ValueError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _int_list(text):
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _jsonable(x):
    if isinstance(x, Fraction):
        return format_ratio(x)
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def _exact(x: Fraction) -> dict:
    return {"exact": format_ratio(x), "decimal": decimal_approx(x)}


def _frame(args):
    N = args.population
    L = 0 if args.lower is None else args.lower
    U = N if args.upper is None else args.upper
    if N < 1:
        raise InputError("--population must be >= 1")
    if not 0 <= L <= N:
        raise InputError(f"--lower must lie in [0, {N}], got {L}")
    if not L <= U <= N:
        raise InputError(f"--upper must lie in [{L}, {N}], got {U}")
    return PopulationFrame(N, L, U)


def _criterion(args):
    kind = args.criterion
    try:
        if kind == "mixed":
            if args.eps_abs is None or args.eps_rel is None:
                raise InputError("--criterion mixed needs --eps-abs and --eps-rel")
            try:
                return ErrorCriterion.mixed(args.eps_abs, args.eps_rel)
            except ValueError as exc:
                raise InputError(f"--eps-abs/--eps-rel: {exc}") from None
        if args.eps is None:
            raise InputError(f"--criterion {kind} needs --eps")
        return ErrorCriterion(_KINDS[kind], eps=args.eps)
    except InputError:
        raise
    except ValueError as exc:
        raise InputError(f"--eps: {exc}") from None


def _sample(args, N):
    if args.sample is None:
        raise InputError("--sample is required")
    if not 1 <= args.sample <= N:
        raise InputError(f"--sample must lie in [1, {N}], got {args.sample}")
    return args.sample


def _emit(doc, fmt, out, table=None):
    if fmt == "json" or table is None:
        out.write(json.dumps(_jsonable(doc), indent=2) + "\n")
        return
    header, rows = table
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
        out.write(buf.getvalue())
        return
    widths = [max(len(str(c)) for c in col) for col in zip(header, *rows)]
    for r in [header, *rows]:
        out.write("  ".join(str(c).rjust(w) for c, w in zip(r, widths)).rstrip() + "\n")


def cmd_size(args, out):
    frame = _frame(args)
    crit = _criterion(args)
    if args.delta is None:
        raise InputError("--delta is required")
    if not 0 < args.delta < 1:
        raise InputError(f"--delta must lie strictly inside (0, 1), got {args.delta}")
    req = SizingRequest(frame, crit, args.delta, args.search)
    t0 = time.perf_counter()
    res = minimum_sample_size(req)
    elapsed = time.perf_counter() - t0
    doc = {
        "schema_version": SCHEMA_VERSION,
        "command": "size",
        "request": {
            "population": frame.N,
            "lower": frame.L,
            "upper": frame.U,
            "criterion": crit.describe(),
            "delta": req.delta,
            "search": req.search_mode,
        },
        "result": {
            "n_min": res.n_min,
            "worst_M": res.worst_M,
            "min_coverage": _exact(res.min_coverage),
            "coverage_evaluations": res.coverage_evaluations,
            "candidates_at_n_min": res.candidates_at_n_min,
        },
        "timing": {"seconds": round(elapsed, 6)},
    }
    table = (
        ["n_min", "worst_M", "min_coverage", "decimal", "coverage_evaluations", "candidates_at_n_min"],
        [[res.n_min, res.worst_M, format_ratio(res.min_coverage), decimal_approx(res.min_coverage),
          res.coverage_evaluations, res.candidates_at_n_min]],
    )
    _emit(doc, args.format, out, table)
    return EXIT_OK


def cmd_coverage(args, out):
    N = args.population
    if N is None or N < 1:
        raise InputError("--population must be >= 1")
    n = _sample(args, N)
    crit = _criterion(args)
    if args.m is not None:
        Ms = args.m
        bad = [M for M in Ms if not 0 <= M <= N]
        if bad:
            raise InputError(f"--m values outside [0, {N}]: {bad}")
    else:
        frame = _frame(args)
        Ms = list(frame)
    rows = []
    for M in Ms:
        g, h = acceptance_window(n, M, N, crit)
        c = coverage(n, M, N, crit)
        rows.append({"M": M, "g": g, "h": h, "coverage": format_ratio(c), "decimal": decimal_approx(c)})
    doc = {
        "schema_version": SCHEMA_VERSION,
        "command": "coverage",
        "request": {"population": N, "sample": n, "criterion": crit.describe()},
        "rows": rows,
    }
    table = (["M", "g", "h", "coverage", "decimal"], [[r[k] for k in ("M", "g", "h", "coverage", "decimal")] for r in rows])
    _emit(doc, args.format, out, table)
    return EXIT_OK


def cmd_candidates(args, out, err):
    frame = _frame(args)
    n = _sample(args, frame.N)
    crit = _criterion(args)
    if crit.kind == "mixed":
        try:
            candidate_set_mixed(frame, n, crit.eps_a, crit.eps_r)
        except MixedPreconditionError as exc:
            err.write(f"warning: {exc}\n")
    cs = candidate_set(frame, n, crit)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "command": "candidates",
        "request": {"population": frame.N, "lower": frame.L, "upper": frame.U, "sample": n,
                    "criterion": crit.describe()},
        "members": [{"M": M, "provenance": cs.provenance[M]} for M in cs.members],
        "count": len(cs),
        "bound": cs.bound,
        "within_bound": cs.within_bound(),
        "fallback": cs.note,
    }
    table = (["M", "provenance"], [[M, cs.provenance[M]] for M in cs.members])
    _emit(doc, args.format, out, table)
    return EXIT_OK


def cmd_verify(args, out, err):
    workers = args.threads or os.cpu_count() or 1
    t0 = time.perf_counter()
    rep = run_verification(args.tier, args.seed, workers)
    err.write(f"verify: tier={args.tier} instances={rep.instances_checked} "
              f"failures={len(rep.failures)} elapsed={time.perf_counter() - t0:.2f}s\n")
    doc = {"schema_version": SCHEMA_VERSION, "command": "verify", "tier": args.tier, "seed": args.seed,
           **rep.summary()}
    if args.format == "human":
        for line in rep.lines():
            out.write(line + "\n")
        out.write(f"{'PASS' if rep.passed else 'FAIL'} {rep.instances_checked} instances\n")
    else:
        out.write(json.dumps(doc, indent=2) + "\n")
    return EXIT_OK if rep.passed else EXIT_VERIFY


def build_parser():
    p = argparse.ArgumentParser(prog="exactsize", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, sample=False):
        sp.add_argument("--population", type=int, required=True, metavar="N")
        sp.add_argument("--lower", type=int, metavar="L")
        sp.add_argument("--upper", type=int, metavar="U")
        if sample:
            sp.add_argument("--sample", type=int, metavar="n")
        sp.add_argument("--criterion", choices=sorted(_KINDS), required=True)
        sp.add_argument("--eps", type=_ratio, metavar="R")
        sp.add_argument("--eps-abs", type=_ratio, metavar="R")
        sp.add_argument("--eps-rel", type=_ratio, metavar="R")
        sp.add_argument("--format", choices=("json", "csv", "human"), default="json")
        sp.add_argument("--threads", type=int, default=0, metavar="K")

    sp = sub.add_parser("size", help="minimum sample size")
    common(sp)
    sp.add_argument("--delta", type=_ratio, metavar="R")
    sp.add_argument("--search", choices=(ASCENDING, ACCELERATED), default=ASCENDING)

    sp = sub.add_parser("coverage", help="exact coverage for a list or range of M")
    common(sp, sample=True)
    sp.add_argument("--m", type=_int_list, metavar="M1,M2,...", help="explicit M values instead of [L, U]")

    sp = sub.add_parser("candidates", help="candidate set for one sample size")
    common(sp, sample=True)

    sp = sub.add_parser("verify", help="run the oracle checks")
    sp.add_argument("--tier", choices=sorted(TIERS), default="fast")
    sp.add_argument("--seed", type=int, default=0, metavar="S")
    sp.add_argument("--format", choices=("json", "human"), default="json")
    sp.add_argument("--threads", type=int, default=0, metavar="K", help="worker processes, 0 = one per CPU")
    return p


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "size":
            return cmd_size(args, out)
        if args.command == "coverage":
            return cmd_coverage(args, out)
        if args.command == "candidates":
            return cmd_candidates(args, out, err)
        return cmd_verify(args, out, err)
    except InputError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INVALID
    except InfeasibleError as exc:
        err.write(json.dumps({"error": "infeasible", "message": str(exc), "witness_M": exc.witness_M}) + "\n")
        return EXIT_INFEASIBLE
    except UnreachableError as exc:
        err.write(json.dumps({"error": "unreachable", "message": str(exc)}) + "\n")
        return EXIT_INFEASIBLE


if __name__ == "__main__":
    sys.exit(main())
