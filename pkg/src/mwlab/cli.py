"""Command-line entry point.

Exit codes: 0 = ran cleanly, 1 = usage / input / IO error,
2 = a mathematical finding (violation, engine mismatch, failed identity).
"""

from __future__ import annotations

import argparse
import hashlib
import sys
from pathlib import Path

from . import bounds
from .catalog import (
    config_digest,
    family_spec_json,
    flatten,
    parse_any,
    parse_family_spec,
    write_report,
)
from .corpus import default_family_spec
from .errors import InvariantViolation, MwlabError
from .tutte import evaluate, max_ground_size, tutte_delcon, tutte_from_whitney, whitney_table
from .verify import audit, hypothesis_profile, mw_check, sweep

EXIT_OK, EXIT_USAGE, EXIT_FINDING = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _emit(fields, digest, out):
    text = write_report(fields, digest=digest)
    if out:
        write_report(fields, sink=out, digest=digest)
    else:
        sys.stdout.write(text)


def _load(path):
    data = Path(path).read_bytes()
    return parse_any(data.decode()), hashlib.sha256(data).hexdigest()


def cmd_check(args) -> int:
    M, sha = _load(args.path)
    T = tutte_delcon(M)
    report = mw_check(M, T)
    profile = hypothesis_profile(M)
    fields = flatten(report)
    fields.update(flatten(profile, "profile"))
    fields.update(flatten(audit(M, T, profile), "audit"))
    fields["tutte"] = str(T)
    digest = config_digest({"command": "check", "input": sha, "max_n": max_ground_size()})
    _emit(fields, digest, args.out)
    if report.hypothesis_ok and report.margin < 0:
        return EXIT_FINDING
    return EXIT_OK


def cmd_tutte(args) -> int:
    M, sha = _load(args.path)
    T = tutte_delcon(M)
    oracle = tutte_from_whitney(whitney_table(M))
    agree = T == oracle
    fields = {"n": M.n, "r": M.r, "engines_agree": agree}
    if args.eval is not None:
        x, y = args.eval
        fields.update({"x": x, "y": y, "value": evaluate(T, x, y)})
    else:
        fields["polynomial"] = str(T)
        width = len(str(M.r))
        for i, row in enumerate(T.t):
            fields[f"t.{str(i).zfill(width)}"] = " ".join(map(str, row))
    digest = config_digest({"command": "tutte", "input": sha, "eval": args.eval})
    _emit(fields, digest, args.out)
    return EXIT_OK if agree else EXIT_FINDING


def _nr_line(row: bounds.NrRow) -> str:
    flag = {True: "ok", False: "MISMATCH", None: "n/a"}[row.agrees]
    ref = "-" if row.reference is None else row.reference
    thr = "-" if row.threshold is None else row.threshold
    within = {True: "yes", False: "NO", None: "-"}[row.oracle_within_threshold]
    return f"r={row.r} table={ref} oracle={row.oracle} {flag} threshold={thr} oracle_within_threshold={within}"


def cmd_bounds(args) -> int:
    status = EXIT_OK
    fields = {}
    if args.which == "nr-table":
        if args.max_r < 1:
            raise _UsageError("--max-r must be at least 1")
        rows = bounds.nr_table(args.max_r)
        width = len(str(args.max_r))
        for row in rows:
            fields[f"row.{str(row.r).zfill(width)}"] = _nr_line(row)
        fields["disagreements"] = ",".join(str(r.r) for r in rows if r.agrees is False) or "none"
        fields["threshold_below_oracle"] = (
            ",".join(str(r.r) for r in rows if r.oracle_within_threshold is False) or "none"
        )
    elif args.which == "identity":
        if args.max_r < 1:
            raise _UsageError("--max-r must be at least 1")
        width = len(str(args.max_r))
        failures = []
        literal_differs = 0
        for r in range(1, args.max_r + 1):
            lhs, ok = bounds.check_binomial_identity(r)
            fields[f"identity.{str(r).zfill(width)}"] = f"{lhs} {2 ** (2 * r - 2)} {'ok' if ok else 'FAIL'}"
            if not ok:
                failures.append(r)
            literal_differs += bounds.printed_summation(r) != lhs
        fields["failures"] = len(failures)
        fields["printed_summation_differs"] = literal_differs
        if failures:
            status = EXIT_FINDING
    elif args.which == "log-ineq":
        points = list(args.x or [])
        if args.grid:
            lo, hi, count = args.grid
            count = int(count)
            if not (2 < lo < hi) or count < 2:
                raise _UsageError("--grid needs 2 < LO < HI and COUNT >= 2")
            points += [lo * (hi / lo) ** (k / (count - 1)) for k in range(count)]
        if not points:
            points = [17.0]
        width = len(str(len(points) - 1))
        bad = 0
        for k, x in enumerate(points):
            chk = bounds.check_log_inequality(x)
            fields[f"point.{str(k).zfill(width)}"] = f"x={x!r} lhs={chk.lhs!r} rhs={chk.rhs!r} {'ok' if chk.holds else 'FAIL'}"
            bad += x >= 17 and not chk.holds
        fields["failures_in_regime"] = bad
        if bad:
            status = EXIT_FINDING
    elif args.which == "chain":
        ranks = [args.r] if args.r is not None else list(range(5, args.max_r + 1))
        if not ranks:
            raise _UsageError("chain needs --r or --max-r of at least 5")
        width = len(str(max(ranks)))
        for r in ranks:
            n = args.n if args.n is not None else bounds.density_threshold(r)
            rep = bounds.check_density_chain(n, r)
            fields.update(flatten(rep, f"chain.r{str(r).zfill(width)}"))
            fields[f"chain.r{str(r).zfill(width)}.n"] = n
    params = {k: v for k, v in vars(args).items() if k not in ("func", "out")}
    digest = config_digest({"command": "bounds", "args": params})
    _emit(fields, digest, args.out)
    return status


def cmd_sweep(args) -> int:
    if args.config:
        path = Path(args.config)
        spec = parse_family_spec(path.read_text(), base_dir=path.parent)
    else:
        spec = default_family_spec()
    if args.print_config:
        sys.stdout.write(family_spec_json(spec))
        return EXIT_OK
    if args.jobs < 1:
        raise _UsageError("--jobs must be at least 1")
    summary = sweep(spec, jobs=args.jobs)
    cap = spec.max_n if spec.max_n is not None else max_ground_size()
    digest = config_digest({"command": "sweep", "config": family_spec_json(spec), "max_n": cap})
    _emit(summary, digest, args.out)
    return EXIT_FINDING if summary.conjecture_violated else EXIT_OK


class _UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="mwlab", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("check", help="Merino-Welsh report for a matroid or graph file")
    c.add_argument("path")
    c.add_argument("--out")
    c.set_defaults(func=cmd_check)

    t = sub.add_parser("tutte", help="Tutte coefficient table, checked by both engines")
    t.add_argument("path")
    t.add_argument("--eval", nargs=2, type=int, metavar=("X", "Y"))
    t.add_argument("--out")
    t.set_defaults(func=cmd_tutte)

    b = sub.add_parser("bounds", help="numeric lemmas: nr-table, identity, log-ineq, chain")
    b.add_argument("which", choices=["nr-table", "identity", "log-ineq", "chain"])
    b.add_argument("--max-r", type=int, default=16)
    b.add_argument("--r", type=int, help="chain: a single rank")
    b.add_argument("--n", type=int, help="chain: ground-set size (default: the density threshold)")
    b.add_argument("--x", type=float, action="append", help="log-ineq: a point (repeatable)")
    b.add_argument("--grid", nargs=3, type=float, metavar=("LO", "HI", "COUNT"))
    b.add_argument("--out")
    b.set_defaults(func=cmd_bounds)

    s = sub.add_parser("sweep", help="run every check over a family config")
    s.add_argument("config", nargs="?", help="JSON family config (default: built-in corpus)")
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--out")
    s.add_argument("--print-config", action="store_true", help="print the effective config and exit")
    s.set_defaults(func=cmd_sweep)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InvariantViolation as exc:
        print(f"mwlab: correctness violation: {exc}", file=sys.stderr)
        return EXIT_FINDING
    except (MwlabError, _UsageError, OSError, UnicodeDecodeError, ValueError) as exc:
        print(f"mwlab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
