"""Command-line front end.

Exit codes: 0 all assertions pass, 1 assertion failure, 2 configuration
error, 3 table-data error.
"""

from __future__ import annotations

import argparse
import os
import sys

from .exprs import ParseError, parse_expr
from .registry import DataError, GROUPS, Registry, SubgroupInstance
from .reports import render
from .restrict import Restrictor
from .sl2 import INFINITY, SL2Error, is_prime

MAX_BOUND = 8


class ConfigError(ValueError):
    pass


def parse_p(text: str):
    if text in ("0", "inf", "infinity"):
        return INFINITY
    try:
        p = int(text)
    except ValueError:
        raise ConfigError(f"bad characteristic {text!r}")
    if not is_prime(p):
        raise ConfigError(f"characteristic {p} is not prime")
    return p


def parse_primes(text: str):
    return [parse_p(x) for x in text.split(",")]


def parse_twists(text: str | None) -> dict:
    out = {}
    if text:
        for item in text.split(","):
            k, _, v = item.partition("=")
            if not _:
                raise ConfigError(f"bad twist assignment {item!r}")
            out[k.strip()] = int(v)
    return out


def check_bound(b: int) -> int:
    if not 0 <= b <= MAX_BOUND:
        raise ConfigError(f"twist bound must be between 0 and {MAX_BOUND}")
    return b


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--data-dir", default=os.environ.get("SL2COMPS_DATA"),
                        help="table file directory (default: packaged data)")
    common.add_argument("--format", choices=("text", "json", "csv"),
                        default="text")
    ap = argparse.ArgumentParser(
        prog="sl2comps",
        description="composition-factor calculus and table verifier for "
                    "rank-1 subgroups of exceptional groups",
        parents=[common],
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, help_):
        return sub.add_parser(name, help=help_, parents=[common])

    d = add("decompose", "composition factors of an expression")
    d.add_argument("--p", required=True)
    d.add_argument("--expr", required=True)
    d.add_argument("--twists", default=None)

    r = add("restrict", "restrict a module to a classified subgroup")
    r.add_argument("--group", required=True, choices=GROUPS)
    r.add_argument("--id", required=True, type=int)
    r.add_argument("--p", required=True)
    r.add_argument("--twists", default=None)
    r.add_argument("--module", choices=("min", "adj"), default="adj")

    c = add("certify", "irreducibility certificate")
    c.add_argument("--group", required=True, choices=GROUPS)
    c.add_argument("--id", required=True,
                   help="table row id, or rN for a known-reducible entry")
    c.add_argument("--p", required=True)
    c.add_argument("--twists", default=None)
    c.add_argument("--bound", required=True, type=int)

    v = add("verify-comps", "verify composition-factor table rows")
    v.add_argument("--group", required=True, choices=GROUPS)
    v.add_argument("--id", type=int, default=None)
    v.add_argument("--p", default=None)
    v.add_argument("--primes", default=None)
    v.add_argument("--bound", required=True, type=int)

    vc = add("verify-conditions", "orbit-cover check of a conditions table")
    vc.add_argument("--table", required=True,
                    choices=("conditions1", "cond23", "cond8", "cond27"))
    vc.add_argument("--bound", required=True, type=int)

    di = add("distinctness", "pairwise distinctness of instances")
    di.add_argument("--group", required=True, choices=GROUPS)
    di.add_argument("--p", required=True)
    di.add_argument("--bound", required=True, type=int)
    di.add_argument("--module", choices=("min", "adj", "both"), default="both")

    e8 = add("emit-e8-comps", "emit the computed E8 factor table")
    e8.add_argument("--p", required=True)
    e8.add_argument("--bound", required=True, type=int)
    return ap


def cmd_decompose(args, reg):
    p = parse_p(args.p)
    node = parse_expr(args.expr)
    fm = reg.instantiate(node, parse_twists(args.twists), p)
    return [{"expr": args.expr, "p": p, "factors": fm,
             "dimension": fm.dim(p), "status": "ok"}], True


def cmd_restrict(args, reg):
    p = parse_p(args.p)
    rx = Restrictor(reg)
    row = reg.row(args.group, args.id)
    twists = parse_twists(args.twists)
    missing = [v for v in row.vars if v not in twists]
    if missing:
        raise ConfigError(f"missing twists {missing} for {row}")
    inst = SubgroupInstance(row, tuple(twists[v] for v in row.vars), p)
    fm = rx.restrict_module(args.module, inst)
    return [{"group": args.group, "id": args.id, "p": p,
             "twists": inst.twists, "module": args.module,
             "factors": fm, "dimension": fm.dim(p), "status": "ok"}], True


def cmd_certify(args, reg):
    from .irred import CandidateEnumerator, certify, certify_reducible

    p = parse_p(args.p)
    bound = check_bound(args.bound)
    rx = Restrictor(reg)
    if str(args.id).startswith("r"):
        cert = certify_reducible(reg, args.group, int(str(args.id)[1:]), p)
    else:
        row = reg.row(args.group, int(args.id))
        twists = parse_twists(args.twists)
        inst = SubgroupInstance(row, tuple(twists[v] for v in row.vars), p)
        cert = certify(rx, inst, bound, CandidateEnumerator(rx))
    ok = cert.verdict != "inconclusive"
    return [{"subject": cert.subject, "p": p, "verdict": cert.verdict,
             "evidence": cert.evidence,
             "status": "pass" if ok else "fail"}], ok


def cmd_verify_comps(args, reg):
    if (args.p is None) == (args.primes is None):
        raise ConfigError("give exactly one of --p or --primes")
    primes = parse_primes(args.primes) if args.primes else [parse_p(args.p)]
    bound = check_bound(args.bound)
    rx = Restrictor(reg)
    rows = ([reg.row(args.group, args.id)] if args.id is not None
            else reg.rows_of(args.group))
    records = []
    ok = True
    for p in primes:
        for row in rows:
            if not row.pcond(p):
                continue
            for rec in rx.verify_comps_row(args.group, row.rid, p, bound):
                rec = dict(rec)
                rec.pop("problems", None)
                records.append(rec)
                ok = ok and rec["status"] == "pass"
    return records, ok


def cmd_verify_conditions(args, reg):
    from .conj import verify_conditions_table

    bound = check_bound(args.bound)
    rep = verify_conditions_table(reg, args.table, bound)
    return [rep], rep["status"] == "pass"


def cmd_distinctness(args, reg):
    from .conj import distinctness_report

    p = parse_p(args.p)
    bound = check_bound(args.bound)
    rx = Restrictor(reg)
    modules = ("min", "adj") if args.module == "both" else (args.module,)
    records = []
    ok = True
    for module in modules:
        rep = distinctness_report(rx, args.group, p, bound, module)
        records.append(rep)
        ok = ok and rep["status"] == "pass"
    return records, ok


def cmd_emit_e8(args, reg):
    p = parse_p(args.p)
    bound = check_bound(args.bound)
    rx = Restrictor(reg)
    records = []
    ok = True
    for row in reg.rows_of("E8"):
        for inst in reg.enumerate_instances(row, bound, p):
            fm = rx.restrict_module("adj", inst)
            good = fm.dim(p) == 248
            records.append({"group": "E8", "id": row.rid, "p": p,
                            "twists": inst.twists, "module": "adj",
                            "factors": fm,
                            "status": "pass" if good else "fail"})
            ok = ok and good
    return records, ok


COMMANDS = {
    "decompose": cmd_decompose,
    "restrict": cmd_restrict,
    "certify": cmd_certify,
    "verify-comps": cmd_verify_comps,
    "verify-conditions": cmd_verify_conditions,
    "distinctness": cmd_distinctness,
    "emit-e8-comps": cmd_emit_e8,
}


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        reg = Registry.load(args.data_dir)
    except DataError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return 3
    try:
        records, ok = COMMANDS[args.command](args, reg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (ParseError, SL2Error) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DataError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return 3
    sys.stdout.write(render(records, args.format))
    if args.format == "text":
        sys.stdout.write("")
    return 0 if ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
