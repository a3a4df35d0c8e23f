"""Command-line entry point: ``quadcover <command> ...``.

Exit codes: 0 success or valid, 1 invalid design or infeasible, 2 usage
error, 3 unsupported parameters (or an exhausted search budget), 4 missing
ingredient.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from quadcover.absystems.bounds import exact_f
from quadcover.absystems.instance import ABInstance, verify_ab
from quadcover.absystems.recipes import BASE_RECIPES, best_plan
from quadcover.designs import fileformat, ingredients
from quadcover.designs.fileformat import Design
from quadcover.designs.system import BlockSystem
from quadcover.designs.verify import check_covering, check_packing, check_sqs, check_sts
from quadcover.errors import DomainError, QuadcoverError, ShapeError, UnsupportedParameters
from quadcover.general_r.systems import RSystemInstance, best_r_system, verify_r
from quadcover.lottery.assembly import assemble, partition_search
from quadcover.lottery.residues import bound_L
from quadcover.lottery.system import LotterySystem, verify_lottery
from quadcover.oracle.problems import exact_covering, exact_f_oracle, exact_L, exact_min_weight
from quadcover.oracle.search import Budget
from quadcover.registry import Registry


def _out(text: str) -> None:
    sys.stdout.write(text + "\n")


def _err(text: str) -> None:
    sys.stderr.write(text + "\n")


def _write(path: str | None, design: Design) -> None:
    if path is None or path == "-":
        sys.stdout.write(fileformat.dumps(design))
    else:
        fileformat.write(path, design)


# -- bounds -------------------------------------------------------------------

def cmd_bounds(args) -> int:
    if args.what == "f":
        if len(args.values) != 2:
            raise DomainError("usage: bounds f <a> <b>")
        a, b = args.values
        rep = exact_f(a, b, args.mode)
        if args.json:
            _out(json.dumps(rep.to_json()))
        else:
            _out(rep.line().split(": ", 1)[1])
        return 0
    if len(args.values) != 1:
        raise DomainError("usage: bounds L <n>")
    res = bound_L(args.values[0])
    if args.json:
        _out(json.dumps({"n": res.n, "bound": res.value, "provenance": res.provenance,
                         "residue": res.residue, "partition": list(res.partition)}))
    else:
        _out(f"{res.value} ({res.provenance})")
    return 0


# -- construct ----------------------------------------------------------------

def cmd_construct(args) -> int:
    if args.what == "ab":
        only = None if args.method == "auto" else args.method
        plan = best_plan(args.a, args.b, "constructive", only)
        if plan is None:
            raise UnsupportedParameters(f"no buildable recipe for f({args.a},{args.b})"
                                        + ("" if only is None else f" with method {only}"))
        inst = plan.build()
        verdict = verify_ab(inst)
        if not verdict:
            _err(f"constructed system is invalid: {verdict.describe()}")
            return 1
        _write(args.output, Design("ab_system", inst.system, {"a": inst.a, "b": inst.b}, plan.describe()))
        _err(f"{len(inst)} blocks via {plan.describe()}, verified")
        return 0
    if args.what == "lottery":
        if args.partition:
            parts = tuple(int(x) for x in args.partition.split(","))
            if len(parts) != 3 or sum(parts) != args.n:
                raise DomainError(f"partition must be three parts summing to {args.n}")
        else:
            parts = partition_search(args.n).parts
        lot = assemble(*parts)
        _write(args.output, Design("lottery", lot.system, {}, "assembled"))
        _err(f"{len(lot)} blocks on partition {','.join(map(str, parts))}, verified")
        return 0
    inst = best_r_system(args.a, args.b, args.r)
    _write(args.output, Design("r_system", inst.system, {"a": inst.a, "b": inst.b}, "constructed"))
    _err(f"{len(inst)} blocks of size {args.r}, verified")
    return 0


# -- verify -------------------------------------------------------------------

def _field(d: Design, key: str) -> int:
    if key not in d.fields:
        raise ShapeError(f"design header lacks the field {key}=")
    return int(d.fields[key])


def cmd_verify(args) -> int:
    kind = args.kind
    if kind == "family":
        parsed = fileformat.read(args.file)
        fam_kind = args.family_kind or parsed.kind
        rec = ingredients.load_family(fam_kind, None, args.file)
        _out(f"valid {rec.kind} {dict(rec.parameters)}")
        return 0
    d = fileformat.read(args.file)
    if not isinstance(d, Design):
        raise ShapeError("expected a single design, found a family (use --kind family)")
    s = d.system
    if kind == "ab":
        if s.r != 4:
            raise ShapeError(f"(A,B)-systems have blocks of size 4, got {s.r}")
        verdict = verify_ab(ABInstance(_field(d, "a"), _field(d, "b"), s))
        problem = None if verdict else verdict.describe()
    elif kind == "r":
        verdict = verify_r(RSystemInstance(_field(d, "a"), _field(d, "b"), s))
        problem = None if verdict else verdict.describe()
    elif kind == "lottery":
        verdict = verify_lottery(LotterySystem(s.n, s), args.workers)
        problem = None if verdict else "quadruple " + " ".join(map(str, verdict.witness)) + " meets every block in at most 2 elements"
    elif kind == "sts":
        problem = check_sts(s)
    elif kind == "sqs":
        problem = check_sqs(s)
    elif kind == "packing":
        problem = check_packing(s) if s.r == 3 else f"block size {s.r}, expected 3"
    else:
        problem = check_covering(s, 2) if s.r == 3 else f"block size {s.r}, expected 3"
    if problem:
        _out(f"invalid: {problem}")
        return 1
    _out(f"valid ({len(s)} blocks)")
    return 0


# -- oracle -------------------------------------------------------------------

def cmd_oracle(args) -> int:
    budget = Budget(args.budget_nodes, args.budget_secs)
    vals = args.values
    if args.what == "f":
        if len(vals) != 2:
            raise DomainError("usage: oracle f <a> <b>")
        a, b = vals
        res = exact_f_oracle(a, b, args.r, budget, args.workers)
        design = lambda: Design("ab_system" if args.r == 4 else "r_system",  # noqa: E731
                                BlockSystem.from_blocks(a + b, args.r, res.witness), {"a": a, "b": b}, "oracle")
    elif args.what == "L":
        if len(vals) != 1:
            raise DomainError("usage: oracle L <n>")
        n = vals[0]
        res = exact_L(n, budget, args.workers)
        design = lambda: Design("lottery", BlockSystem.from_blocks(n, 4, res.witness), {}, "oracle")  # noqa: E731
    elif args.what == "covering":
        a = vals[0]
        res = exact_covering(a, budget)
        design = lambda: Design("covering", BlockSystem.from_blocks(a, 3, res.witness), {}, "oracle")  # noqa: E731
    else:
        a = vals[0]
        res = exact_min_weight(a, budget)
        _out(f"{res.summary()} (doubled weight)")
        return 0 if res.optimal else 3
    if res.optimal and args.output:
        fileformat.write(args.output, design())
    _out(res.summary())
    if res.status == "infeasible":
        return 1
    return 0 if res.optimal else 3


# -- table --------------------------------------------------------------------

TABLE_FIELDS = ("n", "residue", "bound", "partition", "size", "verified")


def table_rows(lo: int, hi: int, verify: bool = True, max_verify_n: int = 60):
    for n in range(lo, hi + 1):
        bl = bound_L(n)
        row = {"n": n, "residue": bl.residue, "bound": bl.value}
        try:
            plan = partition_search(n, min_part=3 if n >= 9 else 0)
        except QuadcoverError:
            row.update(partition="", size="", verified="formula-only")
            yield row
            continue
        row["partition"] = "+".join(map(str, plan.parts))
        row["size"] = plan.predicted
        if verify and n <= max_verify_n:
            lot = assemble(*plan.parts, recipes=plan.plans)
            ok = bool(verify_lottery(lot)) and len(lot) <= bl.value
            row["size"] = len(lot)
            row["verified"] = "yes" if ok else "no"
        else:
            row["verified"] = "formula-only"
        yield row


def cmd_table(args) -> int:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=TABLE_FIELDS, lineterminator="\n")
    writer.writeheader()
    for row in table_rows(args.lo, args.hi, not args.no_verify):
        writer.writerow(row)
    if args.csv:
        Path(args.csv).write_text(buf.getvalue())
    else:
        sys.stdout.write(buf.getvalue())
    return 0


# -- ingredients --------------------------------------------------------------

def cmd_ingredients(args) -> int:
    reg = Registry(args.registry) if args.registry else None
    if args.action == "list":
        for name in ingredients.bundled_names():
            rec = ingredients.bundled(name)
            params = " ".join(f"{k}={v}" for k, v in rec.parameters.items())
            _out(f"bundled {name} {rec.kind} {params}")
        if reg:
            for e in reg.entries():
                params = " ".join(f"{k}={v}" for k, v in e.parameters.items())
                _out(f"registry {e.path} {e.kind} {params} verified={'yes' if e.verified else 'no'}")
        return 0
    if args.action == "add":
        if reg is None or not args.file or not args.ingredient_kind:
            raise DomainError("ingredients add needs --registry DIR, --kind KIND and FILE")
        params = dict(_kv(p) for p in args.param)
        e = reg.add(args.file, args.ingredient_kind, params or None)
        _out(f"added {e.path} ({e.kind}), verified")
        return 0
    status = 0
    for name in ingredients.bundled_names():
        ingredients.bundled(name)
        _out(f"bundled {name} valid")
    if reg:
        for e, problem in reg.verify():
            _out(f"registry {e.path} " + ("valid" if problem is None else f"invalid: {problem}"))
            status = status or (0 if problem is None else 1)
    return status


def _kv(text: str) -> tuple[str, int]:
    if "=" not in text:
        raise DomainError(f"parameter {text!r} is not key=value")
    k, v = text.split("=", 1)
    return k, int(v)


# -- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="quadcover", description="(A,B)-systems and (n,4,3,4)-lottery systems")
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("bounds", help="bounds on f(a,b) or L(n)")
    b.add_argument("what", choices=("f", "L"))
    b.add_argument("values", type=int, nargs="+")
    b.add_argument("--mode", choices=("theory", "constructive"), default="theory")
    b.add_argument("--json", action="store_true")
    b.set_defaults(func=cmd_bounds)

    c = sub.add_parser("construct", help="build and verify a system")
    c.add_argument("what", choices=("ab", "lottery", "r"))
    c.add_argument("--a", type=int)
    c.add_argument("--b", type=int)
    c.add_argument("--r", type=int, default=4)
    c.add_argument("--n", type=int)
    c.add_argument("--method", choices=("auto",) + BASE_RECIPES, default="auto")
    c.add_argument("--partition")
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_construct)

    v = sub.add_parser("verify", help="check a design file")
    v.add_argument("--kind", required=True,
                   choices=("ab", "lottery", "r", "sts", "sqs", "packing", "covering", "family"))
    v.add_argument("--family-kind", help="ingredient kind for --kind family (default: file header)")
    v.add_argument("--workers", type=int, default=1)
    v.add_argument("file")
    v.set_defaults(func=cmd_verify)

    o = sub.add_parser("oracle", help="exact optimum by exhaustive search")
    o.add_argument("what", choices=("f", "L", "covering", "weight"))
    o.add_argument("values", type=int, nargs="+")
    o.add_argument("--r", type=int, default=4)
    o.add_argument("--budget-nodes", type=int, default=Budget.nodes)
    o.add_argument("--budget-secs", type=float, default=Budget.seconds)
    o.add_argument("--workers", type=int, default=1)
    o.add_argument("-o", "--output")
    o.set_defaults(func=cmd_oracle)

    t = sub.add_parser("table", help="CSV table of L(n) bounds and assembled sizes")
    t.add_argument("what", choices=("L",))
    t.add_argument("--from", dest="lo", type=int, required=True)
    t.add_argument("--to", dest="hi", type=int, required=True)
    t.add_argument("--csv")
    t.add_argument("--no-verify", action="store_true")
    t.set_defaults(func=cmd_table)

    g = sub.add_parser("ingredients", help="list, add or verify ingredients")
    g.add_argument("action", choices=("list", "add", "verify"))
    g.add_argument("file", nargs="?")
    g.add_argument("--registry")
    g.add_argument("--kind", dest="ingredient_kind", choices=ingredients.KINDS)
    g.add_argument("--param", action="append", default=[], help="key=value, repeatable")
    g.set_defaults(func=cmd_ingredients)
    return p


def _check_construct(args, parser) -> None:
    if args.command != "construct":
        return
    need = {"ab": ("a", "b"), "lottery": ("n",), "r": ("a", "b")}[args.what]
    missing = [k for k in need if getattr(args, k) is None]
    if missing:
        parser.error(f"construct {args.what} needs " + ", ".join(f"--{k}" for k in missing))


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _check_construct(args, parser)
    try:
        return args.func(args)
    except QuadcoverError as exc:
        _err(f"error: {exc}")
        return exc.exit_code
    except (OSError, ValueError) as exc:
        _err(f"error: {exc}")
        return 2


if __name__ == "__main__":
    sys.exit(main())
