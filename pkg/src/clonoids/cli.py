"""Command-line front end: classify, close, enumerate, verify and export diagrams."""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .bitops import ENUM_MAX_ARITY, ArityCapError
from .boolfn import BoolFn, InputShapeError, lambda_fn, parse_fn
from .classes import ClassNameError, member_mask, parse_class
from .engine import (
    AmbiguityError, NotCoveredError, check_left_stable, check_right_stable, clonoid_closure,
    enumerate_clonoids, expr_to_json, largest_stabilizing,
)
from .fnset import default_cap
from .golden import SUITES
from .kposet import Poset
from .minorder import UnsupportedSourceError, class_label, minor_poset
from .postlattice import CLONE_NAMES, HASSE_EDGES, UnknownCloneError, get_clone
from .tables import DISTINCT_ARITY, TABLE_NAMES, run_tables

__all__ = ["main", "run", "build_parser"]

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    """Bad flag values detected after argparse."""


# ------------------------------------------------------------------ helpers

def _functions(args) -> list[BoolFn]:
    fns = [parse_fn(t) for t in (args.fn or [])]
    fns += [lambda_fn(b) for b in (args.lam or [])]
    return fns


def _one_function(args) -> BoolFn:
    fns = _functions(args)
    if len(fns) != 1:
        raise UsageError("give exactly one function via --fn n:HEX or --lambda BITS")
    return fns[0]


def _cap(args) -> int:
    cap = args.cap if getattr(args, "cap", None) is not None else default_cap()
    if not 1 <= cap <= ENUM_MAX_ARITY:
        raise UsageError(f"--cap must lie in [1, {ENUM_MAX_ARITY}]")
    return cap


def _clone(name: str | None, flag: str) -> str:
    if name is None:
        raise UsageError(f"{flag} is required")
    return get_clone(name).name


def _render(payload, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(payload["json"], indent=2, sort_keys=True) + "\n"
    if fmt == "dot":
        if "dot" not in payload:
            raise UsageError("this command has no DOT output")
        return payload["dot"]
    return payload["text"]


def _inclusion_poset(names, exprs) -> Poset:
    masks = [np.concatenate([member_mask(e, n) for n in range(1, DISTINCT_ARITY + 1)]) for e in exprs]
    leq = np.array([[not (a & ~b).any() for b in masks] for a in masks], dtype=bool)
    return Poset(tuple(names), leq)


# ----------------------------------------------------------------- commands

def cmd_classify(args):
    f = _one_function(args)
    source = _clone(args.source, "--source")
    label = class_label(f, source)
    return {"text": f"{label}\n",
            "json": {"function": f.to_hex(), "source": source, "label": str(label)}}, EXIT_OK


def cmd_closure(args):
    fns = _functions(args)
    cap = _cap(args)
    source, target = _clone(args.source, "--source"), _clone(args.target, "--target")
    fs = clonoid_closure(fns, source, target, cap)
    match = None
    try:
        for d in enumerate_clonoids(source, target, cutoff=args.cutoff, cap=cap):
            if fs.matches(d.expr):
                match = d.name
                break
    except NotCoveredError:
        pass
    text = f"{fs.summary()}\nmatches: {match if match else 'none'}\n"
    return {"text": text, "json": {"counts": list(fs.counts()), "cap": cap, "match": match}}, EXIT_OK


def cmd_enumerate(args):
    source, target = _clone(args.source, "--source"), _clone(args.target, "--target")
    cap = _cap(args)
    descs = enumerate_clonoids(source, target, cutoff=args.cutoff, cap=cap)
    names = [d.name for d in descs]
    text = "".join(f"{n}\n" for n in names) + f"{len(names)} clonoids\n"
    dot = _inclusion_poset(names, [d.expr for d in descs]).to_dot(f"{source},{target}")
    return {"text": text, "dot": dot, "json": [d.to_json() for d in descs]}, EXIT_OK


def cmd_stable(args):
    if args.source is None and args.target is None and not args.largest:
        raise UsageError("give --source, --target or --largest")
    k = parse_class(args.cls)
    cap = _cap(args)
    reports = []
    if args.source:
        reports.append(check_right_stable(k, _clone(args.source, "--source"), cap))
    if args.target:
        reports.append(check_left_stable(k, _clone(args.target, "--target"), cap))
    lines = [r.line(args.cls) for r in reports]
    out = {"checks": [{"ok": r.ok, "direction": r.direction, "clone": r.clone,
                       "witness": str(r.witness) if r.witness else None} for r in reports]}
    code = EXIT_OK if all(reports) else EXIT_FAIL
    if args.largest:
        try:
            c1, c2 = largest_stabilizing(k, cap)
            lines.append(f"largest {args.cls}: right {c1} left {c2}")
            out["largest"] = [c1, c2]
        except AmbiguityError as exc:
            lines.append(f"FAIL {exc}")
            code = EXIT_FAIL
    return {"text": "".join(f"{ln}\n" for ln in lines), "json": out}, code


def cmd_tables(args):
    names = args.suite or list(TABLE_NAMES)
    if args.golden and (len(names) != 1 or names[0] not in SUITES):
        raise UsageError("--golden needs exactly one --suite naming a golden list")
    reports = run_tables(names, args.golden, _cap(args), columns=not args.skip_columns)
    lines = [ln for r in reports for ln in r.lines]
    code = EXIT_OK if all(r.ok for r in reports) else EXIT_FAIL
    return {"text": "".join(f"{ln}\n" for ln in lines),
            "json": {r.name: {"ok": r.ok, "lines": r.lines} for r in reports}}, code


def cmd_hasse(args):
    if args.target:
        source, target = _clone(args.source, "--source"), _clone(args.target, "--target")
        descs = enumerate_clonoids(source, target, cutoff=args.cutoff, cap=_cap(args))
        p = _inclusion_poset([d.name for d in descs], [d.expr for d in descs])
        title = f"{source},{target}"
    elif args.source:
        source = _clone(args.source, "--source")
        p = minor_poset(source, args.cutoff)
        p = Poset(tuple(str(x) for x in p.names), p.leq)
        title = f"{source}-minor"
    else:
        p = Poset.from_covers(CLONE_NAMES, HASSE_EDGES)
        title = "clones"
    edges = [[p.names[i], p.names[j]] for i, j in p.covers()]
    text = "".join(f"{a} < {b}\n" for a, b in edges)
    fmt_default = {"text": text, "dot": p.to_dot(title),
                   "json": {"elements": list(p.names), "covers": edges}}
    return fmt_default, EXIT_OK


def cmd_list_clones(args):
    rows = []
    for name in CLONE_NAMES:
        c = get_clone(name)
        rows.append({"name": name, "generators": [g.to_hex() for g in c.generators],
                     "description": c.description})
    text = "".join(f"{r['name']}\t{' '.join(r['generators']) or '-'}\t{r['description']}\n"
                   for r in rows)
    return {"text": text, "json": rows}, EXIT_OK


# ------------------------------------------------------------------ parsing

def _common(p, fn=False, source=False, target=False, cap=False, cutoff=False, formats=("text", "json")):
    if fn:
        p.add_argument("--fn", action="append", metavar="n:HEX", help="function as arity:hex table")
        p.add_argument("--lambda", dest="lam", action="append", metavar="BITS",
                       help="symmetric function by its value vector on Hamming weights")
    if source:
        p.add_argument("--source", metavar="NAME", help="source clone (acts on the right)")
    if target:
        p.add_argument("--target", metavar="NAME", help="target clone (acts on the left)")
    if cap:
        p.add_argument("--cap", type=int, metavar="N", help="arity cap (default: CLONOID_CAP or 3)")
    if cutoff:
        p.add_argument("--cutoff", type=int, metavar="K",
                       help="alternation cutoff for monotone sources")
    p.add_argument("--format", choices=formats, default=formats[0])
    p.add_argument("--out", metavar="PATH", help="write output to a file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="clonoids", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("classify", help="print the minor class of a function")
    _common(p, fn=True, source=True)
    p.set_defaults(func=cmd_classify)
    p = sub.add_parser("closure", help="close functions into a clonoid")
    _common(p, fn=True, source=True, target=True, cap=True, cutoff=True)
    p.set_defaults(func=cmd_closure)
    p = sub.add_parser("enumerate", help="list the clonoids of a clone pair")
    _common(p, source=True, target=True, cap=True, cutoff=True, formats=("text", "json", "dot"))
    p.set_defaults(func=cmd_enumerate)
    p = sub.add_parser("stable", help="check stability of a class under clones")
    _common(p, source=True, target=True, cap=True)
    p.add_argument("--class", dest="cls", required=True, metavar="EXPR", help="class expression")
    p.add_argument("--largest", action="store_true", help="also report the largest stabilizing clones")
    p.set_defaults(func=cmd_stable)
    p = sub.add_parser("tables", help="verify the golden tables")
    _common(p, cap=True)
    p.add_argument("--suite", action="append", choices=TABLE_NAMES, help="suite to run (repeatable)")
    p.add_argument("--golden", metavar="PATH", help="verify this file instead of the packaged one")
    p.add_argument("--skip-columns", action="store_true", help="skip the stability-column check")
    p.set_defaults(func=cmd_tables)
    p = sub.add_parser("hasse", help="Hasse diagram of a minor poset, clonoid lattice or the clones")
    _common(p, source=True, target=True, cap=True, cutoff=True, formats=("dot", "text", "json"))
    p.set_defaults(func=cmd_hasse)
    p = sub.add_parser("list-clones", help="list the encoded clones")
    _common(p)
    p.set_defaults(func=cmd_list_clones)
    return parser


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        payload, code = args.func(args)
        text = _render(payload, args.format)
    except (UsageError, UnknownCloneError, ClassNameError, InputShapeError, ArityCapError,
            UnsupportedSourceError, NotCoveredError, ValueError) as exc:
        print(f"clonoids {args.command}: error: {exc}", file=stderr)
        return EXIT_USAGE
    if args.out:
        Path(args.out).write_text(text)
    else:
        stdout.write(text)
    return code


def main() -> None:
    sys.exit(run())
