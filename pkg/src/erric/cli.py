"""Command-line front end.

Every invocation prints one JSON document on stdout and a short summary on
stderr. Exit codes: 0 success/valid, 1 well-formed but negative (invalid
code, no ERR:IC, round-trip mismatch), 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .codes import CodeKind, verify_code
from .existence import ENUM_CAP, check_existence, check_existence_special, enumerate_admitting_graphs
from .families import FAMILIES, FamilyError, FamilySpec, save_construction
from .graph import GraphError, format_graph, parse_graph
from .reduction import ReductionError, build_reduction, parse_dimacs, roundtrip_check
from .solver import DEFAULT_NODE_BUDGET, BudgetExceeded, SolverError, certify, solve


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _emit(doc, summary: str) -> None:
    json.dump(doc, sys.stdout, indent=2, default=str)
    sys.stdout.write("\n")
    print(summary, file=sys.stderr)


def _load_graph(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"--graph: cannot read {path}: {exc.strerror}") from None
    return parse_graph(text)


def _parse_code(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(tok) for tok in text.split(",")]
    except ValueError:
        raise UsageError(f"--code: expected comma-separated vertex ids, got {text!r}") from None


# -- verbs ---------------------------------------------------------------------------


def cmd_verify(args) -> int:
    g = _load_graph(args.graph)
    try:
        kind = CodeKind.parse(args.kind)
    except ValueError as exc:
        raise UsageError(f"--kind: {exc}") from None
    rep = verify_code(g, _parse_code(args.code), kind)
    nd, nx = len(rep.domination_failures), len(rep.distinguishing_failures)
    _emit(rep.to_dict(), f"{kind.value}: {'valid' if rep.valid else 'INVALID'} "
                         f"({nd} domination, {nx} distinguishing failures)")
    return 0 if rep.valid else 1


def cmd_exist(args) -> int:
    g = _load_graph(args.graph)
    rep = check_existence_special(g) if args.special else check_existence(g)
    failed = ", ".join(rep.failed_properties) or "none"
    _emit(rep.to_dict(), f"ERR:IC {'exists' if rep.exists else 'does not exist'} "
                         f"(criterion {rep.criterion}; failed: {failed})")
    return 0 if rep.exists else 1


def cmd_solve(args) -> int:
    g = _load_graph(args.graph)
    kw = {}
    if args.method != "oracle":
        kw = {"budget": args.budget, "threads": args.threads}
    try:
        code = solve(g, args.method, **kw)
    except BudgetExceeded as exc:
        _emit({"error": str(exc), "best": exc.best, "bound": exc.bound},
              f"budget exhausted: optimum between {exc.bound} and {exc.best}")
        return 1
    if code is None:
        _emit({"n": g.n, "code": None}, "no ERR:IC exists")
        return 1
    certify(g, code)
    doc = {"n": g.n, **code.to_dict(), "density": f"{code.size}/{g.n}"}
    _emit(doc, f"minimum ERR:IC size {code.size} of n={g.n} ({code.method})")
    return 0


def cmd_reduce(args) -> int:
    try:
        text = Path(args.cnf).read_text()
    except OSError as exc:
        raise UsageError(f"--cnf: cannot read {args.cnf}: {exc.strerror}") from None
    f = parse_dimacs(text)
    inst = build_reduction(f)
    prefix = Path(args.out)
    prefix.with_suffix(".el").write_text(format_graph(inst.graph))
    prefix.with_suffix(".json").write_text(inst.to_json() + "\n")
    doc = {
        "vertices": inst.graph.n,
        "edges": inst.graph.m,
        "K": inst.K,
        "forced_detectors": len(inst.forced_detectors),
        "covers_all_literals": f.covers_all_literals(),
        "files": [str(prefix.with_suffix(".el")), str(prefix.with_suffix(".json"))],
    }
    status = 0
    if args.roundtrip:
        rt = roundtrip_check(f)
        doc["roundtrip"] = rt
        status = 0 if rt["agrees"] else 1
    _emit(doc, f"reduction: n={inst.graph.n}, m={inst.graph.m}, K={inst.K}"
               + (f"; round trip {'agrees' if status == 0 else 'DISAGREES'}" if args.roundtrip else ""))
    return status


def _spec_from(args, **override) -> FamilySpec:
    fam = args.family.upper()
    if fam not in FAMILIES:
        raise UsageError(f"--family: unknown family {args.family!r}; choose from {', '.join(FAMILIES)}")
    params = {}
    for key in ("k", "m", "rows", "cols"):
        val = override.get(key, getattr(args, key, None))
        if val is not None:
            params[key] = val
    if fam == "G6_MOBIUS":
        params["mobius"] = not args.straight
    return FamilySpec(fam, params)


def cmd_gen(args) -> int:
    c = _spec_from(args).build()
    el, js = save_construction(c, args.out)
    doc = c.side_file()
    doc["files"] = [str(el), str(js)]
    size = "no code" if c.code is None else f"code size {c.claimed_size}"
    _emit(doc, f"{c.family}: n={c.graph.n}, {size}")
    return 0


def cmd_enumerate(args) -> int:
    if not 1 <= args.max_n <= ENUM_CAP:
        raise UsageError(f"--max-n: must be between 1 and {ENUM_CAP}, got {args.max_n}")
    forms = enumerate_admitting_graphs(args.max_n, workers=args.workers)
    _emit({"max_n": args.max_n, "count": len(forms), "canonical_forms": [f.hex() for f in forms]},
          f"{len(forms)} isomorphism classes with n <= {args.max_n} admit an ERR:IC")
    return 0


def cmd_density(args) -> int:
    fam = args.family.upper()
    key = {"G6_MOBIUS": "k", "G18_RING": "k", "LADDER_CYCLIC": "m"}.get(fam)
    values = getattr(args, key) if key else None
    variants = [{key: v} for v in values] if values else [{}]
    rows = []
    ok = True
    for over in variants:
        c = _spec_from(args, **over).build()
        method = args.method or ("cubic" if c.graph.is_cubic() else "bnb")
        kw = {} if method == "oracle" else {"budget": args.budget}
        best = solve(c.graph, method, **kw)
        solver_size = best.size if best is not None else None
        match = solver_size == c.claimed_size
        ok &= match
        rows.append({
            "params": c.params,
            "n": c.graph.n,
            "claimed_size": c.claimed_size,
            "claimed_density": None if c.claimed_size is None else f"{c.claimed_size}/{c.graph.n}",
            "solver_size": solver_size,
            "solver_density": None if solver_size is None else f"{solver_size}/{c.graph.n}",
            "method": method,
            "match": match,
        })
    lines = [f"{r['params']}: claimed {r['claimed_density']} solver {r['solver_density']}"
             f"{'' if r['match'] else '  MISMATCH'}" for r in rows]
    _emit({"family": fam, "rows": rows}, "\n".join(lines))
    return 0 if ok else 1


# -- parser ------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="erric", description="Error-correcting identifying codes toolkit")
    sub = ap.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    p = sub.add_parser("verify", help="check a detector set")
    p.add_argument("--graph", required=True)
    p.add_argument("--code", required=True, help="comma-separated vertex ids")
    p.add_argument("--kind", default="ERR_IC", help="IC, RED_IC, DET_IC or ERR_IC (aliases: red, det, err)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("exist", help="ERR:IC existence test")
    p.add_argument("--graph", required=True)
    p.add_argument("--special", action="store_true", help="use the cubic/regular/triangle-free criteria")
    p.set_defaults(func=cmd_exist)

    p = sub.add_parser("solve", help="minimum ERR:IC")
    p.add_argument("--graph", required=True)
    p.add_argument("--method", choices=["oracle", "bnb", "cubic"], default="bnb")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--budget", type=int, default=DEFAULT_NODE_BUDGET, help="search node budget")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("reduce", help="3SAT instance to ERR:IC instance")
    p.add_argument("--cnf", required=True)
    p.add_argument("--out", required=True, help="output prefix for .el and .json")
    p.add_argument("--roundtrip", action="store_true")
    p.set_defaults(func=cmd_reduce)

    def family_flags(p, multi=False):
        p.add_argument("--family", required=True, help=", ".join(FAMILIES))
        nargs = "+" if multi else None
        p.add_argument("--k", type=int, nargs=nargs)
        p.add_argument("--m", type=int, nargs=nargs)
        p.add_argument("--rows", type=int)
        p.add_argument("--cols", type=int)
        p.add_argument("--straight", action="store_true", help="G6 ring without the Möbius twist")

    p = sub.add_parser("gen", help="generate a certified family member")
    family_flags(p)
    p.add_argument("--out", required=True, help="output prefix for .el and .json")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("enumerate", help="all small graphs admitting an ERR:IC")
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("density", help="claimed vs solver density")
    family_flags(p, multi=True)
    p.add_argument("--method", choices=["oracle", "bnb", "cubic"])
    p.add_argument("--budget", type=int, default=DEFAULT_NODE_BUDGET)
    p.set_defaults(func=cmd_density)
    return ap


def run(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        _emit({"error": str(exc)}, str(exc))
        return 2
    except (GraphError, ReductionError, FamilyError, SolverError, ValueError) as exc:
        _emit({"error": str(exc), "type": type(exc).__name__}, f"error: {exc}")
        return 2


def main(argv=None) -> int:
    return run(argv)


if __name__ == "__main__":
    raise SystemExit(main())
