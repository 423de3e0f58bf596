"""Command-line entry point: ``conlat verify ...``, ``con``, ``permutable``, ``urp``, ``catalog``, ``search-lifting``.

Exit codes: 0 every check passed, 1 a checked property failed, 2 the input
could not be read or is invalid, 3 a bounded search was inconclusive.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import ConlatError

VERIFY_TARGETS = ("dc", "dac", "duals", "lifting", "triangle", "cases", "remark")


def _verify(target: str):
    from . import constructions as c

    if target == "dc":
        return c.verify_dc()
    if target == "dac":
        return c.verify_dac()
    if target == "duals":
        return c.dual_tables_dc()
    if target == "lifting":
        return c.verify_lifting()
    if target == "triangle":
        return c.verify_triangle()
    if target == "remark":
        return c.verify_m3_remark()
    from .report import Report

    rep = Report("verify cases")
    rep.extend(c.case_table_check(c.build_dac()), prefix="D_ac ")
    rep.extend(c.case_table_check(c.build_dc()), prefix="D_c ")
    return rep.finish()


def _load_lattice(path):
    from .formats import lattice_from_json, load_json

    return lattice_from_json(load_json(path))


def _cmd_con(args):
    from .congruence import con_lattice
    from .lattice import is_distributive
    from .report import Report

    L = _load_lattice(args.file)
    C = con_lattice(L)
    rep = Report("con")
    rep.add("congruences", "pass", {
        "size": len(C),
        "congruences": [c.blocks() for c in C],
        "covers": [list(p) for p in C.lattice.covers],
    })
    rep.add("Con L is distributive", is_distributive(C.lattice))
    return rep.finish()


def _cmd_permutable(args):
    from .congruence import has_almost_permutable_congruences, has_permutable_congruences, permutable_via_criterion
    from .report import Report

    L = _load_lattice(args.file)
    perm = has_permutable_congruences(L)
    crit = permutable_via_criterion(L)
    almost = has_almost_permutable_congruences(L)
    rep = Report("permutable")
    rep.result = {"result": perm.ok, "witness": perm.witness, "almost_permutable": almost.ok}
    rep.add("permutable congruences", "pass", rep.result)
    rep.add("relational test agrees with the element criterion", perm.ok == crit.ok,
            {"criterion": crit.ok, "criterion_witness": crit.witness})
    return rep.finish()


def _cmd_urp(args):
    from .congruence import con_lattice
    from .formats import carrier_from_json, family_from_json, load_json
    from .report import Report
    from .semilattice import FiniteJoinSemilattice0
    from .urp import HOLDS, INCONCLUSIVE, check_urp1_at, check_urp1_minus_at

    X = carrier_from_json(load_json(args.file))
    S = X if isinstance(X, FiniteJoinSemilattice0) else con_lattice(X).semilattice
    fam = family_from_json(load_json(args.family))
    if fam["epsilon"] is None:
        raise ConlatError("family file needs an \"epsilon\" field")
    eps = int(fam["epsilon"])
    if not 0 <= eps < S.size or any(not (0 <= a < S.size and 0 <= b < S.size) for a, b in fam["pairs"]):
        raise ConlatError("family refers to elements outside the semilattice")
    check = check_urp1_minus_at if args.minus else check_urp1_at
    res = check(S, eps, fam["pairs"], budget=args.budget)
    name = "URP₁⁻" if args.minus else "URP₁"
    status = "pass" if res.status == HOLDS else ("inconclusive" if res.status == INCONCLUSIVE else "fail")
    rep = Report("urp")
    rep.add(f"{name} at {eps} for the given family", status,
            {"outcome": res.status, "nodes": res.nodes, "witness": res.witness})
    return rep.finish()


def _cmd_catalog(args):
    from .catalog import brute_force_lattices, enumerate_lattices, run_property_suite
    from .report import Report

    bound = 8 if args.extended else 7
    if args.n > bound:
        from .errors import BoundExceeded

        raise BoundExceeded(f"size {args.n} exceeds the catalog bound {bound}")
    if args.suite:
        lattices = [L for n in range(1, args.n + 1)
                    for L in enumerate_lattices(n, allow_extended=args.extended, jobs=args.jobs)]
        return run_property_suite(args.suite, lattices, jobs=args.jobs)
    rep = Report("catalog")
    for n in range(1, args.n + 1):
        count = len(enumerate_lattices(n, allow_extended=args.extended, jobs=args.jobs))
        if n <= 6:
            oracle = len(brute_force_lattices(n))
            rep.add(f"size {n}: {count} lattices", count == oracle, {"count": count, "oracle": oracle})
        else:
            rep.add(f"size {n}: {count} lattices", "pass", {"count": count})
    return rep.finish()


def _cmd_search(args):
    from .catalog import search_liftings
    from .formats import parse_arrow_key, diagram_from_json, load_json
    from .report import Report

    rep = Report("search-lifting")
    target = diagram_from_json(load_json(args.file))
    edges = [parse_arrow_key(e) for e in args.iso_edge]
    res = search_liftings(target, args.max_size, iso_edges=edges, allow_extended=args.extended)
    rep.add("lifting found within the bound", "pass" if res else "inconclusive", res.to_json())
    return rep.finish()


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="emit a JSON report")
    p = argparse.ArgumentParser(prog="conlat", parents=[common],
                                description="Finite lattices, congruence lattices and lifting checks.")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", parents=[common], help="run a built-in verification")
    v.add_argument("target", choices=VERIFY_TARGETS)

    c = sub.add_parser("con", parents=[common], help="congruence lattice of a lattice file")
    c.add_argument("file")

    pm = sub.add_parser("permutable", parents=[common], help="permutability of a lattice file")
    pm.add_argument("file")

    u = sub.add_parser("urp", parents=[common], help="bounded URP search for one family")
    u.add_argument("file", help="lattice (its congruence semilattice is used) or semilattice file")
    u.add_argument("--family", required=True)
    u.add_argument("--minus", action="store_true")
    u.add_argument("--budget", type=int, default=200_000)

    cat = sub.add_parser("catalog", parents=[common], help="enumerate lattices or run a property suite")
    cat.add_argument("n", type=int)
    cat.add_argument("--suite", help="a..f or all")
    cat.add_argument("--jobs", type=int, default=1)
    cat.add_argument("--extended", action="store_true", help="allow size 8")

    s = sub.add_parser("search-lifting", parents=[common], help="bounded search for a lifting of a diagram file")
    s.add_argument("file")
    s.add_argument("--max-size", type=int, required=True)
    s.add_argument("--iso-edge", action="append", default=[], help="edge p->q that must lift to an isomorphism")
    s.add_argument("--extended", action="store_true", help="allow size 8")
    return p


_COMMANDS = {
    "con": _cmd_con,
    "permutable": _cmd_permutable,
    "urp": _cmd_urp,
    "catalog": _cmd_catalog,
    "search-lifting": _cmd_search,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    as_json = getattr(args, "json", False)
    try:
        if args.command == "verify":
            rep = _verify(args.target)
        else:
            rep = _COMMANDS[args.command](args)
    except ConlatError as exc:
        if as_json:
            print(json.dumps({"command": args.command, "error": type(exc).__name__, "message": str(exc)},
                             ensure_ascii=False))
        else:
            print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    if as_json:
        print(rep.dumps())
    else:
        print(rep.render())
    return rep.exit_code()


if __name__ == "__main__":
    sys.exit(main())
