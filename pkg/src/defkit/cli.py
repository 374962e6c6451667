"""Command line front end: every command prints one JSON document.

Exit codes: 0 when everything checked holds, 1 when the computation ran but
a checked hypothesis fails, 2 on invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Sequence

from . import cohom, commvar, defo, graded, models
from .core.rational import format_rational, parse_rational


class UsageError(Exception):
    def __init__(self, message: str, hint: str = ""):
        super().__init__(message)
        self.hint = hint


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message, f"see '{self.prog} --help'")


def _read_json(path: str) -> Any:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}", "check the file path") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc.msg} (line {exc.lineno})", "fix the file syntax") from exc


def _load_dgla(path: str) -> graded.DGLA:
    try:
        return graded.dgla_from_json(_read_json(path))
    except UsageError:
        raise
    except ValueError as exc:
        raise UsageError(str(exc), "DGLA files use the basis/differential/bracket interchange format") from exc


# dgla


def cmd_dgla_axioms(args):
    L = _load_dgla(args.infile)
    bad = graded.check_axioms(L)
    return {"dims": list(L.dims()), "valid": not bad, "witnesses": [v.to_json() for v in bad]}, bool(bad)


def cmd_dgla_cohomology(args):
    L = _load_dgla(args.infile)
    if not 0 <= args.degree <= L.basis.max_degree:
        raise UsageError(f"degree {args.degree} outside 0..{L.basis.max_degree}", "pick a degree present in the basis")
    return graded.cohomology(L, args.degree).to_json(L), False


def cmd_dgla_kuranishi(args):
    L = _load_dgla(args.infile)
    if args.order < 2:
        raise UsageError("order must be at least 2", "use --order 2 or more")
    bad = graded.check_axioms(L)
    if bad:
        return {"valid": False, "witnesses": [v.to_json() for v in bad]}, True
    K, split = defo.kuranishi(L, args.order)
    return {"kuranishi": K.to_json(), "splitting": split.to_json()}, False


def cmd_dgla_tensor(args):
    L = _load_dgla(args.infile)
    if args.exterior < 0:
        raise UsageError("exterior rank must be >= 0", "use --exterior 0 for the unit algebra")
    T = graded.tensor_with_algebra(L, graded.build_exterior(args.exterior))
    bad = graded.check_axioms(T)
    return {
        "dgla": graded.dgla_to_json(T),
        "dims": list(T.dims()),
        "valid": not bad,
        "witnesses": [v.to_json() for v in bad],
    }, bool(bad)


# commvar


def _check_q_sl(args):
    if args.q < 1:
        raise UsageError("--q must be >= 1", "tuples need at least one slot")
    if args.sl < 2:
        raise UsageError("--sl must be >= 2", "sl(n) is defined for n >= 2")


def cmd_commvar_ideal(args):
    _check_q_sl(args)
    V = commvar.commuting_ideal(args.q, graded.build_sl(args.sl))
    doc = {
        "q": args.q,
        "lie_algebra": f"sl({args.sl})",
        "basis": list(V.algebra.names),
        "generators": len(V.ideal.generators),
        "ideal": V.ideal.to_json(),
    }
    if args.out:
        Path(args.out).write_text(json.dumps(doc, sort_keys=True, indent=2) + "\n", encoding="utf-8")
        doc = {k: v for k, v in doc.items() if k != "ideal"}
        doc["written"] = args.out
    return doc, False


def cmd_commvar_hilbert(args):
    _check_q_sl(args)
    if args.max_degree < 0:
        raise UsageError("--max-degree must be >= 0", "")
    V = commvar.commuting_ideal(args.q, graded.build_sl(args.sl))
    try:
        h = commvar.hilbert_function(V, args.max_degree, guard=args.guard)
    except ValueError as exc:
        raise UsageError(str(exc), "raise --guard to allow the computation") from exc
    return {"q": args.q, "lie_algebra": f"sl({args.sl})", "variables": V.nvars, "hilbert": h}, False


def cmd_commvar_bound(args):
    if args.n < 2 or args.q < 1:
        raise UsageError("need --n >= 2 and --q >= 1", "")
    r = commvar.lemma31_bound(args.q, args.n)
    doc = r.to_json()
    doc["witnesses"] = []
    if not r.agree:
        doc["witnesses"].append({"condition": "closed_form_vs_inequality", "q": r.q, "n": r.n})
    if not r.necessary_condition_holds:
        doc["witnesses"].append({"condition": "q < bound", "q": r.q, "bound": doc["bound"]})
    return doc, bool(doc["witnesses"])


def cmd_commvar_segre_check(args):
    if args.max_degree < 2:
        raise UsageError("--max-degree must be >= 2", "the comparison starts with the quadrics")
    try:
        m = commvar.determinantal_match_sl2(args.max_degree)
    except ValueError as exc:
        raise UsageError(str(exc), "keep --max-degree at most 6") from exc
    except RuntimeError as exc:
        doc = {"verified": False, "witnesses": [{"condition": "determinantal_match", "detail": str(exc)}]}
        return doc, True
    return m.to_json(), False


# cohom


def _bundle(args) -> cohom.AHBundle:
    ch = (1,) if args.alpha_nontrivial else (0,)
    if args.pf < 0:
        raise UsageError("--pf must be >= 0", "--pf 0 selects the zero hermitian form")
    if args.pf == 0:
        return cohom.AHBundle(ch, cohom.ZeroForm())
    if not 0 <= args.s <= args.q:
        raise UsageError(f"--s must lie in 0..{args.q}", "s counts negative eigenvalues")
    return cohom.AHBundle(ch, cohom.Nondegenerate(args.s, args.pf))


def _dims(args):
    if args.q < 0 or args.n < 1:
        raise UsageError("need --q >= 0 and --n >= 1", "")


def _cohom_doc(args, h, kind):
    return {
        "q": args.q,
        "n": args.n,
        "d": args.d,
        "bundle": kind,
        "ambient": f"torus_{args.q} x P^{args.n}",
        "hermitian": _bundle(args).hermitian.to_json(),
        "character_trivial": not args.alpha_nontrivial,
        "h": list(h),
    }


def cmd_cohom_line(args):
    _dims(args)
    try:
        h = cohom.product_line_cohomology(args.q, args.n, _bundle(args), args.d)
    except ValueError as exc:
        raise UsageError(str(exc), "") from exc
    return _cohom_doc(args, h, "L(alpha,H,d)"), False


def cmd_cohom_tangent_twist(args):
    _dims(args)
    try:
        h = cohom.product_tangent_twist_cohomology(args.q, args.n, _bundle(args), args.d)
    except ValueError as exc:
        raise UsageError(str(exc), "") from exc
    return _cohom_doc(args, h, "T_X(x)L(alpha,H,d)"), False


def cmd_cohom_contraction(args):
    data = _read_json(args.matrix)
    try:
        H = [[parse_rational(x) if isinstance(x, str) else x for x in row] for row in data]
        rows, surjective = cohom.contraction_map(H)
    except (TypeError, ValueError) as exc:
        raise UsageError(f"bad matrix: {exc}", "give a square JSON array of integers or \"p/q\" strings") from exc
    doc = {
        "q": len(H),
        "matrix": [[format_rational(x) for x in r] for r in rows],
        "surjective": surjective,
        "witnesses": [] if surjective else [{"condition": "contraction map not surjective"}],
    }
    return doc, not surjective


# check


def cmd_check_costability(args):
    data = _read_json(args.divisors)
    if not isinstance(data, list):
        raise UsageError("divisor file must hold a JSON list", "entries look like {\"character\": [1, 0], \"degree\": 2}")
    try:
        divisors = [cohom.DivisorSpec.from_json(e) for e in data]
        r = cohom.costability_check(args.q, args.n, divisors, args.pf)
    except ValueError as exc:
        raise UsageError(str(exc), "check q, n and the divisor count window 1..q+n-3") from exc
    return r.to_json(), not r.passed


def cmd_check_theorem_main(args):
    try:
        r = models.theorem_A_report(args.q, args.n, args.d, args.m)
    except ValueError as exc:
        raise UsageError(str(exc), "need q >= 1 and n >= 2") from exc
    return r.to_json(), not r.passed


def cmd_check_corollary_5(args):
    try:
        r = models.kuranishi_space_report(args.q, args.n)
    except ValueError as exc:
        raise UsageError(str(exc), "need q >= 1 and n >= 1") from exc
    doc = r.to_json()
    doc["witnesses"] = []
    if not r.split.untouched:
        doc["witnesses"].append({"condition": "torus variables occur in a generator"})
    if not r.split.matches:
        doc["witnesses"].append({"condition": "slot generators differ from commuting_ideal"})
    return doc, bool(doc["witnesses"])


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="defkit", description="Exact deformation-theory computations with JSON output.")
    groups = p.add_subparsers(dest="group", required=True, parser_class=_Parser)

    g = groups.add_parser("dgla", help="operations on DGLA files").add_subparsers(dest="cmd", required=True)
    s = g.add_parser("axioms", help="check antisymmetry, Jacobi, d^2 = 0 and Leibniz")
    s.add_argument("--in", dest="infile", required=True)
    s.set_defaults(func=cmd_dgla_axioms)
    s = g.add_parser("cohomology", help="H^i with representatives")
    s.add_argument("--in", dest="infile", required=True)
    s.add_argument("--degree", type=int, required=True)
    s.set_defaults(func=cmd_dgla_cohomology)
    s = g.add_parser("kuranishi", help="Kuranishi map by homotopy transfer")
    s.add_argument("--in", dest="infile", required=True)
    s.add_argument("--order", type=int, required=True)
    s.set_defaults(func=cmd_dgla_kuranishi)
    s = g.add_parser("tensor", help="tensor with an exterior algebra")
    s.add_argument("--in", dest="infile", required=True)
    s.add_argument("--exterior", type=int, required=True)
    s.set_defaults(func=cmd_dgla_tensor)

    g = groups.add_parser("commvar", help="commuting varieties of sl(n)").add_subparsers(dest="cmd", required=True)
    s = g.add_parser("ideal", help="bracket ideal of C(q, sl(n))")
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--sl", type=int, required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_commvar_ideal)
    s = g.add_parser("hilbert", help="Hilbert function of C(q, sl(n))")
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--sl", type=int, required=True)
    s.add_argument("--max-degree", type=int, required=True)
    s.add_argument("--guard", type=int, default=6)
    s.set_defaults(func=cmd_commvar_hilbert)
    s = g.add_parser("bound", help="irreducibility bound for C(q, sl(n))")
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(func=cmd_commvar_bound)
    s = g.add_parser("segre-check", help="C(2, sl(2)) against the 2x3 rank <= 1 locus")
    s.add_argument("--max-degree", type=int, default=4)
    s.set_defaults(func=cmd_commvar_segre_check)

    g = groups.add_parser("cohom", help="line bundle cohomology on torus x P^n").add_subparsers(dest="cmd", required=True)
    for name, func in (("line", cmd_cohom_line), ("tangent-twist", cmd_cohom_tangent_twist)):
        s = g.add_parser(name)
        s.add_argument("--q", type=int, required=True)
        s.add_argument("--n", type=int, required=True, help="projective dimension")
        s.add_argument("--s", type=int, default=0, help="negative eigenvalues of H")
        s.add_argument("--pf", type=int, required=True, help="pfaffian; 0 for the zero form")
        s.add_argument("--d", type=int, required=True)
        s.add_argument("--alpha-nontrivial", action="store_true")
        s.set_defaults(func=func)
    s = g.add_parser("contraction", help="contraction map H^1(T) -> H^2(O) on a torus")
    s.add_argument("--matrix", required=True)
    s.set_defaults(func=cmd_cohom_contraction)

    g = groups.add_parser("check", help="hypothesis checkers").add_subparsers(dest="cmd", required=True)
    s = g.add_parser("costability", help="vanishing conditions for divisors on torus_q x P^{n-1}")
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--divisors", required=True)
    s.add_argument("--pf", type=int, default=1)
    s.set_defaults(func=cmd_check_costability)
    s = g.add_parser("theorem-main", help="complete intersections in torus_q x P^{n-1}")
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--m", type=int)
    s.set_defaults(func=cmd_check_theorem_main)
    s = g.add_parser("corollary-5", help="deformation equations of torus_q x P^n")
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(func=cmd_check_corollary_5)
    return p


def _emit(doc) -> None:
    sys.stdout.write(json.dumps(doc, sort_keys=True, indent=2) + "\n")


def run(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        doc, failed = args.func(args)
    except UsageError as exc:
        _emit({"error": str(exc), "hint": exc.hint})
        return 2
    _emit(doc)
    return 1 if failed else 0


def main() -> None:
    sys.exit(run())
