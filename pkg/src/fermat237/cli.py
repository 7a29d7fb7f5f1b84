"""Command-line interface: ``fermat237 <subcommand> ...``.

Exit codes: 0 success, 2 usage or parse error, 3 a mathematical
precondition failed, 4 the local test was inconclusive.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import covariants as cov
from . import localtest, models, sieve, solutions, twists, zeta
from .forms import DegreeError, EliminationError, TernaryForm
from .points import ProjPoint

EXIT_MATH = 3
EXIT_INCONCLUSIVE = 4


class MathError(Exception):
    pass


def _curve(text: str) -> TernaryForm:
    try:
        return twists.curve(text)
    except (ValueError, KeyError) as exc:
        raise argparse.ArgumentTypeError(f"cannot parse curve {text!r}: {exc}") from None


def _json_value(v):
    if v is cov.INF:
        return "inf"
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, TernaryForm):
        return str(v)
    if isinstance(v, (tuple, list)):
        return [_json_value(x) for x in v]
    return v


class Output:
    def __init__(self, fmt: str, stream=None):
        self.fmt = fmt
        self.stream = stream or sys.stdout

    def emit(self, text: str, **record):
        if self.fmt == "json":
            line = json.dumps({k: _json_value(v) for k, v in record.items()}, sort_keys=True)
        else:
            line = text
        print(line, file=self.stream)


def _point(args) -> tuple[int, int, int]:
    return (args.x, args.y, args.z)


# -- subcommands --------------------------------------------------------------


def cmd_covariants(args, out: Output) -> int:
    cs = cov.covariants(args.poly)
    out.emit(f"psi0 {twists.format_j(cs.psi0)}", name="psi0", value=cs.psi0)
    for name in ("psi6", "psi14", "psi21"):
        g = getattr(cs, name)
        out.emit(f"{name} {g}", name=name, value=g)
    return 0


def cmd_j(args, out: Output) -> int:
    j = cov.j_invariant(args.poly, _point(args))
    out.emit(twists.format_j(j), point=str(ProjPoint(*_point(args))), j=twists.format_j(j))
    return 0


def cmd_recover(args, out: Output) -> int:
    r = solutions.recover_solution(args.poly, _point(args))
    if isinstance(r, solutions.NoPrimitiveScaling):
        out.emit(f"- p={r.prime}", point=str(r.point), solution=None, obstruction=r.prime)
    else:
        out.emit(f"{r.a} {r.b} {r.c}", solution=[r.a, r.b, r.c])
    return 0


def cmd_localtest(args, out: Output) -> int:
    v = localtest.local_test(args.poly, args.p, args.max_depth)
    for rc in v.admissible_classes:
        out.emit(f"{args.p} {rc} admissible", p=args.p, cls=str(rc), verdict="admissible",
                 reduction=list(rc.reduction()))
    for rc in v.inconclusive_classes:
        out.emit(f"{args.p} {rc} inconclusive", p=args.p, cls=str(rc), verdict="inconclusive")
    status = "inconclusive" if v.max_depth_reached and not v.passes else ("passes" if v.passes else "fails")
    out.emit(f"{args.p} {status}", p=args.p, result=status)
    if v.max_depth_reached:
        return EXIT_INCONCLUSIVE
    return 0


def _subset_filter(F: TernaryForm, max_depth: int):
    allowed = {}
    for p in (2, 3):
        v = localtest.local_test(F, p, max_depth)
        if v.max_depth_reached:
            raise MathError(f"local test at {p} inconclusive; cannot form the subset filter")
        allowed[p] = v.reductions()
    return solutions.residue_filter(allowed)


def cmd_search(args, out: Output) -> int:
    flt = _subset_filter(args.curve, args.max_depth) if args.subset else None
    for pt in solutions.point_search(args.curve, args.bound, flt):
        out.emit(str(pt), point=[pt.x, pt.y, pt.z])
    return 0


def _label(text: str) -> str:
    return text.strip()


def cmd_count(args, out: Output) -> int:
    F = _curve(args.curve)
    fq = zeta.field(args.p, args.k)
    n = zeta.count_points(F, fq)
    out.emit(f"{args.curve} {args.p} {args.k} {n}", curve=args.curve, p=args.p, k=args.k, N=n,
             modulus=list(fq.modulus))
    return 0


def cmd_jacobian_order(args, out: Output) -> int:
    F = _curve(args.curve)
    lp = zeta.l_polynomial(F, args.p)
    order = lp(1)
    out.emit(f"{args.curve} {args.p} {lp.e1} {lp.e2} {lp.e3} {order}", curve=args.curve, p=args.p,
             e1=lp.e1, e2=lp.e2, e3=lp.e3, order=order)
    return 0


def _read_data_file(path: str, suffix: str) -> str:
    p = Path(path)
    if p.exists():
        return p.read_text()
    from importlib import resources

    name = p.name if p.name.endswith(suffix) else p.name + suffix
    res = resources.files("fermat237").joinpath(f"data/{name}")
    if res.is_file():
        return res.read_text()
    raise argparse.ArgumentTypeError(f"no such file or builtin fixture: {path}")


def cmd_component_group(args, out: Output) -> int:
    data = models.parse_matrix_file(_read_data_file(args.matrix_file, ".mat"))
    g = models.component_group(data)
    out.emit(str(g), invariant_factors=list(g.invariant_factors), order=g.order)
    return 0


def _print_state(name: str, state: sieve.SieveState, out: Output):
    triples = sorted(state.survivors)
    mod = " ".join(map(str, state.modulus))
    out.emit(f"{name}: mod {mod}: {len(triples)} survivors", step=name, modulus=list(state.modulus),
             count=len(triples), survivors=[list(t) for t in triples])


def cmd_sieve(args, out: Output) -> int:
    if args.c5_chain:
        for name, state in sieve.c5_chain_steps():
            _print_state(f"after {name}", state, out)
        return 0
    state = sieve.SieveState.full()
    for path in args.files:
        c = sieve.parse_constraint_file(_read_data_file(path, ".txt"))
        state = sieve.combine(state, c)
    _print_state("result", state, out)
    if out.fmt == "text":
        for t in sorted(state.survivors):
            out.emit(" ".join(map(str, t)))
    return 0


def cmd_septic(args, out: Output) -> int:
    curve = solutions.SepticCurve(args.c1, args.c2, args.c3)
    for pt in solutions.septic_search(curve, args.bound):
        out.emit(str(pt), point=[pt.x, pt.y, pt.z])
    return 0


def cmd_twists(args, out: Output) -> int:
    if args.kind == "case1":
        for t in twists.enumerate_case1():
            out.emit(f"{t.a} {t.b} {t.c}", twist=[t.a, t.b, t.c])
        return 0
    e = twists.EllipticCoeffs(args.a, args.b)
    F = twists.x_e7_minus_quartic(e) if args.minus else twists.x_e7_quartic(e)
    out.emit(str(F), quartic=F)
    return 0


def cmd_verify_theorem(args, out: Output) -> int:
    sols = sorted(solutions.reproduce_theorem(), key=lambda s: (abs(s.c), abs(s.b), s.b, s.a, s.c))
    for s in sols:
        out.emit(f"{s.a} {s.b} {s.c}", solution=[s.a, s.b, s.c])
    return 0


# -- parser ---------------------------------------------------------------------


def _prime_237(text: str) -> int:
    p = int(text)
    if p not in (2, 3, 7):
        raise argparse.ArgumentTypeError("p must be 2, 3 or 7")
    return p


def build_parser() -> argparse.ArgumentParser:
    default_depth = int(os.environ.get("FERMAT237_MAX_DEPTH", localtest.DEFAULT_MAX_DEPTH))
    ap = argparse.ArgumentParser(prog="fermat237", description="Exact computations for x^2 + y^3 = z^7.")
    ap.add_argument("--format", choices=("text", "json"), default="text")
    sub = ap.add_subparsers(dest="command", required=True)

    def with_point(p):
        p.add_argument("poly", type=_curve, help="catalog label (C1..C10) or quartic")
        for c in "xyz":
            p.add_argument(c, type=int)

    p = sub.add_parser("covariants", help="psi0, psi6, psi14, psi21 of a quartic")
    p.add_argument("poly", type=_curve)
    p.set_defaults(func=cmd_covariants)

    p = sub.add_parser("j", help="j-map at a point")
    with_point(p)
    p.set_defaults(func=cmd_j)

    p = sub.add_parser("recover", help="primitive solution from a point")
    with_point(p)
    p.set_defaults(func=cmd_recover)

    p = sub.add_parser("localtest", help="p-adic local test")
    p.add_argument("poly", type=_curve)
    p.add_argument("--p", type=_prime_237, required=True)
    p.add_argument("--max-depth", type=int, default=default_depth)
    p.set_defaults(func=cmd_localtest)

    p = sub.add_parser("search", help="bounded rational point search")
    p.add_argument("curve", type=_curve)
    p.add_argument("--bound", type=int, required=True)
    p.add_argument("--subset", action="store_true", help="keep points whose reductions pass the local test at 2 and 3")
    p.add_argument("--max-depth", type=int, default=default_depth)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("count", help="#C(F_{p^k})")
    p.add_argument("curve", type=_label)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--k", type=int, default=1, choices=(1, 2, 3, 4))
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("jacobian-order", help="#J(F_p) from the L-polynomial")
    p.add_argument("curve", type=_label)
    p.add_argument("--p", type=int, required=True)
    p.set_defaults(func=cmd_jacobian_order)

    p = sub.add_parser("component-group", help="component group from a matrix file")
    p.add_argument("matrix_file")
    p.set_defaults(func=cmd_component_group)

    p = sub.add_parser("sieve", help="combine sieve constraint files")
    p.add_argument("files", nargs="*")
    p.add_argument("--c5-chain", action="store_true", help="run the builtin C5 chain")
    p.set_defaults(func=cmd_sieve)

    p = sub.add_parser("septic", help="points on c1 X^7 + c2 Y^7 + c3 Z^7 = 0")
    for c in ("c1", "c2", "c3"):
        p.add_argument(c, type=int)
    p.add_argument("--bound", type=int, required=True)
    p.set_defaults(func=cmd_septic)

    p = sub.add_parser("twists", help="Case-1 twists or X_E(7) quartics")
    tw = p.add_subparsers(dest="kind", required=True)
    tw.add_parser("case1")
    fc = tw.add_parser("from-curve")
    fc.add_argument("a", type=int)
    fc.add_argument("b", type=int)
    fc.add_argument("--minus", action="store_true")
    p.set_defaults(func=cmd_twists)

    p = sub.add_parser("verify-theorem", help="recover all primitive solutions from the catalog")
    p.set_defaults(func=cmd_verify_theorem)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    out = Output(args.format)
    try:
        return args.func(args, out)
    except argparse.ArgumentTypeError as exc:
        ap.error(str(exc))
    except (MathError, ValueError, ArithmeticError, DegreeError, EliminationError, KeyError,
            localtest.HenselInconclusive) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INCONCLUSIVE if isinstance(exc, localtest.HenselInconclusive) else EXIT_MATH


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
