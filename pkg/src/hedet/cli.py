"""``hedet`` command-line front end.

Exit codes: 0 success, 1 a check failed, 2 usage or I/O error, 3 budget
exhausted before an answer.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import counterexample as cx
from .exponential import format_functions
from .fractional import chi_f_certificate, tardif_chain_value
from .graph import (
    DimacsError,
    Graph,
    complete,
    cycle,
    format_dimacs,
    mycielski,
    mycielski_chain,
    odd_girth,
    petersen,
    read_dimacs,
    tensor_product,
)
from .solvers import BudgetExhausted, chromatic_number, coloring_cnf, independence_number
from .verifier import PRODUCT_GUARD, frac_str, full_verify, pin_g_clique

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_UNKNOWN = 0, 1, 2, 3


class UsageError(Exception):
    pass


def load_seed(spec: str) -> Graph:
    """Named seed (c<N>, k<N>, petersen, groetzsch) or ``file:<path>``."""
    if spec.startswith("file:"):
        return read_dimacs(spec[5:])
    name = spec.lower()
    if name == "petersen":
        return petersen()
    if name in ("groetzsch", "grotzsch"):
        return mycielski(cycle(5), 2)
    if name[:1] in ("c", "k") and name[1:].isdigit():
        n = int(name[1:])
        try:
            return cycle(n) if name[0] == "c" else complete(n)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    raise UsageError(f"unknown seed {spec!r}")


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _write_report(path: str | None, payload: dict):
    if path:
        Path(path).write_text(json.dumps(payload, indent=2, ensure_ascii=False) + "\n")


def _params(args) -> cx.Params:
    F = load_seed(args.seed)
    q = args.q if args.q is not None else cx.smallest_q(F.n)
    return cx.validate(F, q, args.c, experimental=args.experimental)


def _target(args) -> Graph:
    if args.graph == "F":
        return load_seed(args.seed)
    params = _params(args)
    if args.graph == "G":
        return cx.build_G(params)
    return cx.build_H(params)[0]


# ------------------------------------------------------------------ subcommands

def cmd_verify(args) -> int:
    params = _params(args)
    report = full_verify(params, mode=args.mode, workers=args.workers, budget=args.budget,
                         alpha_bound=args.alpha_bound, product_guard=args.product_guard,
                         timings=not args.no_timings)
    if args.report:
        Path(args.report).write_text(report.dumps())
    for chk in report.checks:
        print(f"{chk.name:17s} {chk.status:8s} {chk.detail}")
    print(f"verdict: {report.verdict}")
    return {"pass": EXIT_OK, "fail": EXIT_FAIL, "unknown": EXIT_UNKNOWN}[report.status]


def cmd_build(args) -> int:
    params = _params(args)
    comments = [f"p={params.p} q={params.q} c={params.c}"]
    if args.what == "F":
        G = params.F
    elif args.what == "G":
        G = cx.build_G(params)
    elif args.what == "H":
        G, verts = cx.build_H(params)
        comments.append("vertices: " + " ".join(y.tag() for y in verts))
    else:
        Gg = cx.build_G(params)
        H, _ = cx.build_H(params)
        if Gg.n * H.n > args.product_guard:
            raise UsageError(f"G x H has {Gg.n * H.n} vertices, over --product-guard")
        G = tensor_product(Gg, H)
    _emit(format_dimacs(G, comments), args.out)
    return EXIT_OK


def cmd_maps(args) -> int:
    params = _params(args)
    verts = cx.h_vertices(params)
    named = [(y.tag(), cx.color_function(y, params)) for y in verts]
    _emit(format_functions(named), args.out)
    return EXIT_OK


def cmd_chi(args) -> int:
    G = _target(args)
    k = chromatic_number(G, args.budget)
    print(k)
    _write_report(args.report, {"graph": args.graph, "n": G.n, "chromatic_number": k})
    return EXIT_OK


def cmd_alpha(args) -> int:
    G = _target(args)
    a = independence_number(G, args.budget)
    print(a)
    _write_report(args.report, {"graph": args.graph, "n": G.n, "independence_number": a,
                                "n_over_alpha": frac_str(Fraction(G.n, a))})
    return EXIT_OK


def cmd_chif(args) -> int:
    G = _target(args)
    cert = chi_f_certificate(G, method=args.method, budget=args.budget)
    cert.check(G)
    print(cert.value)
    _write_report(args.report, {"graph": args.graph, "n": G.n, "chi_f": frac_str(cert.value),
                                "method": cert.method, "cover_sets": len(cert.cover)})
    return EXIT_OK


def cmd_oddgirth(args) -> int:
    G = _target(args)
    og = odd_girth(G)
    print("none" if og is None else og)
    _write_report(args.report, {"graph": args.graph, "n": G.n, "odd_girth": og})
    return EXIT_OK


def cmd_mycielski(args) -> int:
    base = load_seed(args.seed)
    try:
        rvec = [int(tok) for tok in args.chain.split(",") if tok.strip()]
    except ValueError:
        raise UsageError(f"bad --chain {args.chain!r}") from None
    if any(r < 1 for r in rvec):
        raise UsageError("chain entries must be positive")
    M = mycielski_chain(base, rvec)
    og = odd_girth(M)
    info = {"seed": args.seed, "chain": rvec, "n": M.n, "m": M.num_edges(), "odd_girth": og}
    if base.n <= 40:
        base_cf = chi_f_certificate(base).value
        info["seed_chi_f"] = frac_str(base_cf)
        if base_cf > 1:
            info["chi_f_by_formula"] = frac_str(tardif_chain_value(base_cf, rvec))
    for key, val in info.items():
        print(f"{key}: {val}")
    if args.out:
        Path(args.out).write_text(format_dimacs(M, [f"chain {args.chain} of {args.seed}"]))
    _write_report(args.report, info)
    return EXIT_OK


def cmd_cnf(args) -> int:
    params = _params(args)
    H, verts = cx.build_H(params)
    _emit(coloring_cnf(H, params.c, pin_g_clique(verts, params.c)), args.out)
    return EXIT_OK


def cmd_sizes(args) -> int:
    p, q = args.p, args.q if args.q is not None else cx.smallest_q(args.p)
    c = args.c if args.c is not None else 3 * q + 2
    info = {"p": p, "q": q, "c": c, "G_vertices": p * q, "H_vertices": cx.h_vertex_count(p, q, c)}
    if q == cx.smallest_q(p) and c == 3 * q + 2:
        info["H_vertices_closed_form"] = cx.h_vertex_count_closed(p)
    print(f"|V(G)| = {info['G_vertices']}")
    print(f"|V(H)| = {info['H_vertices']}")
    _write_report(args.report, info)
    return EXIT_OK


# ----------------------------------------------------------------------- parser

def _positive(text: str) -> int:
    try:
        val = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if val < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return val


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hedet", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def seeded(name, help_, instance=True, graph_choice=False):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--seed", default="c7", help="c<N>, k<N>, petersen, groetzsch or file:<path>")
        if instance or graph_choice:
            sp.add_argument("--q", type=_positive, default=None)
            sp.add_argument("--c", type=_positive, default=None)
            sp.add_argument("--experimental", action="store_true",
                            help="allow c = 3q+3 or 3q+4")
        if graph_choice:
            sp.add_argument("--graph", choices=["F", "G", "H"], default="F")
        sp.add_argument("--budget", type=_positive, default=None)
        sp.add_argument("--report", default=None)
        sp.add_argument("--product-guard", type=_positive, default=PRODUCT_GUARD)
        return sp

    sp = seeded("verify", "run every check on an instance")
    sp.add_argument("--mode", choices=["structured", "bruteforce"], default="structured")
    sp.add_argument("--workers", type=_positive, default=1)
    sp.add_argument("--alpha-bound", type=_positive, default=None,
                    help="claimed upper bound on alpha(F), verified by search")
    sp.add_argument("--no-timings", action="store_true", help="omit wall times from the report")
    sp.set_defaults(func=cmd_verify)

    sp = seeded("build", "emit F, G, H or G x H as DIMACS")
    sp.add_argument("--what", choices=["F", "G", "H", "product"], default="H")
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_build)

    sp = seeded("maps", "emit every H-vertex as a colour function on G")
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_maps)

    sp = seeded("cnf", "emit chi(H) <= c with g_i -> i as DIMACS CNF")
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_cnf)

    for name, func, help_ in [("chi", cmd_chi, "exact chromatic number"),
                              ("alpha", cmd_alpha, "exact independence number"),
                              ("oddgirth", cmd_oddgirth, "odd girth"),
                              ("chif", cmd_chif, "exact fractional chromatic number")]:
        sp = seeded(name, help_, instance=False, graph_choice=True)
        if name == "chif":
            sp.add_argument("--method", choices=["auto", "enumerate", "columns"], default="auto")
        sp.set_defaults(func=func)

    sp = seeded("mycielski", "iterate the generalized Mycielski construction", instance=False)
    sp.add_argument("--chain", default="3,3,3,3")
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_mycielski)

    sp = sub.add_parser("sizes", help="vertex counts of G and H")
    sp.add_argument("--p", type=_positive, required=True)
    sp.add_argument("--q", type=_positive, default=None)
    sp.add_argument("--c", type=_positive, default=None)
    sp.add_argument("--report", default=None)
    sp.set_defaults(func=cmd_sizes)
    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args)
    except BudgetExhausted as exc:
        print(f"hedet: {exc}", file=sys.stderr)
        return EXIT_UNKNOWN
    except BrokenPipeError:
        # output piped into head and friends
        sys.stderr.close()
        return EXIT_OK
    except (UsageError, cx.InvalidParams, DimacsError, OSError, ValueError) as exc:
        print(f"hedet: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
