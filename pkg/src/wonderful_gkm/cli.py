"""Command line interface; every subcommand prints one JSON document on stdout.

Exit codes: 0 success, 1 usage error, 2 computation error, 3 failed verification.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from fractions import Fraction
from typing import Sequence

from . import rootsystem
from .dimcheck import DimensionCapError, tuple_dimension_check
from .expr import DegreeMismatch, ExprSyntaxError, integrate_expr, parse_expr
from .gkm import GKMError, bb_betti
from .rootsystem import RootSystemError
from .symspace import SpaceSyntaxError, SymmetricSpaceError, build_symmetric_space, parse_space
from .verify import verify_suite
from .wonderful import build_wonderful

SCHEMA = "wgkm/1"
EXIT_OK, EXIT_USAGE, EXIT_COMPUTE, EXIT_VERIFY = 0, 1, 2, 3
# above this lattice rank, chern/todd need an explicit --max-degree
RANK_LIMIT = 4

log = logging.getLogger("wonderful_gkm")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def exact(x):
    """Integers stay integers; other rationals become ``"p/q"`` strings."""
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def exact_str(x) -> str:
    return str(exact(x))


def _space(text: str):
    try:
        desc = parse_space(text)
    except SpaceSyntaxError as exc:
        raise UsageError(str(exc)) from exc
    return build_symmetric_space(desc)


def _wonderful(text: str):
    return build_wonderful(_space(text))


def _class_json(W, cls, graph) -> dict:
    return {graph.labels[v]: str(cls[v]) for v in graph.vertices}


def _needs_degree(W, args) -> int | None:
    if args.max_degree is None and W.n > RANK_LIMIT:
        raise UsageError(f"lattice rank {W.n} > {RANK_LIMIT}: pass --max-degree explicitly")
    if args.max_degree is not None and args.max_degree < 0:
        raise UsageError("--max-degree must be non-negative")
    return args.max_degree


# ---------------------------------------------------------------------------
# subcommands

def cmd_describe(args) -> dict:
    s = _space(args.space)
    out = s.describe()
    out["restricted_roots"] = [list(g) for g in s.restricted_roots]
    out["K_minus_L_roots"] = [{"index": k + 1, "beta": list(b), "alpha": list(s.rs.roots[s.alpha_beta(b)])}
                              for k, b in enumerate(s.betas)]
    return out


def cmd_gkm(args) -> dict:
    W = _wonderful(args.space)
    g = W.X if args.variety == "X" else W.Y
    return {
        "space": W.space.label, "variety": args.variety, "dim": g.dim,
        "vertices": [{"label": g.labels[v], "tangent_weights": [list(c) for c in g.tangents[v]]}
                     for v in g.vertices],
        "edges": [{"u": g.labels[e.u], "v": g.labels[e.v], "weight": list(e.weight)} for e in g.edges],
    }


def cmd_chern(args) -> dict:
    W = _wonderful(args.space)
    top = _needs_degree(W, args)
    classes = W.chern_class(args.bundle, args.mode, top)
    graph = W.Y if args.mode == "formula" else W.X
    return {
        "space": W.space.label, "bundle": args.bundle, "mode": args.mode,
        "variety": "Y" if args.mode == "formula" else "X", "max_degree": len(classes) - 1,
        "classes": [{"degree": k, "values": _class_json(W, c, graph)} for k, c in enumerate(classes)],
    }


def cmd_todd(args) -> dict:
    W = _wonderful(args.space)
    top = _needs_degree(W, args)
    cls = W.todd_class(args.bundle, args.mode, top)
    graph = W.Y if args.mode == "formula" else W.X
    return {
        "space": W.space.label, "bundle": args.bundle, "mode": args.mode,
        "variety": "Y" if args.mode == "formula" else "X", "max_degree": cls.max_degree,
        "values": _class_json(W, cls, graph),
    }


def cmd_integrate(args) -> dict:
    try:
        expr = parse_expr(args.expr)
    except ExprSyntaxError as exc:
        raise UsageError(str(exc)) from exc
    W = _wonderful(args.space)
    try:
        value, variety = integrate_expr(W, expr)
    except (DegreeMismatch, IndexError) as exc:
        raise UsageError(str(exc)) from exc
    return {"space": W.space.label, "expr": str(expr), "variety": variety,
            "dim": W.dim_X if variety == "X" else W.dim_Y, "value": exact_str(value)}


def cmd_euler(args) -> dict:
    W = _wonderful(args.space)
    return {"space": W.space.label, "vertices": len(W.X), "euler": exact(W.euler())}


def cmd_betti(args) -> dict:
    W = _wonderful(args.space)
    g = W.X if args.variety == "X" else W.Y
    b = bb_betti(g)
    return {"space": W.space.label, "variety": args.variety, "betti": b, "total": sum(b)}


def cmd_verify(args) -> dict:
    s = _space(args.space)
    rep = verify_suite(s, args.level)
    out = {"space": s.label, "level": args.level, **rep.to_json()}
    if not rep.ok:
        out["_exit"] = EXIT_VERIFY
    return out


def cmd_dims(args) -> dict:
    if args.max_degree < 0:
        raise UsageError("--max-degree must be non-negative")
    W = _wonderful(args.space)
    rows = tuple_dimension_check(W, args.max_degree)
    out = {"space": W.space.label, "rows": [r.to_json() for r in rows], "equal": all(r.agree for r in rows)}
    if not out["equal"]:
        out["_exit"] = EXIT_VERIFY
    return out


DEFAULT_CACHED = ("EF6",)


def cmd_cache(args) -> dict:
    d = rootsystem.cache_dir()
    if args.clear:
        removed = []
        if d.is_dir():
            for p in sorted(d.glob("weyl-*.bin")):
                p.unlink()
                removed.append(p.name)
        return {"cache_dir": str(d), "removed": removed}
    entries = []
    for text in args.spaces or DEFAULT_CACHED:
        s = _space(text)
        path = rootsystem._cache_path(s.rs)
        if path.exists():
            path.unlink()
        w = rootsystem.generate_weyl(s.rs)
        entries.append({"space": s.label, "order": w.order,
                        "file": path.name if path.exists() else None})
    return {"cache_dir": str(d), "rebuilt": entries}


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="wgkm", description="Equivariant Chow rings of wonderful compactifications of minimal rank")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress and timings to stderr")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def space_cmd(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("space", help='e.g. "group:A1", "AC:2", "DB:3", "EF6" or "group:A1,AC:2"')
        sp.set_defaults(func=fn)
        return sp

    space_cmd("describe", cmd_describe, "root data of the symmetric space")
    sp = space_cmd("gkm", cmd_gkm, "GKM graph of X or Y")
    sp.add_argument("--variety", choices=["X", "Y"], default="X")
    for name, fn in (("chern", cmd_chern), ("todd", cmd_todd)):
        sp = space_cmd(name, fn, f"equivariant {'Chern' if name == 'chern' else 'Todd'} classes")
        sp.add_argument("--bundle", choices=["T", "S"], default="T")
        sp.add_argument("--mode", choices=["direct", "formula"], default="direct")
        sp.add_argument("--max-degree", type=int, default=None)
    sp = space_cmd("integrate", cmd_integrate, "integral of a class expression")
    sp.add_argument("--expr", required=True)
    space_cmd("euler", cmd_euler, "Euler number of X by localization")
    sp = space_cmd("betti", cmd_betti, "Betti numbers from cell dimensions")
    sp.add_argument("--variety", choices=["X", "Y"], default="X")
    sp = space_cmd("verify", cmd_verify, "run the verification suite")
    sp.add_argument("--level", choices=["fast", "full"], default="fast")
    sp = space_cmd("dims", cmd_dims, "dimensions of equivariant GKM tuples on X and Y by degree")
    sp.add_argument("--max-degree", type=int, default=3)
    sp = sub.add_parser("cache", help="manage the Weyl group cache")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--rebuild", action="store_true")
    g.add_argument("--clear", action="store_true")
    sp.add_argument("spaces", nargs="*", help="spaces whose Weyl groups to rebuild (default: EF6)")
    sp.set_defaults(func=cmd_cache)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
    log.addHandler(handler)
    log.setLevel(logging.INFO if args.verbose else logging.WARNING)
    try:
        return _dispatch(args)
    finally:
        log.removeHandler(handler)


def _dispatch(args) -> int:
    if args.command == "cache" and args.spaces and args.clear:
        sys.stderr.write("wgkm: error: spaces are only accepted with --rebuild\n")
        return EXIT_USAGE
    t0 = time.perf_counter()
    try:
        out = args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"wgkm: error: {exc}\n")
        return EXIT_USAGE
    except (GKMError, SymmetricSpaceError, RootSystemError, DimensionCapError, ArithmeticError) as exc:
        sys.stderr.write(f"wgkm: computation error: {exc}\n")
        return EXIT_COMPUTE
    code = out.pop("_exit", EXIT_OK)
    doc = {"schema": SCHEMA, "command": args.command, **out}
    sys.stdout.write(json.dumps(doc, indent=2, ensure_ascii=False) + "\n")
    if args.verbose:
        log.info("%s finished in %.2fs", args.command, time.perf_counter() - t0)
    return code


if __name__ == "__main__":
    sys.exit(main())
