"""Command-line front end: ``pgpoly <subcommand> ...``.

Exit status: 0 success (or verify true), 1 verify false / no mate exists,
2 usage error, 3 refusal by a guard, step budget or unsupported case.
"""
from __future__ import annotations

import argparse
import json
import logging
import math
import sys

from . import kernels
from .counting import (
    DEFAULT_GUARD,
    count_equivalents,
    count_klenian,
    count_report,
    count_t31,
    normalizer_bruteforce,
)
from .errors import BudgetExceeded, GuardExceeded, PGPError, UnsupportedCase
from .ffield import make_field
from .formats import FORMATS, dump_square, pair_json, parse_grid
from .groups import KlenianParams, T31Params, klenian_group, t31_group
from .lpp import (
    DEFAULT_MATE_BUDGET,
    LatinSquare,
    PermTuple,
    are_orthogonal,
    companion_h,
    companion_tuple,
    is_latin,
    mate_search,
    tuple_to_square,
)
from .poly import interpolate_bivariate

log = logging.getLogger("pgpoly")

EXIT_OK, EXIT_FALSE, EXIT_USAGE, EXIT_REFUSED = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _params(args):
    if args.family == "t31":
        if args.delta is None:
            raise UsageError("--family t31 needs --delta (1 or 2)")
        return T31Params(args.p, args.n, args.delta)
    if args.e is None:
        raise UsageError("--family klenian needs --e")
    return KlenianParams(args.p, args.n, args.e)


def _group(params):
    return t31_group(params) if isinstance(params, T31Params) else klenian_group(params)


def _emit(text: str, path=None):
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _read_grids(path):
    try:
        with open(path) as fh:
            return parse_grid(fh.read())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}")
    except (ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"cannot parse square file {path}: {exc}")


def cmd_construct(args):
    g = _group(_params(args))
    sq = tuple_to_square(PermTuple.from_group(g))
    if args.group_out:
        with open(args.group_out, "w") as fh:
            json.dump(g.to_json(), fh)
            fh.write("\n")
    _emit(dump_square(sq, args.format or "text"), args.output)
    return EXIT_OK


def cmd_companion(args):
    params = _params(args)
    g = _group(params)
    t = PermTuple.from_group(g)
    sq = tuple_to_square(t)
    try:
        if not isinstance(params, T31Params):
            raise UnsupportedCase(
                "no closed-form companion is constructed for the klenian family; use --mate-search"
            )
        h = companion_h(params)
        mate = tuple_to_square(companion_tuple(t, h))
        method = "closed-form"
    except UnsupportedCase as exc:
        if not args.mate_search:
            raise
        log.warning("%s; falling back to mate_search (budget %d)", exc, args.budget)
        mate = mate_search(sq, args.budget)
        if mate is None:
            print("error: mate_search exhausted: no orthogonal mate exists", file=sys.stderr)
            return EXIT_FALSE
        method = "mate-search"
    orth = are_orthogonal(sq, mate)
    fmt = args.format or "text"
    if fmt == "json":
        _emit(json.dumps(pair_json(sq, mate, method=method)) + "\n", args.output)
    else:
        _emit(dump_square(mate, fmt), args.output)
        print(f"orthogonal: {str(orth).lower()} (method: {method})", file=sys.stderr)
    return EXIT_OK if orth else EXIT_FALSE


def cmd_interpolate(args):
    grids = _read_grids(args.square)
    field = make_field(args.p, args.n)
    table = grids[0]
    if len(table) != field.q or any(len(row) != field.q for row in table):
        raise UsageError(f"square is not {field.q}x{field.q} (q = {args.p}^{args.n})")
    P = interpolate_bivariate(field, table)
    if (args.format or "json") == "json":
        _emit(json.dumps(P.to_json()) + "\n", args.output)
    else:
        _emit(str(P) + "\n", args.output)
    return EXIT_OK


def cmd_count(args):
    params = _params(args)
    if isinstance(params, T31Params):
        family, closed = "t31", count_t31(params)
    else:
        family, closed = "klenian", count_klenian(params)
    oracle = None
    if args.verify_oracle:
        nrm = normalizer_bruteforce(_group(params), args.guard)
        oracle = math.factorial(params.q) ** 2 // nrm
    rep = count_report(family, params, closed, oracle)
    if (args.format or "json") == "json":
        _emit(json.dumps(rep) + "\n", args.output)
    else:
        lines = [f"{k}: {'' if v is None else v}" for k, v in rep.items() if k != "params"]
        _emit("\n".join(lines) + "\n", args.output)
    if rep["match"] is False:
        return EXIT_FALSE
    return EXIT_OK


def cmd_equivalents(args):
    g = _group(_params(args))
    n = count_equivalents(g, args.guard, use_shortcut=not args.no_shortcut)
    if (args.format or "text") == "json":
        _emit(json.dumps({"equivalents": str(n)}) + "\n", args.output)
    else:
        _emit(f"{n}\n", args.output)
    return EXIT_OK


def cmd_verify(args):
    grids = _read_grids(args.square)
    if args.square2:
        grids = grids[:1] + _read_grids(args.square2)[:1]
    latin = [is_latin(g) for g in grids]
    verdict = {"latin": latin}
    ok = all(latin)
    if len(grids) == 2:
        orth = ok and len(grids[0]) == len(grids[1]) and are_orthogonal(LatinSquare(grids[0]), LatinSquare(grids[1]))
        verdict["orthogonal"] = orth
        ok = orth
    if (args.format or "text") == "json":
        _emit(json.dumps(verdict) + "\n", args.output)
    else:
        text = "latin: " + " ".join(str(v).lower() for v in latin)
        if "orthogonal" in verdict:
            text += f"\northogonal: {str(verdict['orthogonal']).lower()}"
        _emit(text + "\n", args.output)
    return EXIT_OK if ok else EXIT_FALSE


def _family_args(sp):
    sp.add_argument("--family", choices=("t31", "klenian"), required=True)
    sp.add_argument("--p", type=int, required=True, help="characteristic")
    sp.add_argument("--n", type=int, required=True, help="extension degree")
    sp.add_argument("--delta", type=int, help="t31 block exponent (1 or 2)")
    sp.add_argument("--e", type=int, help="klenian block exponent")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, help="output format (default depends on subcommand)")
    common.add_argument("-o", "--output", help="write the primary artifact here instead of stdout")
    common.add_argument("--backend", choices=kernels.BACKENDS, help="kernel backend (default: numba when available)")
    common.add_argument("-v", "--verbose", action="count", default=0, help="progress on stderr (-vv for shard detail)")

    ap = argparse.ArgumentParser(prog="pgpoly", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("construct", parents=[common], help="group JSON and its Latin square")
    _family_args(sp)
    sp.add_argument("--group-out", help="also write the ordered group as JSON")
    sp.set_defaults(func=cmd_construct)

    sp = sub.add_parser("companion", parents=[common], help="companion square with orthogonality attestation")
    _family_args(sp)
    sp.add_argument("--mate-search", action="store_true", help="fall back to backtracking when no closed form applies")
    sp.add_argument("--budget", type=int, default=DEFAULT_MATE_BUDGET, help="mate_search step budget")
    sp.set_defaults(func=cmd_companion)

    sp = sub.add_parser("interpolate", parents=[common], help="bivariate polynomial of a square")
    sp.add_argument("--square", required=True)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.set_defaults(func=cmd_interpolate)

    sp = sub.add_parser("count", parents=[common], help="closed-form count, optionally checked by S_q scan")
    _family_args(sp)
    sp.add_argument("--verify-oracle", action="store_true")
    sp.add_argument("--guard", type=int, default=DEFAULT_GUARD, help="largest q allowed for brute-force scans")
    sp.set_defaults(func=cmd_count)

    sp = sub.add_parser("equivalents", parents=[common], help="number of equivalent polynomials")
    _family_args(sp)
    sp.add_argument("--no-shortcut", action="store_true", help="count the centralizer by brute force")
    sp.add_argument("--guard", type=int, default=DEFAULT_GUARD, help="largest q allowed for brute-force scans")
    sp.set_defaults(func=cmd_equivalents)

    sp = sub.add_parser("verify", parents=[common], help="Latin and orthogonality verdicts")
    sp.add_argument("--square", required=True)
    sp.add_argument("--square2")
    sp.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    logging.basicConfig(
        level=(logging.WARNING, logging.INFO, logging.DEBUG)[min(args.verbose, 2)],
        format="%(levelname)s: %(message)s",
        stream=sys.stderr,
    )
    kernels.set_backend(args.backend or ("numba" if kernels.HAVE_NUMBA else "numpy"))
    try:
        return args.func(args)
    except UsageError as exc:
        ap.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (GuardExceeded, BudgetExceeded, UnsupportedCase) as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    except PGPError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    finally:
        kernels.set_backend(None)


if __name__ == "__main__":
    sys.exit(main())
