"""Command line interface: ``hfk compute|verify|states|builtin``.

Exit codes: 0 success, 1 invalid input, 2 a verification failed,
3 a resource cap (chain depth) was hit.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from .algebra import all_matchings
from .bimodules import (
    InvalidContext,
    maxima_d_structure,
    minimum_bimodule,
    minimum_context,
    negative_crossing,
    positive_crossing,
    trivial_bimodule,
)
from .dstructures import DepthExceeded, IncompatibleBoundary, verify_d_structure, verify_da_bimodule
from .engine import NotADifferential, VerificationFailed, compute
from .kauffman import (
    DiagramError,
    closed_diagram,
    enumerate_closed_states,
    enumerate_partial_states,
    enumerate_upper_states,
)
from .knots import ValidationError, builtin, builtin_names, from_json, from_text, normalize

EXIT_OK, EXIT_INVALID, EXIT_VERIFY, EXIT_CAP = 0, 1, 2, 3


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def load_input(path: str):
    """Read a presentation from a JSON or text file; a built-in name also works."""
    if not os.path.exists(path):
        if path in builtin_names():
            p = builtin(path)
            return p, path
        raise CliError(f"no such file: {path}", EXIT_INVALID)
    with open(path, encoding="utf-8") as fh:
        raw = fh.read()
    try:
        if raw.lstrip().startswith("{"):
            return from_json(json.loads(raw)), os.path.basename(path)
        return from_text(raw), os.path.basename(path)
    except json.JSONDecodeError as e:
        raise CliError(f"{path}: invalid JSON: {e}", EXIT_INVALID) from None
    except ValueError as e:
        raise CliError(f"{path}: {e}", EXIT_INVALID) from None


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ": "), indent=2)


# -- compute ----------------------------------------------------------------------


def cmd_compute(args) -> int:
    p, _ = load_input(args.input)
    try:
        res = compute(p, verify_each=args.verify_each, depth_cap=args.depth_cap,
                      threads=args.threads, associate_left=args.associate_left)
    except VerificationFailed as e:
        print(f"verification failed at level {e.level}: {e.report.summary()}", file=sys.stderr)
        return EXIT_VERIFY
    except NotADifferential as e:
        print(str(e), file=sys.stderr)
        return EXIT_VERIFY
    except DepthExceeded as e:
        print(f"depth cap hit: {e}", file=sys.stderr)
        return EXIT_CAP
    except (ValidationError, IncompatibleBoundary, InvalidContext) as e:
        print(str(e), file=sys.stderr)
        return EXIT_INVALID
    if args.json:
        out = res.to_json(p.to_json())
        if args.emit in ("complex", "all"):
            out["complex"] = res.structure.to_json()
            out["hat_matrix"] = res.matrix.to_json()
        print(_dump(out))
        return EXIT_OK
    if args.emit in ("ranks", "all"):
        print(f"generators: {len(res.structure)}, hat_rank: {res.hat_rank}")
    if args.emit in ("complex", "all"):
        print(_dump({"complex": res.structure.to_json(), "hat_matrix": res.matrix.to_json()}))
    return EXIT_OK


# -- verify -----------------------------------------------------------------------


def _verify_algebra(n: int, exp_cap: int):
    from .laws import check_algebra_laws
    return check_algebra_laws(n, exp_cap)


def cmd_verify(args) -> int:
    n, t = args.n, args.target
    if n < 1:
        raise CliError("--n must be at least 1", EXIT_INVALID)
    reports = []
    if t == "algebra":
        reports.append(_verify_algebra(n, args.exp_cap))
    elif t == "d":
        reports.append(verify_d_structure(maxima_d_structure(n)))
    elif t == "trivial":
        reports.append(verify_da_bimodule(trivial_bimodule(n), args.arity_cap, args.exp_cap))
    elif t in ("crossing-pos", "crossing-neg", "da"):
        makers = {"crossing-pos": [positive_crossing], "crossing-neg": [negative_crossing],
                  "da": [positive_crossing, negative_crossing]}[t]
        if t == "da":
            reports.append(verify_da_bimodule(trivial_bimodule(n), args.arity_cap, args.exp_cap))
        positions = [args.pos] if args.pos else range(1, 2 * n)
        for pos in positions:
            if not 1 <= pos <= 2 * n - 1:
                raise CliError(f"--pos must lie in 1..{2 * n - 1}", EXIT_INVALID)
            for make in makers:
                reports.append(verify_da_bimodule(make(n, pos), args.arity_cap, args.exp_cap))
    elif t == "min":
        ctxs = []
        for m in all_matchings(n):
            try:
                ctxs.append(minimum_context(m))
            except InvalidContext:
                continue
        if not ctxs:
            raise CliError(f"no minimum fits below {2 * n} strands", EXIT_INVALID)
        for ctx in ctxs:
            reports.append(verify_da_bimodule(minimum_bimodule(ctx), args.arity_cap, args.exp_cap))
    ok = True
    for r in reports:
        print(r.summary())
        if not r.passed:
            ok = False
            for f in r.failures[:args.show]:
                print(f"  {f}")
    return EXIT_OK if ok else EXIT_VERIFY


# -- states -----------------------------------------------------------------------


def cmd_states(args) -> int:
    p, _ = load_input(args.input)
    ev = normalize(p).kauffman_events()
    try:
        if args.level == "closed":
            states = enumerate_closed_states(closed_diagram(p.caps, ev))
        elif args.level == "upper":
            upto = len(ev) - 1 if args.bottom is None else args.bottom
            states = enumerate_upper_states(p.caps, ev[:upto])
        else:
            bottom = len(ev) - 1 if args.bottom is None else args.bottom
            states = enumerate_partial_states(p.caps, ev, args.top, bottom)
    except (DiagramError, IndexError) as e:
        raise CliError(f"cannot enumerate {args.level} states: {e}", EXIT_INVALID) from None
    if args.json:
        print(_dump({"level": args.level, "count": len(states), "states": [s.to_json() for s in states]}))
    else:
        print(f"{args.level} states: {len(states)}")
    return EXIT_OK


# -- builtin ----------------------------------------------------------------------


def cmd_builtin(args) -> int:
    if args.list:
        for name in builtin_names():
            print(f"{name}: {builtin(name).text()}")
        return EXIT_OK
    try:
        p = builtin(args.name)
    except KeyError as e:
        raise CliError(str(e.args[0]), EXIT_INVALID) from None
    print(_dump(p.to_json()))
    return EXIT_OK


# -- entry point --------------------------------------------------------------------


def _depth_cap_env() -> int:
    raw = os.environ.get("HFK_DEPTH_CAP", "64")
    try:
        return int(raw)
    except ValueError:
        raise CliError(f"HFK_DEPTH_CAP must be an integer, got {raw!r}", EXIT_INVALID) from None


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hfk", description="Combinatorial knot Floer homology via bordered bimodules.")
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", help="fold a presentation into its complex and report hat homology")
    c.add_argument("-i", "--input", required=True, help="hfk-plat-v1 JSON, text presentation, or built-in name")
    c.add_argument("--emit", choices=["ranks", "complex", "all"], default="ranks")
    c.add_argument("--verify-each", action="store_true", help="check every intermediate structure")
    c.add_argument("--depth-cap", type=int, default=None, help="chain depth cap (default $HFK_DEPTH_CAP or 64)")
    c.add_argument("--json", action="store_true")
    c.add_argument("--associate-left", action="store_true", help="compose the bimodules before boxing")
    c.add_argument("--threads", type=int, default=1)
    c.set_defaults(func=cmd_compute)

    v = sub.add_parser("verify", help="run a structure-equation sweep")
    v.add_argument("--target", required=True,
                   choices=["algebra", "d", "da", "crossing-pos", "crossing-neg", "min", "trivial"])
    v.add_argument("--n", type=int, default=2, help="strand pairs (for min: above the minimum)")
    v.add_argument("--pos", type=int, default=None, help="crossing position (default: all)")
    v.add_argument("--arity-cap", type=int, default=3)
    v.add_argument("--exp-cap", type=int, default=2)
    v.add_argument("--show", type=int, default=5, help="failures to print per report")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("states", help="enumerate Kauffman states")
    s.add_argument("-i", "--input", required=True)
    s.add_argument("--level", choices=["closed", "upper", "partial"], required=True)
    s.add_argument("--top", type=int, default=0, help="upper slice of a partial band")
    s.add_argument("--bottom", type=int, default=None,
                   help="lower slice (default: the level just above the global minimum)")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_states)

    b = sub.add_parser("builtin", help="list or print built-in presentations")
    g = b.add_mutually_exclusive_group(required=True)
    g.add_argument("--list", action="store_true")
    g.add_argument("--name")
    b.set_defaults(func=cmd_builtin)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_INVALID if e.code else EXIT_OK
    try:
        if getattr(args, "depth_cap", "unset") is None:
            args.depth_cap = _depth_cap_env()
        return args.func(args)
    except CliError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.code
    except DepthExceeded as e:
        print(f"depth cap hit: {e}", file=sys.stderr)
        return EXIT_CAP


if __name__ == "__main__":
    sys.exit(main())
