"""Command-line front end.

Exit codes: 0 success, 1 internal invariant violation, 2 usage error,
3 Gröbner backend refused the instance.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .constants import (
    BACKENDS, K_THEORY, BackendInfeasible, InvalidPoint, constant, equivariant_constant,
    groebner_basis, side_free_sweep, sweep_table,
)
from .grid import DoesNotFit, partition_to_binary
from .groebner import certify
from .ideals import KINDS, BadBoundary, build_ideal, ideal_stats
from .pieces import UnsupportedPieceSet, load_piece_set
from .render import render_tiling

EXIT_INTERNAL, EXIT_USAGE, EXIT_INFEASIBLE = 1, 2, 3


class UsageError(Exception):
    pass


def _word(text: str | None, n: int | None, k: int | None) -> str | None:
    """A binary word, or a comma-separated partition when --n/--k are given."""
    if text is None:
        return None
    text = text.strip()
    if n is not None or k is not None:
        if n is None or k is None:
            raise UsageError("partitions need both --n and --k")
        parts = [int(p) for p in text.split(",") if p.strip()] if text not in ("", "-") else []
        return partition_to_binary(parts, n, k)
    if not text or set(text) - {"0", "1"}:
        raise UsageError(f"{text!r} is not a binary word (use --n/--k for partitions)")
    return text


def _boundary(args, need_nu=True):
    lam = _word(args.lam, args.n, args.k)
    mu = _word(args.mu, args.n, args.k)
    nu = _word(getattr(args, "nu", None), args.n, args.k)
    if lam is None or mu is None or (need_nu and nu is None):
        raise UsageError("--lambda, --mu and --nu are required")
    return lam, mu, nu


def _add_boundary(p, nu=True):
    p.add_argument("--lambda", dest="lam", required=True, help="binary word or partition")
    p.add_argument("--mu", required=True)
    if nu:
        p.add_argument("--nu", required=True)
    p.add_argument("--n", type=int, help="grid size when words are given as partitions")
    p.add_argument("--k", type=int, help="number of ones when words are given as partitions")
    p.add_argument("--pieces", default="O0", help="O0, OT, OA, OB, OC, OD (or Ω-names) or a file")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="puzzle-ideals", description="Puzzle ideals over F3")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("constant", help="count tilings for one boundary")
    _add_boundary(p)
    p.add_argument("--backend", choices=BACKENDS, default="oracle")

    p = sub.add_parser("tilings", help="list tilings as points or pictures")
    _add_boundary(p)
    p.add_argument("--backend", choices=BACKENDS, default="oracle")
    p.add_argument("--points", action="store_true", help="print raw F3 vectors")

    p = sub.add_parser("sweep", help="constants for every word on a free side")
    _add_boundary(p, nu=False)
    p.add_argument("--free", choices=("left", "right", "bottom"), default="bottom")
    p.add_argument("--backend", choices=BACKENDS, default="oracle")

    for name, helptext in (("gb", "dump a reduced Gröbner basis"), ("certify", "check all S-pairs reduce to 0")):
        p = sub.add_parser(name, help=helptext)
        _add_boundary(p)
        p.add_argument("--kind", choices=KINDS[:3], default="full")
        if name == "gb":
            p.add_argument("--ideal", action="store_true", help="dump the generators instead")
            p.add_argument("--certify", action="store_true", help="also certify the basis")

    p = sub.add_parser("render", help="draw the tilings")
    _add_boundary(p)
    p.add_argument("--format", choices=("ascii", "svg"), default="ascii")
    p.add_argument("--labels", action="store_true", help="ASCII: list side labels per cell")
    p.add_argument("--out", help="SVG output file prefix (default: stdout)")
    p.add_argument("--backend", choices=BACKENDS, default="oracle")

    p = sub.add_parser("selftest", help="run the acceptance suite")
    p.add_argument("--only", type=int, action="append", help="criterion number (repeatable)")
    return ap


def _cmd_constant(args, out):
    lam, mu, nu = _boundary(args)
    ps = load_piece_set(args.pieces)
    res = constant(lam, mu, nu, ps, args.backend)
    print(res.count, file=out)
    if ps.id in K_THEORY:
        print(f"signed={res.signed}", file=out)
    if ps.id == "OT":
        print(f"weight={equivariant_constant(lam, mu, nu, ps, args.backend)}", file=out)
    return 0


def _cmd_tilings(args, out):
    lam, mu, nu = _boundary(args)
    ps = load_piece_set(args.pieces)
    res = constant(lam, mu, nu, ps, args.backend, tilings=True)
    for i, t in enumerate(res.tilings):
        if args.points:
            print(",".join(map(str, t.assignment)), file=out)
        else:
            print(f"# tiling {i + 1}", file=out)
            out.write(render_tiling(t, "ascii"))
    return 0


def _cmd_sweep(args, out):
    lam = _word(args.lam, args.n, args.k)
    mu = _word(args.mu, args.n, args.k)
    ps = load_piece_set(args.pieces)
    res = side_free_sweep(lam, mu, args.free, ps, args.backend)
    out.write(sweep_table(res, lam, mu, args.free, ps))
    return 0


def _cmd_gb(args, out):
    lam, mu, nu = _boundary(args)
    ps = load_piece_set(args.pieces)
    if getattr(args, "ideal", False):
        ideal = build_ideal(lam, mu, nu, ps, args.kind)
        out.write(ideal.dump())
        stats = ideal_stats(ideal)
        print("# " + " ".join(f"{k}={v}" for k, v in stats.items()), file=out)
        return 0
    gb = groebner_basis(lam, mu, nu, ps, args.kind)
    if args.command == "certify" or args.certify:
        if not certify(gb):
            print("certification FAILED", file=sys.stderr)
            return EXIT_INTERNAL
        if args.command == "certify":
            print(f"certified: {len(gb)} elements, every S-pair reduces to 0", file=out)
            return 0
    out.write(gb.dump())
    return 0


def _cmd_render(args, out):
    lam, mu, nu = _boundary(args)
    ps = load_piece_set(args.pieces)
    res = constant(lam, mu, nu, ps, args.backend, tilings=True)
    for i, t in enumerate(res.tilings, start=1):
        if args.format == "svg":
            text = render_tiling(t, "svg")
            if args.out:
                Path(f"{args.out}_{i}.svg").write_text(text, encoding="utf-8")
            else:
                out.write(text)
        else:
            print(f"# tiling {i}", file=out)
            out.write(render_tiling(t, "ascii", labels=args.labels))
    if args.out and args.format == "svg":
        print(f"wrote {len(res.tilings)} file(s) with prefix {args.out}", file=out)
    return 0


def _cmd_selftest(args, out):
    from .acceptance import run_all

    results = run_all(lambda line: print(line, file=out, flush=True), set(args.only or []))
    return 0 if all(r.ok for r in results) else EXIT_INTERNAL


COMMANDS = {
    "constant": _cmd_constant, "tilings": _cmd_tilings, "sweep": _cmd_sweep, "gb": _cmd_gb,
    "certify": _cmd_gb, "render": _cmd_render, "selftest": _cmd_selftest,
}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args, out)
    except (UsageError, BadBoundary, DoesNotFit, UnsupportedPieceSet, KeyError, FileNotFoundError, ValueError) as exc:
        if isinstance(exc, InvalidPoint):
            print(f"internal error: {exc}", file=sys.stderr)
            return EXIT_INTERNAL
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BackendInfeasible as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE


if __name__ == "__main__":
    sys.exit(main())
