"""The acceptance suite, shared by ``tests/test_acceptance.py`` and ``selftest``."""

from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass, field
from importlib import resources
from itertools import product
from typing import Callable

from .constants import (
    constant, equivariant_constant, point_to_tiling, side_free_basis, side_free_sweep, sweep_table,
)
from .gf3 import Poly
from .grid import binary_to_partition, binary_words, build_grid, cell_sides, DOWN, UP, word_size
from .groebner import (
    GroebnerBasis, MonomialOrder, buchberger, certify, eliminate, enumerate_variety, intersect,
    point_decomposition,
)
from .ideals import build_ideal
from .oracle import brute_force_tilings, lr_from_words
from .pieces import ATOMIC, BUILTIN_IDS, builtin_piece_set, reference_placement
from .synthesis import atomic_assignments, template_bundle


def fixture_text(name: str) -> str:
    return resources.files("puzzle_ideals").joinpath("fixtures").joinpath(name).read_text(encoding="utf-8")


def fixture_json(name: str):
    return json.loads(fixture_text(name))


@dataclass
class Outcome:
    number: int
    title: str
    ok: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"{status} [{self.number}] {self.title}: {self.detail} ({self.seconds:.1f}s)"


@dataclass
class Context:
    bases: dict = field(default_factory=dict)   # criterion -> list of GroebnerBasis

    def keep(self, criterion: int, gb: GroebnerBasis):
        self.bases.setdefault(criterion, []).append(gb)


def _lex(N):
    return MonomialOrder.lex(range(1, N + 1))


# 1 -----------------------------------------------------------------------------------

def criterion_1(ctx: Context) -> tuple[bool, str]:
    fx = fixture_json("n6_points.json")
    lam, mu, nu = fx["lambda"], fx["mu"], fx["nu"]
    ps = builtin_piece_set("O0")
    ideal = build_ideal(lam, mu, nu, ps, "full")
    gb = buchberger(ideal.generators(), _lex(ideal.grid.N))
    ctx.keep(1, gb)
    pts = enumerate_variety(gb)
    expected = sorted(tuple(p) for p in fx["points"])
    if pts != expected:
        return False, f"got {len(pts)} points, differing from the reference pair"
    reference = fixture_json("n6_stitched.json")["tilings"]
    for pt, ref in zip(pts, reference):
        t = point_to_tiling(pt, ps, 6)
        got = sorted([q.shape, q.anchor[0], q.anchor[1], list(q.piece.values)] for q in t.recovered)
        if got != sorted(ref):
            return False, "stitched tiling differs from the reference"
    return True, "2 points equal the reference vectors; stitched tilings match"


# 2 -----------------------------------------------------------------------------------

def criterion_2(ctx: Context) -> tuple[bool, str]:
    golden = fixture_text("n16_sweep.txt")
    header = golden.splitlines()[0]
    opts = dict(kv.split("=") for kv in header[1:].split())
    ps = builtin_piece_set(opts["pieces"])
    res = side_free_sweep(opts["lambda"], opts["mu"], "bottom", ps, "oracle")
    table = sweep_table(res, opts["lambda"], opts["mu"], "bottom", ps)
    body = "\n".join(golden.splitlines()[1:]) + "\n"
    ok = table == body and res.get("1111110100001000") == 5
    return ok, f"{len(res)} words, count {res.get('1111110100001000')} at 1111110100001000"


# 3 -----------------------------------------------------------------------------------

def criterion_3(ctx: Context) -> tuple[bool, str]:
    words = binary_words(4, 2)
    bad = []
    checked = 0
    for sid in BUILTIN_IDS:
        ps = builtin_piece_set(sid)
        for lam, mu, nu in product(words, repeat=3):
            ideal = build_ideal(lam, mu, nu, ps, "full")
            gb = buchberger(ideal.generators(), _lex(ideal.grid.N))
            ctx.keep(3, gb)
            g = len(enumerate_variety(gb))
            o = len(brute_force_tilings(lam, mu, nu, ps))
            checked += 1
            if g != o or (sid == "O0" and g != lr_from_words(lam, mu, nu)):
                bad.append((sid, lam, mu, nu, g, o))
    return not bad, f"{checked} instances, {len(bad)} mismatches" + (f", first {bad[0]}" if bad else "")


# 4 -----------------------------------------------------------------------------------

def _distinguishing_ok(p: Poly, allowed) -> bool:
    return all((p.eval(t) == 0) == (t in allowed) for t in ATOMIC)


def _reference_instances():
    """(label, polynomial, piece set, check) for every reference template."""
    O0, OT, OC = (builtin_piece_set(s) for s in ("O0", "OT", "OC"))
    f3 = Poly.parse("x1 + x1^2 + 2*x2 + x2^2 + x3^2 + x1*x2*x3 + 2*x1^2*x2*x3")
    up_t = Poly.parse("x1^2*x2 + 2*x1*x2^2 + 2*x1^2 + x1")
    down_t = Poly.parse("x1*x2^2 + 2*x1^2 + x1*x2 + 2*x2^2 + x1 + 2*x2")
    up_c = Poly.parse("x2^2*x3 + 2*x2*x3^2 + 2*x2^2 + x2")
    down_c = Poly.parse("x2*x3^2 + 2*x2^2 + x2*x3 + 2*x3^2 + x2 + 2*x3")
    # variables: x1 up right, x2 up bottom, x4 down top; x3, x5 do not occur
    f_left = Poly.parse("x1^2*x4 + x2^2*x4 + 2*x1^2 + 2*x1*x2 + 2*x2^2 + x2*x4 + x1 + 2*x2")
    g_m = Poly.parse(" ".join(l for l in fixture_text("g_m.txt").splitlines() if not l.startswith("#")))

    def left_ok():
        bad = OC.forbidden["left"]
        # 4-side order (top, right, bottom, left)
        return all((f_left.eval({1: v[1], 2: v[2], 4: v[0]}) != 0) == (v in bad) for v in OC.psi["left"])

    def g_m_ok():
        return g_m.eval((2, 1, 1, 2)) == 0 and all(
            g_m.eval((a, b, 1, 2)) != 0 for a in range(3) for b in range(3) if (a, b) != (2, 1))

    return [
        ("f (up, no equivariant)", lambda: _distinguishing_ok(f3, O0.atomic["up"])),
        ("f (down, no equivariant)", lambda: _distinguishing_ok(f3, O0.atomic["down"])),
        ("f^k equivariant up", lambda: _distinguishing_ok(up_t, OT.atomic["up"])),
        ("f_k equivariant down", lambda: _distinguishing_ok(down_t, OT.atomic["down"])),
        ("f^k hexagon up", lambda: _distinguishing_ok(up_c, OC.atomic["up"])),
        ("f_k hexagon down", lambda: _distinguishing_ok(down_c, OC.atomic["down"])),
        ("f_l hexagon left", left_ok),
        ("g_m implying", g_m_ok),
    ]


def template_failures() -> list[str]:
    failures = []
    for sid in BUILTIN_IDS:
        ps = builtin_piece_set(sid)
        b = template_bundle(ps, full_implying=True)
        for o, f in (("up", b.f_up), ("down", b.f_down)):
            if not _distinguishing_ok(f, ps.atomic[o]):
                failures.append(f"{sid} {o}")
        for d in ("left", "right", "bottom"):
            f = b.forbidding(d)
            if any(f.eval(v) != (1 if v in ps.forbidden[d] else 0) for v in ps.psi[d]):
                failures.append(f"{sid} {d}")
        for im in ps.implicit:
            P = reference_placement(im.polygon.shape)
            target = ps.refinements[im.polygon]
            pos = {iv: i for i, iv in enumerate(P.intervals)}
            sub = build_grid(4).placement(im.piece.shape, P.anchor[0] + im.offset[0], P.anchor[1] + im.offset[1])
            K = [pos[s] for s in sub.sides]
            full, comp = b.implying[im], b.compact[im]
            # the full template's table covers F3^m; check it through its factors
            for pt in product(range(3), repeat=len(K)):
                for rest_match in (True, False):
                    x = list(target)
                    for i, v in zip(K, pt):
                        x[i] = v
                    if not rest_match:
                        free = next(i for i in range(len(x)) if i not in K)
                        x[free] = (x[free] + 1) % 3
                    want = 0 if (tuple(pt) != im.piece.values or rest_match) else 1
                    if full.eval(x) != want:
                        failures.append(f"{sid} implying {im.piece}")
                        break
            for a in atomic_assignments(ps, im.polygon.shape):
                if (full.eval(a) == 0) != (comp.eval(a) == 0):
                    failures.append(f"{sid} compact implying {im.piece}")
                    break
    return failures


def criterion_4(ctx: Context) -> tuple[bool, str]:
    failures = template_failures()
    reference_bad = [label for label, check in _reference_instances() if not check()]
    ok = not failures and not reference_bad
    parts = [f"synthesized templates: {len(failures)} failures"]
    if reference_bad:
        parts.append("reference instances failing their stated table: " + ", ".join(reference_bad))
    else:
        parts.append("all reference instances pass")
    return ok, "; ".join(parts)


# 5 -----------------------------------------------------------------------------------

def weight_point() -> tuple[tuple[int, ...], list]:
    fx = fixture_json("weight_tiling.json")
    val = {}
    for r, cells in enumerate(fx["rows"], start=1):
        for k, s in enumerate(cells):
            cell = (UP, r, k // 2 + 1) if k % 2 == 0 else (DOWN, r, k // 2 + 1)
            for iv, ch in zip(cell_sides(cell), s):
                if val.setdefault(iv, int(ch)) != int(ch):
                    raise ValueError(f"inconsistent side {iv} in the fixture")
    n = fx["n"]
    return tuple(val[i] for i in range(1, build_grid(n).N + 1)), [tuple(w) for w in fx["weight"]]


def criterion_5(ctx: Context) -> tuple[bool, str]:
    pt, expected = weight_point()
    t = point_to_tiling(pt, builtin_piece_set("OT"), 6)
    factors = t.weight_factors()
    if factors != expected:
        return False, f"reference weight factors {factors}"
    rng = random.Random(20240601)
    pool = [(l, m, v) for n in range(1, 6) for k in range(n + 1)
            for l, m, v in product(binary_words(n, k), repeat=3)
            if word_size(v) == word_size(l) + word_size(m)]
    sample = rng.sample(pool, 50)
    bad = []
    for l, m, v in sample:
        w = equivariant_constant(l, m, v)
        c = lr_from_words(l, m, v)
        if not (w.is_constant() and w.constant_value() == c):
            bad.append((l, m, v, str(w), c))
    return not bad, f"reference weight (y5-y1)(y6-y5); {len(sample) - len(bad)}/50 constant and equal to LR"


# 6 -----------------------------------------------------------------------------------

def side_free_checks(lam, mu, ps, ctx: Context | None = None) -> list[str]:
    args = (lam, mu, None)
    n = len(lam)
    grid = build_grid(n)
    bottom = grid.boundary("bottom")
    gb = side_free_basis(args, ps)
    if ctx is not None:
        ctx.keep(6, gb)
    elim = eliminate(gb, bottom)
    problems = []
    for v in bottom:
        if not elim.contains(Poly.var(v) * Poly.var(v) - Poly.var(v)):
            problems.append(f"x{v}^2 - x{v} missing")
    decomposition = point_decomposition(elim)
    if decomposition:
        meet = intersect([prime for _, prime in decomposition], bottom)
        if ctx is not None:
            ctx.keep(6, meet)
        if not all(meet.contains(g) for g in elim.elements) or not all(elim.contains(g) for g in meet.elements):
            problems.append("primes do not intersect to the elimination ideal")
    elif not elim.is_unit:
        problems.append("empty variety but elimination ideal is proper")
    found = {"".join(map(str, pt)): prime for pt, prime in decomposition}
    N = grid.N
    for word in binary_words(n, lam.count("1")):
        direct = build_ideal(lam, mu, word, ps, "full")
        dgb = buchberger(direct.generators(), _lex(N))
        direct_pts = enumerate_variety(dgb)
        if word in found:
            sgb = buchberger(gb.elements + found[word], _lex(N))
            if ctx is not None:
                ctx.keep(6, sgb)
            if enumerate_variety(sgb) != direct_pts:
                problems.append(f"sum ideal differs at {word}")
        elif direct_pts:
            problems.append(f"{word} has tilings but is not in the elimination variety")
    return problems


def criterion_6(ctx: Context) -> tuple[bool, str]:
    problems = []
    instances = 0
    for sid in BUILTIN_IDS:
        ps = builtin_piece_set(sid)
        for n in range(1, 5):
            for k in range(n + 1):
                words = binary_words(n, k)
                for lam, mu in product(words, repeat=2):
                    instances += 1
                    problems += [f"{sid} {lam} {mu}: {p}" for p in side_free_checks(lam, mu, ps, ctx)]
    return not problems, f"{instances} side-free ideals, {len(problems)} problems" + (
        f", first: {problems[0]}" if problems else "")


# 7 -----------------------------------------------------------------------------------

def criterion_7(ctx: Context) -> tuple[bool, str]:
    sets = {sid: builtin_piece_set(sid) for sid in BUILTIN_IDS}
    bad = []
    checked = 0
    for n in range(1, 5):
        for k in range(n + 1):
            for lam, mu, nu in product(binary_words(n, k), repeat=3):
                d = word_size(nu) - word_size(lam) - word_size(mu)
                counts = {sid: len(brute_force_tilings(lam, mu, nu, ps)) for sid, ps in sets.items()}
                checked += 1
                if d < 0 and (counts["OA"] or counts["OB"]):
                    bad.append(("below", lam, mu, nu, counts))
                if d > 0 and (counts["OC"] or counts["OD"] or counts["OT"] or counts["O0"]):
                    bad.append(("above", lam, mu, nu, counts))
                if d == 0 and len(set(counts.values())) != 1:
                    bad.append(("degree", lam, mu, nu, counts))
    return not bad, f"{checked} triples, {len(bad)} violations" + (f", first {bad[0]}" if bad else "")


# 8 -----------------------------------------------------------------------------------

def criterion_8(ctx: Context) -> tuple[bool, str]:
    for c, fn in ((1, criterion_1), (3, criterion_3), (6, criterion_6)):
        if c not in ctx.bases:
            fn(ctx)
    total = 0
    failed = 0
    for c in (1, 3, 6):
        for gb in ctx.bases.get(c, []):
            total += 1
            if not certify(gb):
                failed += 1
    return failed == 0, f"{total} bases certified, {failed} failures"


CRITERIA: list[tuple[int, str, Callable]] = [
    (1, "n=6 regression (groebner)", criterion_1),
    (2, "n=16 side-free sweep (oracle)", criterion_2),
    (3, "groebner = oracle = LR on <4 choose 2>", criterion_3),
    (4, "template truth tables", criterion_4),
    (5, "equivariant weights", criterion_5),
    (6, "side-free algebra, n <= 4", criterion_6),
    (7, "K-theory vanishing and degree agreement", criterion_7),
    (8, "S-polynomial certification", criterion_8),
]


def run_one(number: int, ctx: Context) -> Outcome:
    _, title, fn = next(c for c in CRITERIA if c[0] == number)
    start = time.perf_counter()
    try:
        ok, detail = fn(ctx)
    except Exception as exc:  # noqa: BLE001 - report, never crash the suite
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    return Outcome(number, title, ok, detail, time.perf_counter() - start)


def run_all(emit=print, numbers=None) -> list[Outcome]:
    ctx = Context()
    out = []
    for number, _, _ in CRITERIA:
        if numbers and number not in numbers:
            continue
        res = run_one(number, ctx)
        emit(res.line())
        out.append(res)
    return out
