"""Puzzle ideals: the generator families F1..F6 instantiated on a grid."""

from __future__ import annotations

from dataclasses import dataclass, field

from .gf3 import Poly
from .grid import RHOMBUS_DIRECTIONS, UP, TriangleGrid, build_grid, cell_sides
from .pieces import PieceSet, UnsupportedPieceSet
from .synthesis import delta, template_bundle

KINDS = ("atomic", "forbidding", "full", "side-free")
FAMILIES = ("F1", "F2", "F3", "F4", "F5", "F6", "F6b")
SIDES = ("left", "right", "bottom")


class BadBoundary(ValueError):
    """Boundary words of the wrong length, weight or alphabet."""


def check_boundary(lam, mu, nu) -> tuple[int, int]:
    """Validate boundary words; returns (n, k).  ``None`` marks a free side."""
    words = [w for w in (lam, mu, nu) if w is not None]
    if not words:
        raise BadBoundary("at least two sides must be bound")
    if len(words) < 2:
        raise BadBoundary("at most one side may be free")
    n = len(words[0])
    if n == 0:
        raise BadBoundary("empty boundary word")
    for w in words:
        if set(w) - {"0", "1"}:
            raise BadBoundary(f"{w!r} is not a binary word")
        if len(w) != n:
            raise BadBoundary("boundary words have different lengths")
    ks = {w.count("1") for w in words}
    if len(ks) != 1:
        raise BadBoundary("boundary words have different numbers of ones")
    return n, ks.pop()


@dataclass
class PuzzleIdeal:
    grid: TriangleGrid
    piece_set: PieceSet
    boundary: tuple
    kind: str
    families: dict = field(default_factory=dict)   # family -> list of Poly (zeros kept)
    field_degree: dict = field(default_factory=dict)  # variable -> 2 or 3

    @property
    def free_side(self) -> str | None:
        for side, w in zip(SIDES, self.boundary):
            if w is None:
                return side
        return None

    def generators(self) -> list[Poly]:
        """Nonzero generators, deduplicated, field cubes omitted (built into the ring)."""
        seen = set()
        out = []
        for fam in FAMILIES:
            for p in self.families.get(fam, []):
                if p and p not in seen:
                    seen.add(p)
                    out.append(p)
        return out

    def dump(self) -> str:
        lines = []
        for fam in FAMILIES:
            if fam not in self.families:
                continue
            lines.append(f"# {fam}")
            if fam == "F1":
                for v in sorted(self.field_degree):
                    d = self.field_degree[v]
                    lines.append(f"x{v}^{d} + 2*x{v}")
                continue
            lines.extend(str(p) for p in self.families[fam])
        return "\n".join(lines) + "\n"


def field_polynomial(v: int, degree: int) -> Poly:
    """x^degree - x, which is 0 in the reduced ring when degree is 3."""
    return Poly.from_raw([({v: degree}, 1), ({v: 1}, -1)])


def implicit_guard(im) -> Poly:
    """Indicator that a placement's outer sides carry the implicit piece."""
    g = Poly.const(1)
    for i, v in enumerate(im.piece.values):
        g = g * delta(v, i + 1)
    return g


def build_ideal(lam, mu, nu, ps: PieceSet, kind: str = "full") -> PuzzleIdeal:
    if kind not in KINDS:
        raise ValueError(f"unknown ideal kind {kind!r}")
    n, _ = check_boundary(lam, mu, nu)
    if kind == "side-free" and None not in (lam, mu, nu):
        raise BadBoundary("a side-free ideal needs one free side")
    if not ps.separable:
        raise UnsupportedPieceSet(f"{ps.id} is not separable")
    grid = build_grid(n)
    bundle = template_bundle(ps)
    ideal = PuzzleIdeal(grid, ps, (lam, mu, nu), kind)
    fam = ideal.families

    free = set()
    fam["F2"] = []
    for side, word in zip(SIDES, (lam, mu, nu)):
        ivs = grid.boundary(side)
        if word is None:
            free.update(ivs)
            continue
        for iv, ch in zip(ivs, word):
            fam["F2"].append(Poly.var(iv) - int(ch))

    ideal.field_degree = {v: 2 if v in free else 3 for v in range(1, grid.N + 1)}
    fam["F1"] = [field_polynomial(v, d) for v, d in ideal.field_degree.items()]

    fam["F3"] = []
    fam["F4"] = []
    for cell in grid.cells:
        a, b, c = cell_sides(cell)
        fam["F3"].append(Poly.var(a) + Poly.var(b) + Poly.var(c))
        tmpl = bundle.f_up if cell[0] == UP else bundle.f_down
        fam["F4"].append(tmpl.rename({1: a, 2: b, 3: c}))

    if kind in ("forbidding", "full", "side-free"):
        fam["F5"] = []
        for d in RHOMBUS_DIRECTIONS:
            tmpl = bundle.forbidding(d)
            for p in grid.rhombi(d):
                fam["F5"].append(tmpl.rename(dict(zip((1, 2, 3, 4), p.sides))))

    if kind in ("full", "side-free"):
        fam["F6"] = []
        for im in ps.implicit:
            tmpl = bundle.compact[im]
            for P in grid.polygon_placements(im.polygon.shape):
                mapping = {i + 1: iv for i, iv in enumerate(P.intervals)}
                fam["F6"].append(tmpl.rename(mapping))
        # an implicit piece no polygon placement can absorb is simply forbidden
        fam["F6b"] = []
        for im in ps.implicit:
            covered = set()
            for P in grid.polygon_placements(im.polygon.shape):
                covered.add((P.anchor[0] + im.offset[0], P.anchor[1] + im.offset[1]))
            guard = implicit_guard(im)
            for sub in grid.placements(im.piece.shape):
                if sub.anchor not in covered:
                    fam["F6b"].append(guard.rename(dict(zip(range(1, len(sub.sides) + 1), sub.sides))))
    return ideal


def ideal_stats(ideal: PuzzleIdeal) -> dict[str, int]:
    stats = {f: len(ideal.families[f]) for f in FAMILIES if f in ideal.families}
    stats["generators"] = len(ideal.generators())
    return stats
