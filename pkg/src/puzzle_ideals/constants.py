"""Structure constants from either backend, plus tiling recovery and weights."""

from __future__ import annotations

import os
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property

from .grid import DOWN, UP, TriangleGrid, binary_to_partition, build_grid, cell_sides
from .groebner import (
    GroebnerBasis, MonomialOrder, buchberger, eliminate, enumerate_variety, point_decomposition,
)
from .ideals import SIDES, build_ideal, check_boundary
from .oracle import brute_force_tilings
from .pieces import EQUIVARIANT, Piece, PieceSet, stitch

BACKENDS = ("groebner", "oracle")
K_THEORY = ("OA", "OB", "OC", "OD")
DEFAULT_MAX_GB_N = 8


class BackendInfeasible(RuntimeError):
    """The Gröbner backend refuses an instance above its size guard."""


class InvalidPoint(ValueError):
    """A variety point that is not a valid tiling; indicates a backend bug."""


def max_gb_n() -> int:
    return int(os.environ.get("PUZZLE_MAX_GB_N", DEFAULT_MAX_GB_N))


def _guard(n: int):
    limit = max_gb_n()
    if n > limit:
        raise BackendInfeasible(
            f"n={n} exceeds the Gröbner size guard {limit}; set PUZZLE_MAX_GB_N to override")


# tilings ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TilePiece:
    placement: object
    piece: Piece

    @property
    def shape(self) -> str:
        return self.piece.shape

    @property
    def anchor(self) -> tuple[int, int]:
        return self.placement.anchor


@dataclass
class Tiling:
    grid: TriangleGrid
    assignment: tuple[int, ...]
    piece_set: PieceSet

    def value(self, interval: int) -> int:
        return self.assignment[interval - 1]

    def _assign(self) -> dict[int, int]:
        return {i + 1: v for i, v in enumerate(self.assignment)}

    @cached_property
    def atomic(self) -> list[tuple[tuple, tuple[int, int, int]]]:
        return [(c, tuple(self.value(s) for s in cell_sides(c))) for c in self.grid.cells]

    @cached_property
    def stitched(self) -> list[TilePiece]:
        return [TilePiece(sp.placement, sp.as_piece())
                for sp in stitch(self.grid, self.grid.cells, self._assign())]

    @cached_property
    def recovered(self) -> list[TilePiece]:
        """Pieces of the set itself: implicit pieces grow back into their polygons."""
        ps = self.piece_set
        pieces = list(self.stitched)
        for tp in self.stitched:
            for im in ps.implicit_for(tp.shape, tp.piece.values):
                r, y = tp.anchor
                P = self.grid.placement(im.polygon.shape, r - im.offset[0], y - im.offset[1])
                if P is None:
                    raise InvalidPoint(f"implicit {tp.piece} at {tp.anchor} has no polygon")
                if tuple(self.value(i) for i in P.intervals) != ps.refinements[im.polygon]:
                    raise InvalidPoint(f"implicit {tp.piece} at {tp.anchor} without its polygon")
                inside = set(P.cells)
                pieces = [q for q in pieces if not set(q.placement.cells) <= inside]
                pieces.append(TilePiece(P, im.polygon))
        key = {c: i for i, c in enumerate(self.grid.cells)}
        pieces.sort(key=lambda q: min(key[c] for c in q.placement.cells))
        named = []
        for q in pieces:
            match = next((p for p in ps.pieces if p == q.piece), None)
            if match is None:
                raise InvalidPoint(f"{q.piece} at {q.anchor} is not a piece of {ps.id}")
            named.append(TilePiece(q.placement, match))
        return named

    def equivariant_pieces(self) -> list[TilePiece]:
        return [q for q in self.recovered if q.piece == EQUIVARIANT]

    def weight_factors(self) -> list[tuple[int, int]]:
        """(i, j) for every equivariant piece, in recovered order."""
        return [drag_indices(self.grid.n, q.anchor) for q in self.equivariant_pieces()]


def point_to_tiling(point, ps: PieceSet, n: int | None = None) -> Tiling:
    point = tuple(point)
    if n is None:
        n = next(m for m in range(1, 64) if 3 * m * (m + 1) // 2 >= len(point))
    grid = build_grid(n)
    if len(point) != grid.N:
        raise InvalidPoint(f"expected {grid.N} coordinates, got {len(point)}")
    t = Tiling(grid, point, ps)
    for cell, vals in t.atomic:
        if vals not in ps.atomic["up" if cell[0] == UP else "down"]:
            raise InvalidPoint(f"cell {cell} carries {vals}, not an atomic piece of {ps.id}")
    t.recovered  # noqa: B018 - raises on an unrecoverable point
    return t


# drag rule and weights -----------------------------------------------------------------

def drag_indices(n: int, anchor: tuple[int, int]) -> tuple[int, int]:
    """Bottom intervals reached by dragging an equivariant piece SE and SW.

    The piece occupies up(r, y) over down(r + 1, y).  Its downward cell is
    translated one row at a time until it leaves the bottom edge; the
    position index it exits at names the bottom interval.
    """
    r, y = anchor
    ends = []
    for step in (1, 0):          # SE shifts the position, SW keeps it
        R, j = r + 1, y
        while R <= n:
            R, j = R + 1, j + step
        ends.append(j)
    return ends[0], ends[1]


class WeightPoly:
    """Integer polynomial in y1..yn, kept both as factor lists and expanded."""

    def __init__(self, n: int):
        self.n = n
        self.products: list[list[tuple[int, int]]] = []
        self.terms: Counter = Counter()

    def add_product(self, factors: list[tuple[int, int]]):
        self.products.append(list(factors))
        expanded = Counter({(): 1})
        for i, j in factors:
            nxt: Counter = Counter()
            for mono, c in expanded.items():
                for var, sign in ((i, 1), (j, -1)):
                    m = tuple(sorted(mono + (var,)))
                    nxt[m] += sign * c
            expanded = nxt
        for m, c in expanded.items():
            self.terms[m] += c
        self.terms = Counter({m: c for m, c in self.terms.items() if c})

    def is_constant(self) -> bool:
        return all(not m for m in self.terms)

    def constant_value(self) -> int:
        return self.terms.get((), 0)

    def evaluate(self, ys) -> int:
        """Value with y_i = ys[i - 1]."""
        total = 0
        for m, c in self.terms.items():
            for v in m:
                c *= ys[v - 1]
            total += c
        return total

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=lambda m: (len(m), m)):
            c = self.terms[m]
            mono = "*".join(_ypow(v, e) for v, e in sorted(Counter(m).items()))
            body = f"{abs(c)}*{mono}" if mono else f"{abs(c)}"
            parts.append(("+" if c > 0 else "-") + body)
        return " ".join(parts)

    @staticmethod
    def factor_string(factors) -> str:
        return "*".join(f"(y{i}-y{j})" for i, j in factors) or "1"


def _ypow(v, e):
    return f"y{v}" if e == 1 else f"y{v}^{e}"


# constants ----------------------------------------------------------------------------

@dataclass
class ConstantResult:
    count: int
    signed: int
    tilings: list = field(default_factory=list)


def k_sign(lam: str, mu: str, nu: str) -> int:
    d = sum(binary_to_partition(nu)) - sum(binary_to_partition(lam)) - sum(binary_to_partition(mu))
    return -1 if d % 2 else 1


def solve_points(lam, mu, nu, ps: PieceSet, backend: str = "oracle") -> list[tuple[int, ...]]:
    if backend not in BACKENDS:
        raise ValueError(f"unknown backend {backend!r}")
    n, _ = check_boundary(lam, mu, nu)
    if backend == "oracle":
        return sorted(brute_force_tilings(lam, mu, nu, ps))
    _guard(n)
    return enumerate_variety(groebner_basis(lam, mu, nu, ps))


def groebner_basis(lam, mu, nu, ps: PieceSet, kind: str = "full") -> GroebnerBasis:
    n, _ = check_boundary(lam, mu, nu)
    _guard(n)
    ideal = build_ideal(lam, mu, nu, ps, kind)
    return buchberger(ideal.generators(), MonomialOrder.lex(range(1, ideal.grid.N + 1)))


def constant(lam, mu, nu, ps: PieceSet, backend: str = "oracle", tilings: bool = False) -> ConstantResult:
    pts = solve_points(lam, mu, nu, ps, backend)
    n = len(lam)
    tl = [point_to_tiling(p, ps, n) for p in pts] if tilings else []
    count = len(pts)
    sign = k_sign(lam, mu, nu) if ps.id in K_THEORY else 1
    return ConstantResult(count, sign * count, tl)


def equivariant_constant(lam, mu, nu, ps: PieceSet | None = None, backend: str = "oracle") -> WeightPoly:
    from .pieces import builtin_piece_set

    ps = ps or builtin_piece_set("OT")
    res = constant(lam, mu, nu, ps, backend, tilings=True)
    w = WeightPoly(len(lam))
    for t in res.tilings:
        w.add_product(t.weight_factors())
    return w


# side-free sweeps ----------------------------------------------------------------------

def _free_args(lam, mu, free_side):
    if free_side not in SIDES:
        raise ValueError(f"unknown side {free_side!r}")
    return {"left": (None, lam, mu), "right": (lam, None, mu), "bottom": (lam, mu, None)}[free_side]


def side_free_sweep(lam, mu, free_side: str = "bottom", ps: PieceSet | None = None,
                    backend: str = "oracle") -> dict[str, int]:
    """Nonzero counts keyed by the free side's word.

    ``lam`` and ``mu`` are the two bound words in reading order of the
    remaining sides (left, right, bottom minus the free one).
    """
    from .pieces import builtin_piece_set

    ps = ps or builtin_piece_set("O0")
    args = _free_args(lam, mu, free_side)
    n, _ = check_boundary(*args)
    grid = build_grid(n)
    free_ivs = grid.boundary(free_side)
    if backend == "oracle":
        pts = brute_force_tilings(*args, ps)
        out: dict[str, int] = {}
        for pt in pts:
            w = "".join(str(pt[i - 1]) for i in free_ivs)
            out[w] = out.get(w, 0) + 1
        return dict(sorted(out.items(), reverse=True))
    if backend != "groebner":
        raise ValueError(f"unknown backend {backend!r}")
    _guard(n)
    gb = side_free_basis(args, ps)
    elim = eliminate(gb, free_ivs)
    out = {}
    for pt, prime in point_decomposition(elim):
        sub = buchberger(gb.elements + prime, MonomialOrder.lex(range(1, grid.N + 1)))
        count = len(enumerate_variety(sub))
        if count:
            out["".join(map(str, pt))] = count
    return dict(sorted(out.items(), reverse=True))


def side_free_basis(args, ps: PieceSet) -> GroebnerBasis:
    """Block-order basis of the side-free ideal with the free side smallest."""
    ideal = build_ideal(*args, ps, "side-free")
    free_ivs = ideal.grid.boundary(ideal.free_side)
    rest = [v for v in range(1, ideal.grid.N + 1) if v not in set(free_ivs)]
    return buchberger(ideal.generators(), MonomialOrder.block(rest, free_ivs))


def sweep_table(result: dict[str, int], lam, mu, free_side: str, ps: PieceSet) -> str:
    key = {"left": "lambda", "right": "mu", "bottom": "nu"}[free_side]
    lines = []
    for word, count in result.items():
        args = list(_free_args(lam, mu, free_side))
        args[SIDES.index(free_side)] = word
        sign = k_sign(*args) if ps.id in K_THEORY else 1
        lines.append(f"{key}={word} count={count} signed={sign * count}")
    return "\n".join(lines) + ("\n" if lines else "")
