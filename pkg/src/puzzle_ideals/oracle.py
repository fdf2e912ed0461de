"""Ground truth without algebra: backtracking tilers and the LR rule.

``brute_force_tilings`` searches interval assignments row by row, exactly the
search space of the puzzle ideal's variety.  ``place_tilings`` is a second,
independent tiler that lays down whole pieces of the set; tests use it to
check the refinement machinery itself.
"""

from __future__ import annotations

from collections import Counter
from functools import lru_cache

from . import kernels
from .grid import UP, SHAPES, build_grid, cell_sides, binary_to_partition
from .pieces import PieceSet, reference_placement

FREE = None


def _boundary_domain(grid, lam, mu, nu):
    """Per-interval fixed value (0/1), -2 for a free F2 value, -1 interior."""
    fixed = [-1] * (grid.N + 1)
    for side, word in (("left", lam), ("right", mu), ("bottom", nu)):
        for iv, ch in zip(grid.boundary(side), word or [None] * grid.n):
            fixed[iv] = -2 if ch is None else int(ch)
    return fixed


@lru_cache(maxsize=None)
def search_plan(n: int, ps: PieceSet):
    """Cells in search order with the checks that fire once each is placed.

    Returns (cells, rhombus_checks, polygon_checks, orphan_checks) where each
    check list is indexed by cell position.  Rhombus checks carry the outer
    sides of a rhombus to test against the forbidden set; polygon checks carry
    (intervals, implicit position sides, implicit values, target values);
    orphan checks reject implicit pieces that no polygon placement covers.
    """
    grid = build_grid(n)
    cells = list(grid.cells)
    pos = {c: i for i, c in enumerate(cells)}
    rh = [[] for _ in cells]
    poly = [[] for _ in cells]
    orphan = [[] for _ in cells]
    for d, bad in ps.forbidden.items():
        if not bad:
            continue
        for p in grid.rhombi(d):
            last = max(pos[c] for c in p.cells)
            rh[last].append((p.sides, frozenset(bad)))
    for im in ps.implicit:
        shape = im.piece.shape
        poly_shape = im.polygon.shape
        target = ps.refinements[im.polygon]
        covered = set()
        for P in grid.polygon_placements(poly_shape):
            r, y = P.anchor
            sub = grid.placement(shape, r + im.offset[0], y + im.offset[1])
            covered.add(sub.anchor)
            last = max(pos[c] for c in P.cells)
            poly[last].append((P.intervals, sub.sides, im.piece.values, target))
        for sub in grid.placements(shape):
            if sub.anchor not in covered:
                last = max(pos[c] for c in sub.cells)
                orphan[last].append((sub.sides, im.piece.values))
    return cells, rh, poly, orphan


def brute_force_tilings(lam, mu, nu, ps: PieceSet, limit: int | None = None) -> list[tuple[int, ...]]:
    """All assignments (x_1..x_N) whose atomic tiling stitches to an Ω-tiling.

    Any one of ``lam``, ``mu``, ``nu`` may be None for a free side.
    """
    n = len(next(w for w in (lam, mu, nu) if w is not None))
    grid = build_grid(n)
    cells, rh, poly, orphan = search_plan(n, ps)
    fixed = _boundary_domain(grid, lam, mu, nu)
    sides = [cell_sides(c) for c in cells]
    allowed = [sorted(ps.atomic["up" if c[0] == UP else "down"]) for c in cells]
    return kernels.tiling_search(grid.N, sides, allowed, fixed, rh, poly, orphan, limit)


def count_tilings(lam, mu, nu, ps: PieceSet) -> int:
    return len(brute_force_tilings(lam, mu, nu, ps))


def split_by_bottom(points, grid) -> dict[str, list]:
    """Group ν-free tilings by their bottom word."""
    out: dict[str, list] = {}
    bottom = grid.boundary("bottom")
    for pt in points:
        word = "".join(str(pt[i - 1]) for i in bottom)
        out.setdefault(word, []).append(pt)
    return out


# piece placement ---------------------------------------------------------------

def _row_key(cell):
    kind, r, y = cell
    return (r, 2 * y - 1 if kind == UP else 2 * y)


def place_tilings(lam, mu, nu, ps: PieceSet) -> list[frozenset]:
    """Tilings by whole pieces of the set, as sets of (shape, anchor, values).

    Exact cover of the unit cells in row order; labels must agree across every
    shared outer edge and with the boundary words.
    """
    n = len(next(w for w in (lam, mu, nu) if w is not None))
    grid = build_grid(n)
    label = {}
    for side, word in (("left", lam), ("right", mu), ("bottom", nu)):
        if word is not None:
            for iv, ch in zip(grid.boundary(side), word):
                label[iv] = int(ch)
    order = sorted(grid.cells, key=_row_key)
    pieces = ps.pieces
    covered = set()
    placed = []
    out = []

    def first_free():
        for c in order:
            if c not in covered:
                return c
        return None

    def rec():
        c = first_free()
        if c is None:
            out.append(frozenset(placed))
            return
        for p in pieces:
            for kind, dr, dy in SHAPES[p.shape]:
                if kind != c[0]:
                    continue
                r0, y0 = c[1] - dr, c[2] - dy
                pl = grid.placement(p.shape, r0, y0)
                if pl is None or any(x in covered for x in pl.cells):
                    continue
                if min(pl.cells, key=_row_key) != c:
                    continue
                if any(i in label for i in pl.inner):
                    continue
                new = []
                ok = True
                for iv, v in zip(pl.sides, p.values):
                    if iv in label:
                        if label[iv] != v:
                            ok = False
                            break
                    else:
                        label[iv] = v
                        new.append(iv)
                if ok:
                    covered.update(pl.cells)
                    placed.append((p.shape, pl.anchor, p.values))
                    rec()
                    placed.pop()
                    covered.difference_update(pl.cells)
                for iv in new:
                    del label[iv]

    rec()
    return out


# Littlewood-Richardson rule -----------------------------------------------------

def lr_coefficient(lam, mu, nu) -> int:
    """c^ν_{λμ} by counting LR skew tableaux of shape ν/λ and content μ."""
    lam = [p for p in lam if p > 0]
    mu = [p for p in mu if p > 0]
    nu = [p for p in nu if p > 0]
    if sum(nu) != sum(lam) + sum(mu):
        return 0
    if len(lam) > len(nu) or any(a > b for a, b in zip(lam, nu)):
        return 0
    lam = lam + [0] * (len(nu) - len(lam))
    rows = [(lam[i], nu[i]) for i in range(len(nu))]
    cells = [(i, j) for i, (a, b) in enumerate(rows) for j in range(b - 1, a - 1, -1)]
    # fill rows top to bottom, each row right to left: that is the reading order
    content = [0] * (len(mu) + 1)
    filling = {}
    count = 0

    def rec(k):
        nonlocal count
        if k == len(cells):
            count += 1
            return
        i, j = cells[k]
        right = filling.get((i, j + 1))
        above = filling.get((i - 1, j))
        for v in range(1, len(mu) + 1):
            if right is not None and v > right:
                break
            if above is not None and v <= above:
                continue
            if content[v - 1] >= mu[v - 1]:
                continue
            # lattice condition on the reverse reading word
            if v > 1 and content[v - 1] + 1 > content[v - 2]:
                continue
            filling[(i, j)] = v
            content[v - 1] += 1
            rec(k + 1)
            content[v - 1] -= 1
            del filling[(i, j)]

    rec(0)
    return count


def lr_from_words(lam: str, mu: str, nu: str) -> int:
    return lr_coefficient(binary_to_partition(lam), binary_to_partition(mu), binary_to_partition(nu))


# Schur polynomials ----------------------------------------------------------------

def _ssyt_monomials(shape, nvars: int) -> Counter:
    """Monomials of s_shape(x_1..x_nvars) as a Counter of exponent tuples."""
    shape = [p for p in shape if p > 0]
    out: Counter = Counter()
    if len(shape) > nvars:
        return out
    cells = [(i, j) for i, row in enumerate(shape) for j in range(row)]
    fill = {}

    def rec(k):
        if k == len(cells):
            exps = [0] * nvars
            for v in fill.values():
                exps[v] += 1
            out[tuple(exps)] += 1
            return
        i, j = cells[k]
        lo = 0
        if j > 0:
            lo = fill[(i, j - 1)]
        if i > 0:
            lo = max(lo, fill[(i - 1, j)] + 1)
        for v in range(lo, nvars):
            fill[(i, j)] = v
            rec(k + 1)
        fill.pop((i, j), None)

    rec(0)
    return out


def schur_polynomial(shape, nvars: int) -> dict[tuple[int, ...], int]:
    return dict(_ssyt_monomials(shape, nvars))


def schur_multiply(lam, mu, nvars: int) -> dict[tuple[int, ...], int]:
    """Expand s_λ s_μ in Schur polynomials by peeling dominant leading terms."""
    a = _ssyt_monomials(lam, nvars)
    b = _ssyt_monomials(mu, nvars)
    prod: Counter = Counter()
    for ea, ca in a.items():
        for eb, cb in b.items():
            prod[tuple(x + y for x, y in zip(ea, eb))] += ca * cb
    out = {}
    while True:
        prod = Counter({e: c for e, c in prod.items() if c})
        if not prod:
            break
        lead = max(prod)
        c = prod[lead]
        shape = tuple(p for p in lead if p > 0)
        out[shape] = c
        for e, k in _ssyt_monomials(shape, nvars).items():
            prod[e] -= c * k
    return out
