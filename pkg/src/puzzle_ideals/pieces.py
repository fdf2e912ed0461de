"""Piece sets, atomic refinements, stitching and implicit/forbidden pieces."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product

from .grid import (
    DOWN, POLYGON_SHAPES, RHOMBUS_DIRECTIONS, SHAPES, UP,
    Placement, build_grid, cell_sides,
)

F3 = (0, 1, 2)

# every atomic triple; the same tuples serve both orientations
ATOMIC = tuple(t for t in product(F3, repeat=3) if sum(t) % 3 == 0)
PHI = {"up": ATOMIC, "down": ATOMIC}
KTW_ATOMIC = ((0, 0, 0), (1, 1, 1), (1, 0, 2), (2, 1, 0), (0, 2, 1))

# a grid large enough to hold one copy of every supported shape
_REF_N = 4


class NotRefinable(ValueError):
    """The piece admits no tiling by atomic pieces."""


class UnsupportedPieceSet(ValueError):
    """The piece set violates the hypotheses of the construction."""


@dataclass(frozen=True)
class Piece:
    """An F2-valued piece; ``values`` follow the shape's canonical side order.

    Unit triangles use (left, right, bottom) / (left, top, right), rhombi use
    (top, right, bottom, left) except bottom rhombi (NW, NE, SE, SW), and
    polygons list their boundary intervals in increasing index order.
    """

    shape: str
    values: tuple[int, ...]
    name: str = field(default="", compare=False)

    def __str__(self):
        label = f"{self.name}:" if self.name else ""
        return f"{label}{self.shape}({','.join(map(str, self.values))})"


@lru_cache(maxsize=None)
def reference_placement(shape: str) -> Placement:
    return build_grid(_REF_N).placements(shape)[0]


def polygon_piece(shape: str, labels: dict, name: str = "") -> Piece:
    """Build a polygon piece from labels on sides of its cells.

    ``labels`` maps a cell offset (kind, dr, dy) to {side letter: value} with
    letters l/r/b for upward and l/t/r for downward cells.
    """
    ref = reference_placement(shape)
    r0, y0 = ref.anchor
    assign = {}
    for (kind, dr, dy), sides in labels.items():
        cell = (kind, r0 + dr, y0 + dy)
        letters = "lrb" if kind == UP else "ltr"
        ivs = cell_sides(cell)
        for letter, v in sides.items():
            assign[ivs[letters.index(letter)]] = v
    if set(assign) != set(ref.sides):
        raise ValueError(f"labels do not cover the boundary of {shape}")
    return Piece(shape, tuple(assign[s] for s in ref.sides), name)


# atomic refinement and stitching --------------------------------------------

def _cell_values(cell, assign) -> tuple[int, int, int]:
    return tuple(assign[s] for s in cell_sides(cell))


def atomic_refinement(piece: Piece, allowed=None) -> list[tuple[int, ...]]:
    """All atomic tilings of ``piece``.

    Each tiling is the tuple of values on the reference placement's intervals
    (increasing index order).  ``allowed`` optionally restricts the atomic
    pieces as {"up": set, "down": set}.
    """
    ref = reference_placement(piece.shape)
    base = dict(zip(ref.sides, piece.values))
    allowed = allowed or {"up": set(ATOMIC), "down": set(ATOMIC)}
    out = []
    for inner in product(F3, repeat=len(ref.inner)):
        assign = dict(base)
        assign.update(zip(ref.inner, inner))
        ok = True
        for cell in ref.cells:
            vals = _cell_values(cell, assign)
            orient = "up" if cell[0] == UP else "down"
            if vals not in allowed[orient]:
                ok = False
                break
        if ok:
            out.append(tuple(assign[i] for i in ref.intervals))
    if not out:
        raise NotRefinable(str(piece))
    return out


@dataclass(frozen=True)
class StitchedPiece:
    placement: Placement
    values: tuple[int, ...]

    @property
    def shape(self) -> str:
        return self.placement.shape

    def as_piece(self) -> Piece:
        return Piece(self.shape, self.values)


def _rhombus_of(a, b):
    """Shape and anchor of the rhombus formed by two adjacent cells."""
    if a[0] == b[0]:
        raise ValueError(f"cells {a} and {b} do not form a rhombus")
    up, down = (a, b) if a[0] == UP else (b, a)
    if up[1] == down[1] and up[2] == down[2]:
        return "right", (up[1], up[2])
    if up[1] == down[1] and up[2] == down[2] + 1:
        return "left", (down[1], down[2])
    if down[1] == up[1] + 1 and down[2] == up[2]:
        return "bottom", (up[1], up[2])
    raise ValueError(f"cells {a} and {b} do not form a rhombus")


def stitch(grid, cells, assign) -> list[StitchedPiece]:
    """Merge regular atomic pieces that share a 2-side into rhombi.

    ``cells`` is the region and ``assign`` maps interval -> F3 value.  Pieces
    are returned in row order of their first cell.
    """
    cellset = set(cells)
    by_interval: dict[int, list] = {}
    for c in cells:
        for s in cell_sides(c):
            by_interval.setdefault(s, []).append(c)
    used = set()
    out = []
    for c in cells:
        if c in used:
            continue
        vals = _cell_values(c, assign)
        partner = None
        if vals != (2, 2, 2) and 2 in vals:
            s = cell_sides(c)[vals.index(2)]
            others = [d for d in by_interval[s] if d != c and d in cellset]
            if others:
                d = others[0]
                if _cell_values(d, assign) != (2, 2, 2):
                    partner = d
        if partner is None:
            used.add(c)
            kind = "up" if c[0] == UP else "down"
            p = grid.placement(kind, c[1], c[2])
            out.append(StitchedPiece(p, vals))
            continue
        used.update((c, partner))
        shape, (r, y) = _rhombus_of(c, partner)
        p = grid.placement(shape, r, y)
        out.append(StitchedPiece(p, tuple(assign[s] for s in p.sides)))
    return out


def expand_rhombus(shape: str, values) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """Split an F2 rhombus over a 2-middle into its (first, second) atomic cells."""
    ref = reference_placement(shape)
    a, b = ref.cells
    assign = dict(zip(ref.sides, values))
    assign[ref.inner[0]] = 2
    va, vb = _cell_values(a, assign), _cell_values(b, assign)
    if sum(va) % 3 or sum(vb) % 3:
        return None
    return va, vb


# piece sets -------------------------------------------------------------------

@dataclass(frozen=True)
class Implicit:
    """An implicit piece and where it sits inside its polygon piece."""

    piece: Piece               # a rhombus or the (2,2,2) triangle
    polygon: Piece
    offset: tuple[int, int]    # implicit anchor minus polygon anchor


@dataclass(eq=False)
class PieceSet:
    id: str
    triangles: list[Piece]
    rhombi: list[Piece]
    polygons: list[Piece]
    refinement_index: dict = field(default_factory=dict)
    # derived
    refinements: dict = field(default_factory=dict)
    atomic: dict = field(default_factory=dict)
    implicit: list[Implicit] = field(default_factory=list)
    forbidden: dict = field(default_factory=dict)
    psi: dict = field(default_factory=dict)
    separable: bool = True

    @property
    def pieces(self) -> list[Piece]:
        return self.triangles + self.rhombi + self.polygons

    @property
    def polygon_shape(self) -> str | None:
        return self.polygons[0].shape if self.polygons else None

    def contains(self, piece: Piece) -> bool:
        return any(p.shape == piece.shape and p.values == piece.values for p in self.pieces)

    def omega_tileable_rhombus(self, shape: str, values) -> bool:
        """Whether an F2 rhombus can be tiled by pieces of the set itself."""
        if self.contains(Piece(shape, tuple(values))):
            return True
        ref = reference_placement(shape)
        a, b = ref.cells
        tri = {(("up" if t.shape == "up" else "down"), t.values) for t in self.triangles}
        for m in (0, 1):
            assign = dict(zip(ref.sides, values))
            assign[ref.inner[0]] = m
            pa = ("up" if a[0] == UP else "down", _cell_values(a, assign))
            pb = ("up" if b[0] == UP else "down", _cell_values(b, assign))
            if pa in tri and pb in tri:
                return True
        return False

    def implicit_for(self, shape: str, values) -> list[Implicit]:
        return [im for im in self.implicit
                if im.piece.shape == shape and im.piece.values == tuple(values)]

    def describe(self) -> str:
        lines = [f"piece set {self.id}"]
        for p in self.pieces:
            lines.append(f"  {p}")
        for o in ("up", "down"):
            lines.append(f"  atomic {o}: {sorted(self.atomic[o])}")
        for im in self.implicit:
            lines.append(f"  implicit {im.piece} in {im.polygon} at offset {im.offset}")
        for d in RHOMBUS_DIRECTIONS:
            if self.forbidden.get(d):
                lines.append(f"  forbidden {d}: {sorted(self.forbidden[d])}")
        return "\n".join(lines)


def _finalize(ps: PieceSet) -> PieceSet:
    """Fill the derived fields: refinement, implicit and forbidden pieces."""
    for p in ps.triangles:
        if p.shape not in ("up", "down") or not set(p.values) <= {0, 1}:
            raise UnsupportedPieceSet(f"bad triangle piece {p}")
    for p in ps.rhombi:
        if p.shape not in RHOMBUS_DIRECTIONS or not set(p.values) <= {0, 1}:
            raise UnsupportedPieceSet(f"bad rhombus piece {p}")
    shapes = {p.shape for p in ps.polygons}
    if len(shapes) > 1 or not shapes <= set(POLYGON_SHAPES):
        raise UnsupportedPieceSet("polygon pieces must share one supported shape")

    atomic = {"up": set(), "down": set()}
    refinements = {}
    for p in ps.pieces:
        tilings = atomic_refinement(p)
        idx = ps.refinement_index.get(p, 0)
        if not 0 <= idx < len(tilings):
            raise UnsupportedPieceSet(f"refinement index {idx} out of range for {p}")
        chosen = tilings[idx]
        refinements[p] = chosen
        ref = reference_placement(p.shape)
        assign = dict(zip(ref.intervals, chosen))
        for cell in ref.cells:
            atomic["up" if cell[0] == UP else "down"].add(_cell_values(cell, assign))
    ps.refinements = refinements
    ps.atomic = atomic

    implicit = []
    separable = True
    seen = set()
    grid = build_grid(_REF_N)
    for p in ps.polygons:
        ref = reference_placement(p.shape)
        assign = dict(zip(ref.intervals, refinements[p]))
        stitched = stitch(grid, ref.cells, assign)
        found: dict[Piece, list] = {}
        for sp in stitched:
            q = sp.as_piece()
            # regular triangles keep a 2-side only next to a (2,2,2) piece
            f2 = set(q.values) <= {0, 1}
            if q.values == (2, 2, 2) or (f2 and not ps.contains(q)):
                found.setdefault(q, []).append(sp.placement.anchor)
        for q, anchors in found.items():
            if len(anchors) != 1:
                separable = False
            if q in seen:
                separable = False
            seen.add(q)
            (r, y), (r0, y0) = anchors[0], ref.anchor
            implicit.append(Implicit(q, p, (r - r0, y - y0)))
    ps.implicit = implicit
    ps.separable = separable

    ps.psi = {d: psi(atomic, d) for d in RHOMBUS_DIRECTIONS}
    implicit_keys = {(im.piece.shape, im.piece.values) for im in implicit}
    forbidden = {}
    for d in RHOMBUS_DIRECTIONS:
        bad = set()
        for vals in product((0, 1), repeat=4):
            if vals in ps.psi[d] and not ps.omega_tileable_rhombus(d, vals):
                if (d, vals) not in implicit_keys:
                    bad.add(vals)
        forbidden[d] = bad
    ps.forbidden = forbidden
    return ps


def psi(atomic: dict, direction: str) -> set[tuple[int, ...]]:
    """Outer values of every F3 rhombus tileable with the given atomic pieces."""
    ref = reference_placement(direction)
    a, b = ref.cells
    out = set()
    for vals in product(F3, repeat=4):
        assign = dict(zip(ref.sides, vals))
        for m in F3:
            assign[ref.inner[0]] = m
            va, vb = _cell_values(a, assign), _cell_values(b, assign)
            oa = "up" if a[0] == UP else "down"
            ob = "up" if b[0] == UP else "down"
            if va in atomic[oa] and vb in atomic[ob]:
                out.add(vals)
                break
    return out


def forbidden_pieces(ps: PieceSet) -> list[Piece]:
    return [Piece(d, v) for d in RHOMBUS_DIRECTIONS for v in sorted(ps.forbidden[d])]


# builtin sets -----------------------------------------------------------------

def _ktw_pieces():
    triangles = [Piece("up", (0, 0, 0)), Piece("up", (1, 1, 1)),
                 Piece("down", (0, 0, 0)), Piece("down", (1, 1, 1))]
    rhombi = [Piece("left", (0, 1, 0, 1)), Piece("right", (1, 0, 1, 0)),
              Piece("bottom", (1, 0, 1, 0))]
    return triangles, rhombi


EQUIVARIANT = Piece("bottom", (0, 1, 0, 1), "equivariant")

A_PIECE = polygon_piece("down2", {
    (DOWN, 0, 0): {"l": 1, "t": 0},
    (DOWN, 0, 1): {"t": 1, "r": 0},
    (DOWN, 1, 1): {"l": 0, "r": 1},
}, "A")
B_PIECE = polygon_piece("up2", {
    (UP, 0, 0): {"l": 1, "r": 0},
    (UP, 1, 0): {"l": 0, "b": 1},
    (UP, 1, 1): {"b": 0, "r": 1},
}, "B")
C_PIECE = polygon_piece("hex", {
    (UP, 0, 0): {"l": 1}, (DOWN, 0, 0): {"t": 0}, (UP, 0, 1): {"r": 1},
    (DOWN, 1, 1): {"r": 0}, (UP, 1, 1): {"b": 1}, (DOWN, 1, 0): {"l": 0},
}, "C")
D_PIECE = polygon_piece("hex", {
    (UP, 0, 0): {"l": 0}, (DOWN, 0, 0): {"t": 1}, (UP, 0, 1): {"r": 0},
    (DOWN, 1, 1): {"r": 1}, (UP, 1, 1): {"b": 0}, (DOWN, 1, 0): {"l": 1},
}, "D")

# Rank of each reference refinement among the lexicographically enumerated
# hexagon tilings; index 0 is the default.  D's order is C's rotated by 60 degrees.
HEX_ORDER = {"C": (1, 0, 2), "D": (2, 0, 1)}

BUILTIN_IDS = ("O0", "OT", "OA", "OB", "OC", "OD")
_ALIASES = {
    "Ω0": "O0", "ΩT": "OT", "ΩA": "OA", "ΩB": "OB", "ΩC": "OC", "ΩD": "OD",
    "0": "O0", "T": "OT", "A": "OA", "B": "OB", "C": "OC", "D": "OD",
}


def canonical_id(name: str) -> str:
    name = name.strip()
    if name in BUILTIN_IDS:
        return name
    if name in _ALIASES:
        return _ALIASES[name]
    if name.upper() in BUILTIN_IDS:
        return name.upper()
    raise KeyError(f"unknown piece set {name!r}")


@lru_cache(maxsize=None)
def builtin_piece_set(name: str, refinement: int = 0) -> PieceSet:
    """One of the six builtin sets.  ``refinement`` picks the hexagon tiling."""
    pid = canonical_id(name)
    triangles, rhombi = _ktw_pieces()
    polygons = []
    index = {}
    if pid == "OT":
        rhombi = rhombi + [EQUIVARIANT]
    elif pid == "OA":
        polygons = [A_PIECE]
    elif pid == "OB":
        polygons = [B_PIECE]
    elif pid in ("OC", "OD"):
        piece = C_PIECE if pid == "OC" else D_PIECE
        if not 0 <= refinement <= 2:
            raise ValueError("hexagon refinement index must be 0, 1 or 2")
        polygons = [piece]
        index[piece] = HEX_ORDER[piece.name][refinement]
    ps = _finalize(PieceSet(pid, triangles, rhombi, polygons, index))
    if not ps.separable:
        raise UnsupportedPieceSet(f"{pid} refinement is not separable")
    return ps


# custom piece-set files -------------------------------------------------------

def parse_piece_set(text: str, name: str = "custom") -> PieceSet:
    """Read a piece-set description.

    One piece per line: ``<shape> v1 v2 ...`` where shape is up, down, left,
    right, bottom, up2, down2 or hex.  A polygon line may end with
    ``refine <i>`` to choose its i-th atomic tiling.  ``#`` starts a comment
    and ``name <id>`` sets the identifier.
    """
    triangles, rhombi, polygons = [], [], []
    index = {}
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        words = line.split()
        if words[0] == "name":
            name = words[1]
            continue
        shape = words[0]
        if shape not in SHAPES:
            raise ValueError(f"unknown shape {shape!r}")
        refine = 0
        if "refine" in words:
            at = words.index("refine")
            refine = int(words[at + 1])
            words = words[:at]
        values = tuple(int(w) for w in words[1:])
        expected = len(reference_placement(shape).sides)
        if len(values) != expected:
            raise ValueError(f"{shape} needs {expected} values, got {len(values)}")
        piece = Piece(shape, values)
        if shape in ("up", "down"):
            triangles.append(piece)
        elif shape in RHOMBUS_DIRECTIONS:
            rhombi.append(piece)
        else:
            polygons.append(piece)
            index[piece] = refine
    ps = _finalize(PieceSet(name, triangles, rhombi, polygons, index))
    if not ps.separable:
        raise UnsupportedPieceSet("refinement is not separable")
    return ps


def load_piece_set(ident: str) -> PieceSet:
    """A builtin id or a path to a description file."""
    try:
        return builtin_piece_set(canonical_id(ident))
    except KeyError:
        with open(ident, encoding="utf-8") as fh:
            return parse_piece_set(fh.read())
