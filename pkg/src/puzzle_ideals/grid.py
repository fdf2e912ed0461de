"""Geometry and interval indexing of the size-n triangle.

Rows are numbered 1..n from the apex.  Row r holds upward triangles
(r, 1..r) and downward triangles (r, 1..r-1); the downward triangle (r, y)
sits between the upward ones (r, y) and (r, y+1).  Sides are always given in
geometric order: upward (left, right, bottom), downward (left, top, right).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache

UP, DOWN = "u", "d"

# cell offsets (kind, row offset, position offset) for every supported shape
SHAPES: dict[str, tuple[tuple[str, int, int], ...]] = {
    "up": ((UP, 0, 0),),
    "down": ((DOWN, 0, 0),),
    "left": ((DOWN, 0, 0), (UP, 0, 1)),
    "right": ((UP, 0, 0), (DOWN, 0, 0)),
    "bottom": ((UP, 0, 0), (DOWN, 1, 0)),
    "up2": ((UP, 0, 0), (UP, 1, 0), (DOWN, 1, 0), (UP, 1, 1)),
    "down2": ((DOWN, 0, 0), (UP, 0, 1), (DOWN, 0, 1), (DOWN, 1, 1)),
    "hex": ((UP, 0, 0), (DOWN, 0, 0), (UP, 0, 1), (DOWN, 1, 0), (UP, 1, 1), (DOWN, 1, 1)),
}
RHOMBUS_DIRECTIONS = ("left", "right", "bottom")
POLYGON_SHAPES = ("up2", "down2", "hex")


def up_sides(r: int, y: int) -> tuple[int, int, int]:
    base = 3 * r * (r - 1) // 2
    return (base - 1 + 2 * y, base + 2 * y, 3 * r * (r + 1) // 2 - r + y)


def down_sides(r: int, y: int) -> tuple[int, int, int]:
    base = 3 * r * (r - 1) // 2
    return (base + 2 * y, 3 * (r - 1) * r // 2 - (r - 1) + y, base + 2 * y + 1)


def cell_sides(cell) -> tuple[int, int, int]:
    kind, r, y = cell
    return up_sides(r, y) if kind == UP else down_sides(r, y)


@dataclass(frozen=True)
class Placement:
    shape: str
    anchor: tuple[int, int]
    cells: tuple
    sides: tuple[int, ...]      # outer intervals in the shape's canonical order
    inner: tuple[int, ...]      # intervals shared by two cells of the placement

    @property
    def intervals(self) -> tuple[int, ...]:
        return tuple(sorted(self.sides + self.inner))


def _outer_sides(shape: str, cells) -> tuple[int, ...]:
    if shape in ("up", "down"):
        return cell_sides(cells[0])
    if shape == "right":
        ul, _, ub = cell_sides(cells[0])
        _, dt, dr = cell_sides(cells[1])
        return (dt, dr, ub, ul)
    if shape == "left":
        dl, dt, _ = cell_sides(cells[0])
        _, ur, ub = cell_sides(cells[1])
        return (dt, ur, ub, dl)
    if shape == "bottom":
        ul, ur, _ = cell_sides(cells[0])
        dl, _, dr = cell_sides(cells[1])
        return (ul, ur, dr, dl)
    counts: dict[int, int] = {}
    for c in cells:
        for s in cell_sides(c):
            counts[s] = counts.get(s, 0) + 1
    return tuple(sorted(s for s, k in counts.items() if k == 1))


def _inner(cells) -> tuple[int, ...]:
    counts: dict[int, int] = {}
    for c in cells:
        for s in cell_sides(c):
            counts[s] = counts.get(s, 0) + 1
    return tuple(sorted(s for s, k in counts.items() if k == 2))


class TriangleGrid:
    """Interval bookkeeping for the size-n triangle."""

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("grid size must be positive")
        self.n = n
        self.N = 3 * n * (n + 1) // 2

    def __repr__(self):
        return f"TriangleGrid(n={self.n})"

    def has_cell(self, cell) -> bool:
        kind, r, y = cell
        if not 1 <= r <= self.n:
            return False
        return 1 <= y <= (r if kind == UP else r - 1)

    @cached_property
    def cells(self) -> tuple:
        """All unit triangles, row by row, left to right."""
        out = []
        for r in range(1, self.n + 1):
            for y in range(1, r + 1):
                out.append((UP, r, y))
                if y < r:
                    out.append((DOWN, r, y))
        return tuple(out)

    @cached_property
    def ups(self) -> tuple:
        return tuple(c for c in self.cells if c[0] == UP)

    @cached_property
    def downs(self) -> tuple:
        return tuple(c for c in self.cells if c[0] == DOWN)

    def placement(self, shape: str, r: int, y: int) -> Placement | None:
        cells = tuple((k, r + dr, y + dy) for k, dr, dy in SHAPES[shape])
        if not all(self.has_cell(c) for c in cells):
            return None
        return Placement(shape, (r, y), cells, _outer_sides(shape, cells), _inner(cells))

    def placements(self, shape: str) -> list[Placement]:
        """All translates of a shape inside the grid, row by row then left to right."""
        return _placements(self.n, shape)

    def rhombi(self, direction: str) -> list[Placement]:
        return self.placements(direction)

    def polygon_placements(self, shape: str) -> list[Placement]:
        if shape not in POLYGON_SHAPES:
            raise ValueError(f"unknown polygon shape {shape!r}")
        return self.placements(shape)

    def boundary(self, side: str) -> list[int]:
        """Boundary intervals in the order the side's word is read."""
        n = self.n
        if side == "left":
            return [up_sides(r, 1)[0] for r in range(n, 0, -1)]
        if side == "right":
            return [up_sides(r, r)[1] for r in range(1, n + 1)]
        if side == "bottom":
            return [up_sides(n, y)[2] for y in range(1, n + 1)]
        raise ValueError(f"unknown side {side!r}")

    @cached_property
    def interval_cells(self) -> dict[int, list]:
        out: dict[int, list] = {i: [] for i in range(1, self.N + 1)}
        for c in self.cells:
            for s in cell_sides(c):
                out[s].append(c)
        return out


@lru_cache(maxsize=None)
def _placements(n: int, shape: str) -> list[Placement]:
    grid = TriangleGrid(n)
    out = []
    for r in range(1, n + 1):
        for y in range(1, r + 1):
            p = grid.placement(shape, r, y)
            if p is not None:
                out.append(p)
    return out


@lru_cache(maxsize=None)
def build_grid(n: int) -> TriangleGrid:
    return TriangleGrid(n)


# partitions and binary words ------------------------------------------------

class DoesNotFit(ValueError):
    """Partition does not fit in the k x (n-k) box."""


def partition_to_binary(partition, n: int, k: int) -> str:
    parts = [p for p in partition if p > 0]
    if len(parts) > k or (parts and parts[0] > n - k):
        raise DoesNotFit(f"{tuple(partition)} does not fit in a {k}x{n - k} box")
    if any(a < b for a, b in zip(parts, parts[1:])):
        raise ValueError(f"{tuple(partition)} is not weakly decreasing")
    parts += [0] * (k - len(parts))
    word = []
    x = n - k
    for p in parts:
        word.append("0" * (x - p) + "1")
        x = p
    word.append("0" * x)
    return "".join(word)


def binary_to_partition(word: str) -> tuple[int, ...]:
    zeros = word.count("0")
    parts = []
    x = zeros
    for ch in word:
        if ch == "0":
            x -= 1
        else:
            parts.append(x)
    return tuple(p for p in parts if p > 0)


def binary_words(n: int, k: int) -> list[str]:
    """All words of length n with k ones, in lexicographic order."""
    from itertools import combinations

    out = []
    for ones in combinations(range(n), k):
        w = ["0"] * n
        for i in ones:
            w[i] = "1"
        out.append("".join(w))
    return sorted(out)


def word_size(word: str) -> int:
    return sum(binary_to_partition(word))
