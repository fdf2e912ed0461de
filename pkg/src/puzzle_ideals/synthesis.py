"""Template polynomials: distinguishing, forbidding and implying.

Distinguishing and forbidding templates come from a linear system over F3
whose unknowns are the coefficients of the 3^k reduced monomials in k
variables; only the constrained points contribute rows and the canonical
RREF solution (free coefficients zero) is returned.

An implying template is pinned at every point of F3^m, so it is the unique
interpolant and is written down in closed form with the indicator
δ_a(z) = 1 - (z - a)^2.  The ideal uses a compact variant that tests only a
spanning subset of the polygon's intervals; it agrees with the full template
on every assignment satisfying the atomic sum relations.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product

from .gf3 import Poly, solve
from .grid import RHOMBUS_DIRECTIONS, UP, cell_sides
from .pieces import ATOMIC, Implicit, PieceSet, UnsupportedPieceSet, reference_placement


def monomial_basis(k: int) -> list[tuple[int, ...]]:
    """Exponent vectors in {0,1,2}^k by increasing degree, then lex."""
    return sorted(product(range(3), repeat=k), key=lambda e: (sum(e), tuple(-x for x in e)))


def _row(point, basis):
    row = []
    for exps in basis:
        v = 1
        for x, e in zip(point, exps):
            v *= x ** e
        row.append(v % 3)
    return row


def interpolate(table: dict[tuple[int, ...], int], k: int) -> Poly:
    """Canonical polynomial in x1..xk taking the given values on the table's points."""
    basis = monomial_basis(k)
    points = sorted(table)
    coeffs = solve([_row(p, basis) for p in points], [table[p] for p in points])
    terms = {}
    for exps, c in zip(basis, coeffs):
        if c:
            terms[tuple((i + 1, e) for i, e in enumerate(exps) if e)] = c
    return Poly(terms)


def synth_distinguishing(atomic, orientation: str) -> Poly:
    """Vanishes on the allowed atomic triangles, equals 1 on the rest of Φ."""
    if orientation not in ("up", "down"):
        raise ValueError(f"orientation must be up or down, not {orientation!r}")
    allowed = set(atomic[orientation])
    return interpolate({t: 0 if t in allowed else 1 for t in ATOMIC}, 3)


def synth_forbidding(ps: PieceSet, direction: str) -> Poly:
    """Equals 1 on forbidden rhombi and vanishes on the rest of Ψ."""
    if direction not in RHOMBUS_DIRECTIONS:
        raise ValueError(f"unknown rhombus direction {direction!r}")
    if not ps.separable:
        raise UnsupportedPieceSet(f"{ps.id} is not separable")
    bad = ps.forbidden[direction]
    return interpolate({v: 1 if v in bad else 0 for v in ps.psi[direction]}, 4)


def delta(a: int, var: int) -> Poly:
    """Indicator of z = a on F3."""
    z = Poly.var(var)
    return 1 - (z - a) * (z - a)


def _implicit_layout(ps: PieceSet, im: Implicit):
    """(polygon intervals, positions of p̄'s sides, target values) in the reference frame."""
    P = reference_placement(im.polygon.shape)
    shape = im.piece.shape
    from .grid import build_grid
    from .pieces import _REF_N

    sub = build_grid(_REF_N).placement(shape, P.anchor[0] + im.offset[0], P.anchor[1] + im.offset[1])
    ivs = P.intervals
    pos = {iv: i for i, iv in enumerate(ivs)}
    K = [pos[s] for s in sub.sides]
    target = ps.refinements[im.polygon]
    return P, K, target


def synth_implying(ps: PieceSet, im: Implicit) -> Poly:
    """The m-variable implying template, variables x1..xm over the polygon's intervals.

    Vanishes when p̄'s sides do not carry p̄; otherwise vanishes exactly when
    the whole polygon carries the refinement of its piece.
    """
    if not ps.separable:
        raise UnsupportedPieceSet(f"{ps.id} is not separable")
    P, K, target = _implicit_layout(ps, im)
    guard = Poly.const(1)
    for i, v in zip(K, im.piece.values):
        guard = guard * delta(v, i + 1)
    match = Poly.const(1)
    for i, v in enumerate(target):
        if i not in K:
            match = match * delta(v, i + 1)
    return guard * (1 - match)


def spanning_subset(P, fixed: list[int]) -> list[int]:
    """Greedy positions that, with ``fixed``, determine all intervals via the cell sums."""
    ivs = P.intervals
    pos = {iv: i for i, iv in enumerate(ivs)}
    rels = [[pos[s] for s in cell_sides(c)] for c in P.cells]
    known = set(fixed)
    chosen = []

    def close():
        changed = True
        while changed:
            changed = False
            for rel in rels:
                unknown = [i for i in rel if i not in known]
                if len(unknown) == 1:
                    known.add(unknown[0])
                    changed = True

    close()
    for i in range(len(ivs)):
        if i not in known:
            chosen.append(i)
            known.add(i)
            close()
    return chosen


def compact_implying(ps: PieceSet, im: Implicit) -> Poly:
    """Implying template testing p̄'s sides plus a spanning subset only."""
    P, K, target = _implicit_layout(ps, im)
    guard = Poly.const(1)
    for i, v in zip(K, im.piece.values):
        guard = guard * delta(v, i + 1)
    match = Poly.const(1)
    for i in spanning_subset(P, K):
        match = match * delta(target[i], i + 1)
    return guard * (1 - match)


@dataclass
class TemplateBundle:
    f_up: Poly
    f_down: Poly
    f_left: Poly
    f_right: Poly
    f_bottom: Poly
    implying: dict = field(default_factory=dict)   # Implicit -> full template
    compact: dict = field(default_factory=dict)    # Implicit -> compact template

    def forbidding(self, direction: str) -> Poly:
        return {"left": self.f_left, "right": self.f_right, "bottom": self.f_bottom}[direction]


@lru_cache(maxsize=None)
def template_bundle(ps: PieceSet, full_implying: bool = False) -> TemplateBundle:
    if not ps.separable:
        raise UnsupportedPieceSet(f"{ps.id} is not separable")
    b = TemplateBundle(
        synth_distinguishing(ps.atomic, "up"),
        synth_distinguishing(ps.atomic, "down"),
        *(synth_forbidding(ps, d) for d in RHOMBUS_DIRECTIONS),
    )
    for im in ps.implicit:
        b.compact[im] = compact_implying(ps, im)
        if full_implying:
            b.implying[im] = synth_implying(ps, im)
    return b


def truth_table(p: Poly, k: int) -> dict[tuple[int, ...], int]:
    return {pt: p.eval(pt) for pt in product(range(3), repeat=k)}


def atomic_assignments(ps: PieceSet, shape: str):
    """All assignments of a reference placement whose cells are atomic pieces of the set."""
    P = reference_placement(shape)
    ivs = P.intervals
    pos = {iv: i for i, iv in enumerate(ivs)}
    cells = [(c, [pos[s] for s in cell_sides(c)]) for c in P.cells]
    out = []
    val = [None] * len(ivs)

    def rec(k):
        if k == len(cells):
            out.append(tuple(val))
            return
        c, idx = cells[k]
        for t in sorted(ps.atomic["up" if c[0] == UP else "down"]):
            saved = list(val)
            if all(val[i] is None or val[i] == x for i, x in zip(idx, t)):
                for i, x in zip(idx, t):
                    val[i] = x
                rec(k + 1)
            val[:] = saved

    rec(0)
    return out
