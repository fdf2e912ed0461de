import pytest

from puzzle_ideals.grid import build_grid
from puzzle_ideals.pieces import (
    ATOMIC, BUILTIN_IDS, C_PIECE, NotRefinable, Piece, UnsupportedPieceSet, atomic_refinement,
    builtin_piece_set, expand_rhombus, parse_piece_set, psi, reference_placement, stitch,
)


def test_atomic_universe():
    assert len(ATOMIC) == 9
    assert all(sum(t) % 3 == 0 for t in ATOMIC)


def test_psi_sizes_with_everything_allowed():
    full = {"up": set(ATOMIC), "down": set(ATOMIC)}
    assert {d: len(psi(full, d)) for d in ("left", "right", "bottom")} == {
        "left": 27, "right": 27, "bottom": 27}


def test_o0():
    ps = builtin_piece_set("O0")
    assert len(ps.atomic["up"]) == len(ps.atomic["down"]) == 5
    assert ps.implicit == []
    assert not any(ps.forbidden.values())


def test_ot():
    ps, base = builtin_piece_set("OT"), builtin_piece_set("O0")
    # the equivariant rhombus splits with its 2 on the up triangle's bottom side
    assert ps.atomic["up"] - base.atomic["up"] == {(0, 1, 2)}
    assert len(ps.atomic["down"] - base.atomic["down"]) == 1
    assert ps.implicit == []
    assert sum(len(v) for v in ps.forbidden.values()) == 2


def test_oc():
    ps = builtin_piece_set("OC")
    assert len(ps.implicit) == 1
    assert ps.implicit[0].piece.shape in ("left", "right", "bottom")
    assert len(ps.forbidden["left"]) == 2
    assert ps.separable


@pytest.mark.parametrize("sid", BUILTIN_IDS)
def test_builtin_sets_are_separable(sid):
    ps = builtin_piece_set(sid)
    assert ps.separable
    implicit = {(im.piece.shape, im.piece.values) for im in ps.implicit}
    for d, bad in ps.forbidden.items():
        assert not implicit & {(d, v) for v in bad}


def test_refinements():
    up_rhombus = builtin_piece_set("O0").rhombi[0]
    assert len(atomic_refinement(up_rhombus)) == 1
    assert len(atomic_refinement(C_PIECE)) == 3
    assert atomic_refinement(Piece("up", (1, 1, 1))) == [(1, 1, 1)]
    with pytest.raises(NotRefinable):
        atomic_refinement(Piece("up", (1, 1, 0)))
    with pytest.raises(ValueError):
        builtin_piece_set("OC", refinement=3)


@pytest.mark.parametrize("sid", BUILTIN_IDS)
def test_stitch_round_trip(sid):
    ps = builtin_piece_set(sid)
    grid = build_grid(4)
    for p in ps.rhombi:
        ref = reference_placement(p.shape)
        assign = dict(zip(ref.intervals, ps.refinements[p]))
        (sp,) = stitch(grid, ref.cells, assign)
        assert sp.as_piece() == Piece(p.shape, p.values)
        a, b = expand_rhombus(p.shape, p.values)
        assert {a, b} == {tuple(assign[s] for s in sides) for sides in
                          (grid_sides(c) for c in ref.cells)}


def grid_sides(cell):
    from puzzle_ideals.grid import cell_sides
    return cell_sides(cell)


def test_single_triangle_stitches_to_itself():
    grid = build_grid(1)
    (sp,) = stitch(grid, grid.cells, {1: 0, 2: 0, 3: 0})
    assert sp.values == (0, 0, 0)


def test_custom_file_format():
    text = """
    name mine   # plain KTW pieces
    up 0 0 0
    up 1 1 1
    down 0 0 0
    down 1 1 1
    left 0 1 0 1
    right 1 0 1 0
    bottom 1 0 1 0
    """
    ps = parse_piece_set(text)
    assert ps.id == "mine"
    assert ps.atomic == builtin_piece_set("O0").atomic
    with pytest.raises(ValueError):
        parse_piece_set("up 0 0")
    with pytest.raises(UnsupportedPieceSet):
        parse_piece_set("up 2 2 2")
