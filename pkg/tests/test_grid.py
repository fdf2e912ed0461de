import pytest

from puzzle_ideals.grid import (
    DoesNotFit, RHOMBUS_DIRECTIONS, binary_to_partition, binary_words, build_grid, cell_sides,
    partition_to_binary,
)


@pytest.mark.parametrize("n", range(1, 8))
def test_counts(n):
    g = build_grid(n)
    assert g.N == 3 * n * (n + 1) // 2
    assert len(g.ups) == n * (n + 1) // 2
    assert len(g.downs) == n * (n - 1) // 2
    for d in RHOMBUS_DIRECTIONS:
        assert len(g.rhombi(d)) == n * (n - 1) // 2


def test_sides_n6():
    g = build_grid(6)
    assert g.N == 63
    up21 = next(c for c in g.ups if c[1:] == (2, 1))
    down21 = next(c for c in g.downs if c[1:] == (2, 1))
    assert cell_sides(up21) == (4, 5, 8)
    assert sorted(cell_sides(down21)) == [3, 5, 6]


def test_boundaries():
    g = build_grid(6)
    assert g.boundary("left") == [46, 31, 19, 10, 4, 1]
    assert g.boundary("right") == [2, 7, 15, 26, 40, 57]
    assert build_grid(1).boundary("bottom") == [3]
    assert build_grid(16).N == 408


@pytest.mark.parametrize("n", range(1, 6))
def test_interval_incidence(n):
    g = build_grid(n)
    seen = {}
    for c in g.cells:
        for s in cell_sides(c):
            seen[s] = seen.get(s, 0) + 1
    boundary = set(g.boundary("left")) | set(g.boundary("right")) | set(g.boundary("bottom"))
    assert len(boundary) == 3 * n
    assert set(seen) == set(range(1, g.N + 1))
    for s, k in seen.items():
        assert k == (1 if s in boundary else 2)


def test_rhombi_are_up_down_pairs():
    g = build_grid(4)
    for d in RHOMBUS_DIRECTIONS:
        for p in g.rhombi(d):
            kinds = sorted(c[0] for c in p.cells)
            assert len(kinds) == 2 and kinds[0] != kinds[1]
            a, b = (set(cell_sides(c)) for c in p.cells)
            assert len(a & b) == 1


def test_polygons():
    assert len(build_grid(2).polygon_placements("up2")) == 1
    assert len(build_grid(3).polygon_placements("hex")) == 1
    assert build_grid(1).polygon_placements("hex") == []


def test_partitions():
    assert partition_to_binary((3, 1), 6, 3) == "100101"
    assert partition_to_binary((8, 7, 6, 5, 4, 3, 2, 1), 16, 8) == "1010101010101010"
    # the empty partition sits at the end of the word under this convention
    assert partition_to_binary((), 2, 1) == "01"
    with pytest.raises(DoesNotFit):
        partition_to_binary((4,), 6, 3)
    for w in binary_words(6, 3):
        assert partition_to_binary(binary_to_partition(w), 6, 3) == w
