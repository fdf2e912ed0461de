import pytest

from puzzle_ideals.gf3 import Poly
from puzzle_ideals.ideals import BadBoundary, build_ideal, check_boundary, ideal_stats
from puzzle_ideals.pieces import builtin_piece_set

O0 = builtin_piece_set("O0")


def test_n6_atomic_families():
    ideal = build_ideal("010101", "010101", "101010", O0, "atomic")
    stats = ideal_stats(ideal)
    assert stats["F1"] == 63 and stats["F3"] == 36 and stats["F4"] == 36
    f2 = {str(p) for p in ideal.families["F2"]}
    assert {"x46", "x31 + 2", "x19", "x10 + 2", "x4", "x1 + 2"} <= f2
    f3 = ideal.families["F3"]
    assert Poly.parse("x1 + x2 + x3") in f3
    assert Poly.parse("x56 + x57 + x63") in f3
    assert "F5" not in ideal.families


def test_full_kinds():
    stats = ideal_stats(build_ideal("010101", "010101", "101010", builtin_piece_set("OC"), "full"))
    assert stats["F5"] == 45
    assert stats["F6"] == 10


def test_n2_dump():
    ideal = build_ideal("01", "01", "10", O0, "atomic")
    assert ideal_stats(ideal)["F1"] == 9
    text = ideal.dump()
    assert text.startswith("# F1\nx1^3 + 2*x1\n")
    assert "# F3\nx1 + x2 + x3\n" in text


def test_side_free_fields():
    ideal = build_ideal("0101", "0101", None, O0, "side-free")
    bottom = ideal.grid.boundary("bottom")
    assert all(ideal.field_degree[v] == 2 for v in bottom)
    assert ideal.free_side == "bottom"
    assert len(ideal.families["F2"]) == 8


@pytest.mark.parametrize("words", [
    ("01", "011", "10"), ("01", "01", "11"), ("0a", "01", "10"), ("", "", ""), (None, None, "01"),
])
def test_bad_boundaries(words):
    with pytest.raises(BadBoundary):
        check_boundary(*words)


def test_side_free_needs_a_free_side():
    with pytest.raises(BadBoundary):
        build_ideal("01", "01", "10", O0, "side-free")
