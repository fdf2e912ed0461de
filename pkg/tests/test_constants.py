from itertools import product

import pytest

from puzzle_ideals.constants import (
    BackendInfeasible, InvalidPoint, WeightPoly, constant, drag_indices, equivariant_constant,
    k_sign, point_to_tiling, side_free_sweep, solve_points, sweep_table,
)
from puzzle_ideals.grid import binary_words, word_size
from puzzle_ideals.oracle import brute_force_tilings, lr_from_words
from puzzle_ideals.pieces import BUILTIN_IDS, builtin_piece_set

O0, OT = builtin_piece_set("O0"), builtin_piece_set("OT")


@pytest.mark.parametrize("backend", ["groebner", "oracle"])
def test_n6_instance(backend):
    res = constant("010101", "010101", "101010", O0, backend, tilings=True)
    assert res.count == res.signed == 2
    assert len(res.tilings) == 2


def test_trivial_and_empty():
    assert constant("0", "0", "0", O0).count == 1
    assert constant("0101", "0101", "1100", O0).count == 0
    assert str(equivariant_constant("01", "01", "10")) == "0"


@pytest.mark.parametrize("sid", BUILTIN_IDS)
def test_backends_agree_n3(sid):
    ps = builtin_piece_set(sid)
    for k in range(4):
        for lam, mu, nu in product(binary_words(3, k), repeat=3):
            assert solve_points(lam, mu, nu, ps, "groebner") == solve_points(lam, mu, nu, ps, "oracle")


def test_k_sign():
    assert k_sign("0101", "0101", "1001") == 1
    assert k_sign("0101", "0011", "1001") == -1
    res = constant("0101", "0101", "0101", builtin_piece_set("OC"))
    assert res.count > 0 and res.signed == -res.count


def test_point_round_trip():
    for pt in brute_force_tilings("0101", "0101", "1010", OT):
        t = point_to_tiling(pt, OT, 4)
        assert t.assignment == pt
        area = sum(len(q.placement.cells) for q in t.recovered)
        assert area == 16


def test_invalid_point():
    with pytest.raises(InvalidPoint):
        point_to_tiling((1, 1, 0), O0, 1)
    with pytest.raises(InvalidPoint):
        point_to_tiling((0, 0), O0, 1)
    assert point_to_tiling((0, 0, 0), O0, 1).recovered[0].piece.values == (0, 0, 0)


def test_drag_rule():
    assert drag_indices(2, (1, 1)) == (2, 1)
    assert drag_indices(6, (5, 1)) == (2, 1)


def test_weight_poly():
    w = WeightPoly(6)
    w.add_product([(5, 1), (6, 5)])
    assert str(w) == "+1*y1*y5 -1*y1*y6 -1*y5^2 +1*y5*y6"
    assert w.evaluate([1, 0, 0, 0, 3, 4]) == (3 - 1) * (4 - 3)
    assert WeightPoly.factor_string([(5, 1), (6, 5)]) == "(y5-y1)*(y6-y5)"


def test_equivariant_degree_zero_is_lr():
    for lam, mu, nu in product(binary_words(4, 2), repeat=3):
        if word_size(nu) == word_size(lam) + word_size(mu):
            w = equivariant_constant(lam, mu, nu)
            assert w.is_constant() and w.constant_value() == lr_from_words(lam, mu, nu)


@pytest.mark.parametrize("sid", ["O0", "OT", "OC"])
@pytest.mark.parametrize("side", ["left", "right", "bottom"])
def test_sweep_backends_agree(sid, side):
    ps = builtin_piece_set(sid)
    for lam, mu in product(binary_words(3, 1), repeat=2):
        assert side_free_sweep(lam, mu, side, ps, "groebner") == side_free_sweep(lam, mu, side, ps, "oracle")


def test_sweep_table():
    res = side_free_sweep("0011", "0011")
    assert res == {"0011": 1}
    assert sweep_table(res, "0011", "0011", "bottom", O0) == "nu=0011 count=1 signed=1\n"
    assert sum(side_free_sweep("0101", "0101").values()) == len(brute_force_tilings("0101", "0101", None, O0))


def test_size_guard(monkeypatch):
    monkeypatch.setenv("PUZZLE_MAX_GB_N", "3")
    with pytest.raises(BackendInfeasible):
        constant("0101", "0101", "1001", O0, "groebner")
    assert constant("0101", "0101", "1001", O0, "oracle").count == 1
