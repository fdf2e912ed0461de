from itertools import product
import random

import pytest

from puzzle_ideals.gf3 import Poly
from puzzle_ideals.groebner import (
    MonomialOrder, WrongOrder, brute_force_variety, buchberger, certify, eliminate, enumerate_variety,
    intersect, is_reduced, point_decomposition,
)

x, y, z = Poly.var(1), Poly.var(2), Poly.var(3)


def lex(n):
    return MonomialOrder.lex(range(1, n + 1))


def test_unit_simplification():
    gb = buchberger([x ** 3 - x, x - 1], lex(1))
    assert [str(p) for p in gb.elements] == ["x1 + 2"]


def test_sum_and_difference():
    gb = buchberger([x + y, x - y], lex(2))
    assert gb.reduce(x) == Poly() and gb.reduce(y) == Poly()
    assert enumerate_variety(gb) == [(0, 0)]


def test_inconsistent():
    gb = buchberger([x - 1, x - 2], lex(1))
    assert gb.is_unit
    assert enumerate_variety(gb) == []


def test_empty_ideal_enumerates_everything():
    gb = buchberger([], lex(2))
    assert len(enumerate_variety(gb, [1, 2])) == 9


def random_poly(rng, nvars, nterms):
    p = Poly()
    for _ in range(nterms):
        m = Poly.const(rng.randrange(1, 3))
        for v in range(1, nvars + 1):
            m = m * Poly.var(v) ** rng.randrange(0, 3)
        p = p + m
    return p


@pytest.mark.parametrize("seed", range(40))
def test_variety_matches_brute_force(seed):
    rng = random.Random(seed)
    nv = rng.randrange(2, 6)
    polys = [random_poly(rng, nv, rng.randrange(1, 5)) for _ in range(rng.randrange(1, 4))]
    gb = buchberger(polys, lex(nv))
    assert enumerate_variety(gb, range(1, nv + 1)) == brute_force_variety(polys, range(1, nv + 1))
    assert certify(gb) and is_reduced(gb)
    assert all(gb.contains(p) for p in polys)


@pytest.mark.parametrize("seed", range(10))
def test_normal_form_is_linear(seed):
    rng = random.Random(100 + seed)
    gb = buchberger([random_poly(rng, 4, 3), random_poly(rng, 4, 3)], lex(4))
    p, q = random_poly(rng, 4, 5), random_poly(rng, 4, 5)
    assert gb.reduce(p + q) == gb.reduce(p) + gb.reduce(q)


@pytest.mark.parametrize("seed", range(10))
def test_radical(seed):
    rng = random.Random(200 + seed)
    gb = buchberger([random_poly(rng, 3, 3) for _ in range(2)], lex(3))
    for _ in range(10):
        p = random_poly(rng, 3, 3)
        if gb.contains(p * p):
            assert gb.contains(p)


def test_elimination():
    # eliminate x3 from {x3 - x1 - x2, x3^2 - 1}
    polys = [z - x - y, z * z - 1]
    gb = buchberger(polys, MonomialOrder.block([3], [1, 2]))
    elim = eliminate(gb, [1, 2])
    pts = set(brute_force_variety(polys, [1, 2, 3]))
    assert set(enumerate_variety(elim, [1, 2])) == {p[:2] for p in pts}
    assert all(gb.contains(g) for g in elim.elements)
    with pytest.raises(WrongOrder):
        eliminate(buchberger(polys, lex(3)), [1, 2])


def test_point_decomposition_and_intersection():
    gb = buchberger([x * x - x, y * y - y, x * y], MonomialOrder.lex([1, 2]))
    parts = point_decomposition(gb)
    assert sorted(pt for pt, _ in parts) == [(0, 0), (0, 1), (1, 0)]
    meet = intersect([prime for _, prime in parts], [1, 2])
    assert all(meet.contains(g) for g in gb.elements)
    assert all(gb.contains(g) for g in meet.elements)


def test_single_point():
    parts = point_decomposition(buchberger([x * x - x, x], lex(1)))
    assert [(pt, [str(q) for q in prime]) for pt, prime in parts] == [((0,), ["x1"])]


def test_dump_format():
    gb = buchberger([x * y + 2, y - 1], lex(2))
    assert gb.dump() == "x2 + 2\nx1 + 2\n"
