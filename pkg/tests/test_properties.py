from itertools import product

from hypothesis import given, settings, strategies as st

from puzzle_ideals.gf3 import Inconsistent, Poly, matvec, normalize, solve
from puzzle_ideals.groebner import MonomialOrder, brute_force_variety, buchberger, enumerate_variety

NV = 4

raw_terms = st.dictionaries(
    st.lists(st.tuples(st.integers(1, NV), st.integers(1, 7)), max_size=3, unique_by=lambda t: t[0])
    .map(lambda m: tuple(sorted(m))),
    st.integers(-5, 5),
    max_size=6,
)
polys = raw_terms.map(normalize)
points = st.tuples(*[st.integers(0, 2)] * NV)


def raw_eval(raw, pt):
    total = 0
    for m, c in raw.items():
        for v, e in m:
            c *= pt[v - 1] ** e
        total += c
    return total % 3


@settings(max_examples=1000, deadline=None)
@given(polys, polys, points)
def test_eval_is_a_ring_homomorphism(p, q, pt):
    assert (p + q).eval(pt) == (p.eval(pt) + q.eval(pt)) % 3
    assert (p * q).eval(pt) == (p.eval(pt) * q.eval(pt)) % 3


@settings(max_examples=300, deadline=None)
@given(raw_terms)
def test_normalize_idempotent_and_faithful(raw):
    p = normalize(raw)
    assert normalize(p.terms) == p
    assert all(e <= 2 for m in p.terms for _, e in m)
    for pt in product(range(3), repeat=NV):
        assert p.eval(pt) == raw_eval(raw, pt)


@settings(max_examples=300, deadline=None)
@given(st.integers(1, 5).flatmap(lambda c: st.tuples(
    st.lists(st.lists(st.integers(0, 2), min_size=c, max_size=c), min_size=1, max_size=6),
    st.integers(0, 10 ** 6))))
def test_solve(data):
    A, seed = data
    b = [(seed // 3 ** i) % 3 for i in range(len(A))]
    try:
        x = solve(A, b)
    except Inconsistent:
        return
    assert matvec(A, x) == b


@settings(max_examples=150, deadline=None)
@given(st.lists(polys, min_size=1, max_size=3))
def test_variety_equals_brute_force(gens):
    gb = buchberger(gens, MonomialOrder.lex(range(1, NV + 1)))
    assert enumerate_variety(gb, range(1, NV + 1)) == brute_force_variety(gens, range(1, NV + 1))


@settings(max_examples=150, deadline=None)
@given(st.lists(polys, min_size=1, max_size=3), polys, polys)
def test_normal_form_linear(gens, p, q):
    gb = buchberger(gens, MonomialOrder.lex(range(1, NV + 1)))
    assert gb.reduce(p + q) == gb.reduce(p) + gb.reduce(q)
    assert gb.reduce(gb.reduce(p)) == gb.reduce(p)
