from itertools import product

import pytest

from puzzle_ideals.gf3 import Poly
from puzzle_ideals.pieces import ATOMIC, BUILTIN_IDS, builtin_piece_set
from puzzle_ideals.synthesis import (
    interpolate, monomial_basis, synth_distinguishing, synth_forbidding, template_bundle, truth_table,
)


def test_monomial_basis_order():
    basis = monomial_basis(2)
    assert len(basis) == 9
    assert basis[0] == (0, 0) and basis[-1] == (2, 2)


def test_interpolate_reproduces_table():
    table = {pt: (pt[0] * pt[1] + 2) % 3 for pt in product(range(3), repeat=2)}
    p = interpolate(table, 2)
    assert truth_table(p, 2) == table


@pytest.mark.parametrize("sid", BUILTIN_IDS)
def test_distinguishing(sid):
    ps = builtin_piece_set(sid)
    for o in ("up", "down"):
        f = synth_distinguishing(ps.atomic, o)
        for t in ATOMIC:
            assert f.eval(t) == (0 if t in ps.atomic[o] else 1)


def test_everything_allowed_gives_zero():
    f = synth_distinguishing({"up": set(ATOMIC), "down": set(ATOMIC)}, "up")
    assert f == Poly()


@pytest.mark.parametrize("sid", BUILTIN_IDS)
def test_forbidding(sid):
    ps = builtin_piece_set(sid)
    for d in ("left", "right", "bottom"):
        f = synth_forbidding(ps, d)
        for v in ps.psi[d]:
            assert f.eval(v) == (1 if v in ps.forbidden[d] else 0)
        if not ps.forbidden[d]:
            assert f == Poly()


def test_equivariant_up_template_matches_reference():
    ref = Poly.parse("x1^2*x2 + 2*x1*x2^2 + 2*x1^2 + x1")
    assert template_bundle(builtin_piece_set("OT")).f_up == ref


def test_implying_zero_on_refinement():
    for sid in ("OA", "OB", "OC", "OD"):
        ps = builtin_piece_set(sid)
        b = template_bundle(ps, full_implying=True)
        for im in ps.implicit:
            target = ps.refinements[im.polygon]
            assert b.implying[im].eval(target) == 0
            assert b.compact[im].eval(target) == 0


def test_bad_orientation():
    with pytest.raises(ValueError):
        synth_distinguishing(builtin_piece_set("O0").atomic, "sideways")
