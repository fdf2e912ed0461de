"""The compiled kernels must agree exactly with the pure-Python fallback."""

from itertools import product
import random

import pytest

from puzzle_ideals import _pykernels, groebner, kernels, oracle
from puzzle_ideals.constants import groebner_basis
from puzzle_ideals.grid import binary_words
from puzzle_ideals.pieces import BUILTIN_IDS, builtin_piece_set

ck = pytest.importorskip("puzzle_ideals._ckernels", reason="compiled extension not built")


def test_backend_selected():
    assert kernels.BACKEND in ("cython", "python")


def test_mono_mul_folds_cubes():
    LO = int("01" * 4, 2)
    x = 1          # x1
    x2 = 2         # x1^2
    assert _pykernels.mono_mul(x, x2, LO) == x        # x^3 = x
    assert _pykernels.mono_mul(x2, x2, LO) == x2      # x^4 = x^2
    assert ck.mono_mul(x2, 1 << 2, LO) == x2 | (1 << 2)


@pytest.mark.parametrize("sid", BUILTIN_IDS)
def test_tiling_search_parity(sid, monkeypatch):
    ps = builtin_piece_set(sid)
    cases = [(l, m, v) for n in (3, 4) for k in range(n + 1) for l, m, v in product(binary_words(n, k), repeat=3)]
    cases += [("0101", "0101", None), ("0011", None, "0101"), (None, "0110", "1001")]
    for mod in (_pykernels, ck):
        monkeypatch.setattr(oracle, "kernels", mod)
        got = [oracle.brute_force_tilings(*c, ps) for c in cases]
        if mod is _pykernels:
            expected = got
    assert got == expected


def test_tiling_search_limit(monkeypatch):
    ps = builtin_piece_set("OT")
    for mod in (_pykernels, ck):
        monkeypatch.setattr(oracle, "kernels", mod)
        assert len(oracle.brute_force_tilings("010101", "010101", None, ps, limit=3)) == 3


@pytest.mark.parametrize("sid", BUILTIN_IDS)
def test_groebner_parity(sid, monkeypatch):
    ps = builtin_piece_set(sid)
    rng = random.Random(sid)
    words = binary_words(5, 2)
    cases = [tuple(rng.choice(words) for _ in range(3)) for _ in range(4)]
    dumps = {}
    for mod in (_pykernels, ck):
        monkeypatch.setattr(groebner, "kernels", mod)
        dumps[mod.__name__] = [groebner_basis(*c, ps).dump() for c in cases]
    a, b = dumps.values()
    assert a == b


def test_wide_ring_falls_back(monkeypatch):
    # more than 128 variables: the compiled reducers hand over to Python
    from puzzle_ideals.gf3 import Poly
    monkeypatch.setattr(groebner, "kernels", ck)
    polys = [Poly.var(v) - Poly.var(v + 1) for v in range(1, 140)] + [Poly.var(140) - 1]
    gb = groebner.buchberger(polys, groebner.MonomialOrder.lex(range(1, 141)))
    assert groebner.enumerate_variety(gb) == [(1,) * 140]
