from itertools import product

import pytest

from puzzle_ideals.grid import binary_to_partition, binary_words, word_size
from puzzle_ideals.oracle import (
    brute_force_tilings, count_tilings, lr_coefficient, lr_from_words, place_tilings,
    schur_multiply, schur_polynomial,
)
from puzzle_ideals.pieces import builtin_piece_set

O0 = builtin_piece_set("O0")


def test_lr_examples():
    assert lr_coefficient((1,), (1,), (2,)) == 1
    assert lr_coefficient((2, 1), (2, 1), (3, 2, 1)) == 2
    assert lr_coefficient((1,), (1,), (3,)) == 0
    assert lr_coefficient((8, 7, 6, 5, 4, 3, 2, 1), (6, 5, 4, 3, 2, 1, 1),
                          binary_to_partition("1111110100001000")) == 5


def test_schur():
    assert schur_multiply((1,), (1,), 2) == {(2,): 1, (1, 1): 1}
    assert schur_polynomial((3, 1), 2) == {(3, 1): 1, (2, 2): 1, (1, 3): 1}


def test_schur_agrees_with_lr():
    for lam, mu in product([(), (1,), (2,), (1, 1), (2, 1), (3,), (1, 1, 1)], repeat=2):
        prod = schur_multiply(lam, mu, sum(lam) + sum(mu))
        for nu, c in prod.items():
            assert lr_coefficient(lam, mu, tuple(p for p in nu if p)) == c


@pytest.mark.parametrize("n", range(1, 6))
def test_puzzles_count_lr(n):
    for k in range(n + 1):
        for lam, mu, nu in product(binary_words(n, k), repeat=3):
            c = count_tilings(lam, mu, nu, O0)
            assert c == lr_from_words(lam, mu, nu)
            if n <= 4:
                assert c == count_tilings(mu, lam, nu, O0)


def test_small_cases():
    assert brute_force_tilings("1", "1", "1", O0) == [(1, 1, 1)]
    assert count_tilings("010101", "010101", "101010", O0) == 2
    assert count_tilings("0101", "0101", "0110", O0) >= 1


@pytest.mark.parametrize("sid", ["O0", "OT", "OA", "OB", "OC", "OD"])
def test_direct_placement_agrees(sid):
    ps = builtin_piece_set(sid)
    for n in (2, 3):
        for k in range(n + 1):
            for lam, mu, nu in product(binary_words(n, k), repeat=3):
                assert len(place_tilings(lam, mu, nu, ps)) == count_tilings(lam, mu, nu, ps)


def test_nu_free_count_is_the_sum():
    free = brute_force_tilings("0101", "0101", None, O0)
    per = sum(count_tilings("0101", "0101", nu, O0) for nu in binary_words(4, 2))
    assert len(free) == per


def test_size_mismatch_vanishes():
    for lam, mu, nu in product(binary_words(4, 2), repeat=3):
        if word_size(nu) != word_size(lam) + word_size(mu):
            assert count_tilings(lam, mu, nu, O0) == 0
