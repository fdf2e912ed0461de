"""Acceptance criteria, one test each; every test prints its PASS/FAIL line."""

import pytest

from puzzle_ideals.acceptance import CRITERIA, Context, run_one


@pytest.fixture(scope="module")
def ctx():
    # criterion 8 certifies the bases kept by 1, 3 and 6
    return Context()


@pytest.mark.parametrize("number", [c[0] for c in CRITERIA], ids=[f"c{c[0]}" for c in CRITERIA])
def test_criterion(number, ctx, capsys):
    outcome = run_one(number, ctx)
    with capsys.disabled():
        print("\n" + outcome.line())
    assert outcome.ok, outcome.line()
