import pytest

from puzzle_ideals.gf3 import Inconsistent, MissingVariable, Poly, matvec, parse_poly, solve

F = Poly.parse("x1 + x1^2 + 2*x2 + x2^2 + x3^2 + x1*x2*x3 + 2*x1^2*x2*x3")


@pytest.mark.parametrize("text,expected", [
    ("x1^5", "x1"),
    ("x1^3 + 2*x1", "0"),
    ("2*x1^2*x2^4 + x1^2*x2^2", "0"),
    ("x1^4*x2^3", "x1^2*x2"),
])
def test_normalize(text, expected):
    assert str(parse_poly(text)) == expected


def test_eval_examples():
    assert F.eval((0, 0, 0)) == 0
    assert F.eval((2, 2, 2)) == 1
    assert Poly().eval((1, 2)) == 0


def test_eval_missing_variable():
    with pytest.raises(MissingVariable):
        F.eval({1: 0, 2: 1})


def test_text_round_trip():
    text = "x1^2*x2 + 2*x1*x2^2 + 2*x1^2 + x1"
    assert str(Poly.parse(text)) == text
    assert Poly.parse(str(F)) == F


def test_arithmetic():
    x, y = Poly.var(1), Poly.var(2)
    assert (x + y) * (x - y) == x * x - y * y
    assert x ** 3 == x
    assert 3 * x == Poly()
    assert (1 - x) + x == Poly.const(1)


def test_rename_and_substitute():
    p = Poly.parse("x1*x2 + x3")
    assert str(p.rename({1: 5, 2: 7, 3: 1})) == str(Poly.parse("x5*x7 + x1"))
    assert p.substitute({1: 2, 2: 2}) == Poly.parse("x3 + 1")


def test_solve_examples():
    assert solve([[1]], [2]) == [2]
    assert solve([[1, 1], [0, 0]], [1, 0]) == [1, 0]
    with pytest.raises(Inconsistent):
        solve([[1], [1]], [1, 2])


def test_solve_satisfies_system():
    A = [[1, 2, 0, 1], [0, 1, 1, 2], [2, 2, 1, 0]]
    b = [1, 0, 2]
    assert matvec(A, solve(A, b)) == b
