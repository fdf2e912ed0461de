import io
import re
import xml.etree.ElementTree as ET

import pytest

from puzzle_ideals.cli import main
from puzzle_ideals.constants import constant, point_to_tiling
from puzzle_ideals.pieces import builtin_piece_set
from puzzle_ideals.render import render_ascii, render_svg, render_tiling

O0, OT = builtin_piece_set("O0"), builtin_piece_set("OT")


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


def test_single_triangle():
    t = point_to_tiling((0, 0, 0), O0, 1)
    assert render_ascii(t) == "0\n"
    assert "up(1,1) 0/0/0" in render_ascii(t, labels=True)


def test_render_is_deterministic():
    res = constant("010101", "010101", "101010", O0, tilings=True)
    for t in res.tilings:
        assert render_tiling(t, "svg") == render_tiling(t, "svg")
        assert render_tiling(t, "ascii") == render_tiling(t, "ascii")


def test_svg_colours_and_weights():
    res = constant("0101", "0101", "0101", OT, tilings=True)
    t = next(t for t in res.tilings if t.equivariant_pieces())
    svg = render_svg(t)
    ET.fromstring(svg)  # well formed
    assert "#3f8f3a" in svg
    i, j = t.weight_factors()[0]
    assert f"({i},{j})" in svg
    assert "#f4a6a6" in render_svg(point_to_tiling((0, 0, 0), O0, 1))


def test_constant_commands():
    assert run("constant", "--lambda", "010101", "--mu", "010101", "--nu", "101010",
               "--pieces", "Ω0", "--backend", "groebner") == (0, "2\n")
    assert run("constant", "--lambda", "0", "--mu", "0", "--nu", "0", "--pieces", "Ω0") == (0, "1\n")
    code, out = run("constant", "--lambda", "2,1", "--mu", "2,1", "--nu", "3,2,1", "--n", "6", "--k", "3")
    assert (code, out) == (0, "2\n")
    code, out = run("constant", "--lambda", "0101", "--mu", "0101", "--nu", "0101", "--pieces", "OC")
    assert out == "1\nsigned=-1\n"
    code, out = run("constant", "--lambda", "0101", "--mu", "0101", "--nu", "1001", "--pieces", "OT")
    assert out.splitlines()[1].startswith("weight=")


def test_sweep_command():
    code, out = run("sweep", "--lambda", "0011", "--mu", "0011")
    assert (code, out) == (0, "nu=0011 count=1 signed=1\n")


def test_gb_and_certify():
    args = ["--lambda", "0101", "--mu", "0101", "--nu", "1001"]
    code, out = run("gb", *args, "--certify")
    assert code == 0 and re.match(r"x\d+", out)
    code, out = run("gb", *args, "--ideal")
    assert "# F1" in out and "generators=" in out
    code, out = run("certify", *args, "--pieces", "OC")
    assert code == 0 and out.startswith("certified:")


def test_tilings_and_render(tmp_path):
    args = ["--lambda", "010101", "--mu", "010101", "--nu", "101010"]
    code, out = run("tilings", *args, "--points")
    assert code == 0 and len(out.splitlines()) == 2
    code, out = run("render", *args, "--format", "svg", "--out", str(tmp_path / "t"))
    assert code == 0 and (tmp_path / "t_1.svg").exists() and (tmp_path / "t_2.svg").exists()
    code, out = run("render", *args, "--labels")
    assert out.count("# tiling") == 2


@pytest.mark.parametrize("argv,code", [
    (["constant", "--lambda", "01", "--mu", "011", "--nu", "10"], 2),
    (["constant", "--lambda", "0x", "--mu", "01", "--nu", "10"], 2),
    (["constant", "--lambda", "4", "--mu", "1", "--nu", "1", "--n", "2", "--k", "1"], 2),
    (["constant", "--lambda", "01", "--mu", "01", "--nu", "10", "--pieces", "nope"], 2),
    (["frobnicate"], 2),
    (["constant", "--lambda", "010101010", "--mu", "010101010", "--nu", "101010100",
      "--backend", "groebner"], 3),
])
def test_exit_codes(argv, code):
    assert run(*argv)[0] == code
