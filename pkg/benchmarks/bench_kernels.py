"""Compiled vs pure-Python kernels on the same workloads.

Each backend runs in its own interpreter (PUZZLE_PURE_PYTHON selects the
fallback), so both see a cold cache of templates and identical inputs.

    python3 benchmarks/bench_kernels.py [--repeat 3] [--big]
"""

import argparse
import json
import os
import subprocess
import sys

WORKLOADS = [
    ("tiling search n=10 OC", "oracle", "OC", ("0101010101", "0101010101", "1010101010")),
    ("tiling search n=10 OT", "oracle", "OT", ("0101010101", "0101010101", "1010101010")),
    ("groebner n=6 O0", "groebner", "O0", ("010101", "010101", "101010")),
    ("groebner n=6 OC", "groebner", "OC", ("010101", "010101", "101010")),
    ("groebner n=7 OC", "groebner", "OC", ("0101010", "0101010", "1010100")),
]
BIG = [("groebner n=8 OC", "groebner", "OC", ("01010101", "01010101", "10101010"))]

CHILD = r"""
import json, sys, time
from puzzle_ideals import kernels
from puzzle_ideals.constants import solve_points
from puzzle_ideals.pieces import builtin_piece_set
backend, pid, words, repeat = json.loads(sys.argv[1])
ps = builtin_piece_set(pid)
best = None
for _ in range(repeat):
    t = time.perf_counter()
    pts = solve_points(*words, ps, backend)
    dt = time.perf_counter() - t
    best = dt if best is None else min(best, dt)
print(json.dumps({"kernels": kernels.BACKEND, "seconds": best, "points": len(pts)}))
"""


def run(backend, pid, words, repeat, pure):
    env = dict(os.environ)
    env.pop("PUZZLE_PURE_PYTHON", None)
    if pure:
        env["PUZZLE_PURE_PYTHON"] = "1"
    env.setdefault("PUZZLE_MAX_GB_N", "8")
    arg = json.dumps([backend, pid, list(words), repeat])
    res = subprocess.run([sys.executable, "-c", CHILD, arg], env=env, capture_output=True,
                         text=True, check=True)
    return json.loads(res.stdout)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--big", action="store_true", help="include the n=8 Gröbner instance (minutes)")
    args = ap.parse_args(argv)

    rows = WORKLOADS + (BIG if args.big else [])
    print(f"{'workload':26} {'cython s':>10} {'python s':>10} {'speedup':>8}  points")
    for title, backend, pid, words in rows:
        fast = run(backend, pid, words, args.repeat, pure=False)
        slow = run(backend, pid, words, 1 if args.big else args.repeat, pure=True)
        if fast["kernels"] != "cython":
            print("compiled extension not built; run pip install -e . --no-build-isolation")
            return 1
        if fast["points"] != slow["points"]:
            print(f"{title}: backends disagree ({fast['points']} vs {slow['points']})")
            return 1
        ratio = slow["seconds"] / fast["seconds"]
        print(f"{title:26} {fast['seconds']:10.3f} {slow['seconds']:10.3f} {ratio:7.1f}x  {fast['points']}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
