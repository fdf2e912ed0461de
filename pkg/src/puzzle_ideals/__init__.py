"""Grassmannian puzzles as F3 polynomial systems."""

from .constants import (
    BackendInfeasible, InvalidPoint, Tiling, WeightPoly, constant, equivariant_constant,
    point_to_tiling, side_free_sweep,
)
from .gf3 import Poly
from .grid import binary_to_partition, build_grid, partition_to_binary
from .groebner import GroebnerBasis, MonomialOrder, buchberger, eliminate, enumerate_variety
from .ideals import PuzzleIdeal, build_ideal, ideal_stats
from .kernels import BACKEND
from .oracle import brute_force_tilings, lr_coefficient
from .pieces import PieceSet, builtin_piece_set, load_piece_set

__version__ = "0.1.0"
