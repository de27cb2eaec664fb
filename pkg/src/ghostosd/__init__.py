"""Max-plus powers of honest banded-circulant matrices.

The core entry points are re-exported here; see the submodules for the
full surface.
"""
from .semiring import (
    EPS,
    MaxPlusMatrix,
    WorkCounter,
    epsilon_matrix,
    mat_add,
    mat_mul,
    mat_power_naive,
    mp_add,
    mp_mul,
    scalar_shift,
    support,
)
from .honest import HonestMatrix, build_honest, idx, random_honest, to_dense, top_cycle_weight, window
from .ghost import Apex, ghost_power, ghost_sweep, three_term_update, two_term_update
from .decomposition import d_power_decomposed, d_power_direct, scalar_diag

__all__ = [
    "EPS", "MaxPlusMatrix", "WorkCounter", "epsilon_matrix", "mat_add", "mat_mul",
    "mat_power_naive", "mp_add", "mp_mul", "scalar_shift", "support",
    "HonestMatrix", "build_honest", "idx", "random_honest", "to_dense", "top_cycle_weight", "window",
    "Apex", "ghost_power", "ghost_sweep", "three_term_update", "two_term_update",
    "d_power_decomposed", "d_power_direct", "scalar_diag",
]
