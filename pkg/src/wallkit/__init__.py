"""Measured walls structures, their lifts along gauges, and wreath products."""

from .errors import EstimationError, InputError, QueryError
from .groups import FiniteGroup, FreeGroup, FreeWord, GAction, IntegerGroup, left_cosets, parse_word
from .walls import (AlternateWalls, KernelTable, WallsStructure, direct_sum, from_alternate, orbit_invariant_walls,
                    pullback, scale_walls, symmetrize, to_alternate, wall_distance)
from .trees import Tree, cover_walk_length, hull_edges, tree_to_walls, word_cover_walk_length
from .gauges import Gauge, InvariantGauge, mask_support_gauge, support_gauge
from .lift import LiftedWalls, lift_distance, lift_walls_explicit
from .wreath import WreathElement, WreathProduct, parry_length, sigma_hat_distance
from .compression import CompressionFunction, phi_sigma_distance, verify_compression
from .hecke import coset_graph, hecke_check, hecke_kernel

__version__ = "0.1.0"
