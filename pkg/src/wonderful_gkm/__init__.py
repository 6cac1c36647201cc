"""Equivariant Chow rings of wonderful compactifications of symmetric spaces of minimal rank.

Fixed points, invariant curves and tangent weights of the torus action on
the wonderful compactification X and on the toric variety Y of restricted
Weyl chambers, with exact localization, Chern and Todd classes.
"""

from .gkm import EquivariantClass, GKMGraph, bb_betti, class_add, class_mul, localize_integral, validate_class
from .poly import Polynomial
from .rootsystem import RootSystem, build_root_system, generate_weyl, recognize_cartan_type
from .symspace import SymmetricSpace, build_symmetric_space, parse_space, validate_minimal_rank
from .wonderful import WonderfulGKM, build_wonderful

__version__ = "0.1.0"

__all__ = [
    "EquivariantClass", "GKMGraph", "Polynomial", "RootSystem", "SymmetricSpace", "WonderfulGKM",
    "bb_betti", "build_root_system", "build_symmetric_space", "build_wonderful", "class_add",
    "class_mul", "generate_weyl", "localize_integral", "parse_space", "recognize_cartan_type",
    "validate_class", "validate_minimal_rank",
]
