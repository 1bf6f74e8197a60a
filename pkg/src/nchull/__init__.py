"""Noncrossing partition lattices of hull configurations."""

from .configuration import HullConfig, ShapeError, parse_shape, realize
from .kernels import BACKEND
from .lattice import NCLattice, Partition, build_lattice, is_noncrossing, join, meet
from .oracle import BudgetError

__all__ = [
    "BACKEND",
    "BudgetError",
    "HullConfig",
    "NCLattice",
    "Partition",
    "ShapeError",
    "build_lattice",
    "is_noncrossing",
    "join",
    "meet",
    "parse_shape",
    "realize",
]
