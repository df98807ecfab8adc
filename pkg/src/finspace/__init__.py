"""Finite T0 spaces: cores, homology, and certified wedge splittings."""
from .poset import Poset, parse_hasse, to_hasse

__all__ = ["Poset", "parse_hasse", "to_hasse"]
__version__ = "0.1.0"
