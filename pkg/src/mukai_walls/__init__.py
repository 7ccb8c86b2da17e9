"""Exact stability arithmetic on polarized K3 surfaces."""
from .mukai import (HPlusOrtho, LatticeCoords, MukaiVector, PolarizedSurface, PureH, chi, complement_in,
                    h0_max, h0_upper_bound, pairing, shift, square, structure_sheaf, twist_h)
from .nslattice import GramLattice

__all__ = [
    "GramLattice", "HPlusOrtho", "LatticeCoords", "MukaiVector", "PolarizedSurface", "PureH",
    "chi", "complement_in", "h0_max", "h0_upper_bound", "pairing", "shift", "square",
    "structure_sheaf", "twist_h",
]
