"""Sumsets in F_2^n and finite abelian groups: censuses, recognition, covers and shattering."""

__version__ = "0.1.0"

from .errors import ResourceLimitError
from .gf2core import BitSubset, GF2Matrix, GF2Vector, SumMode, hyperplane, sumset, xor_translate
from .groups import AbelianGroup, ColorSet, GroupSubset, sumset_g

__all__ = [
    "AbelianGroup",
    "BitSubset",
    "ColorSet",
    "GF2Matrix",
    "GF2Vector",
    "GroupSubset",
    "ResourceLimitError",
    "SumMode",
    "hyperplane",
    "sumset",
    "sumset_g",
    "xor_translate",
]
