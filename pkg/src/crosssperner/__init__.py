"""Cross-Sperner pairs and k-tuples of set families: constructions, bounds, checkers and exact search."""

from .lattice_core import (
    CrossPair,
    Family,
    SetWord,
    canonical_form,
    canonical_pair,
    comparable,
    complement_family,
    difference_family,
    incomparables,
    is_convex,
    is_cross_sperner,
    is_downward_closed,
    is_sperner,
    join_family,
    meet_family,
    neighborhood,
    shadow,
)

__version__ = "0.1.0"
