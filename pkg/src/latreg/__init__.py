"""Exact computation with lattice-regular lattice polytopes.

The submodules build on each other: :mod:`latreg.exactalg` (integer and
rational linear algebra), :mod:`latreg.polytope` (hulls, faces, flags and
volumes), :mod:`latreg.symmetry` (lattice symmetries and congruence),
:mod:`latreg.catalog` (the elementary lattice-regular polytopes) and
:mod:`latreg.verify` (bounded checks of the classification).
"""

from latreg.catalog import CatalogEntry, all_entries, build, derive_cell24, octa_cube
from latreg.exactalg import AffineMap, DegenerateError, DimensionError, hnf, snf
from latreg.polytope import (
    Polytope,
    from_vertices,
    hull_coords,
    interior_lattice_points,
    is_elementary,
    lattice_distance,
    lattice_volume,
    multiple,
)
from latreg.symmetry import are_congruent, is_lattice_regular, symmetry_group

__all__ = [
    "AffineMap", "CatalogEntry", "DegenerateError", "DimensionError", "Polytope",
    "all_entries", "are_congruent", "build", "derive_cell24", "from_vertices", "hnf",
    "hull_coords", "interior_lattice_points", "is_elementary", "is_lattice_regular",
    "lattice_distance", "lattice_volume", "multiple", "octa_cube", "snf", "symmetry_group",
]

__version__ = "0.1.0"
