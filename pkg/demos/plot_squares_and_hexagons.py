"""
Two squares that are not the same
=================================

The unit square and the parallelogram on ``e1`` and ``e1 + 2 e2`` are both
lattice-regular, yet no lattice-affine map takes one to the other: their
lattice areas already differ.
"""

from latreg import build, are_congruent, symmetry_group

# the two lattice squares of the catalog
sq1 = build("cube", 2, 1).polytope
sq2 = build("cube", 2, 2).polytope
print(sq1.vertices, sq1.lattice_volume)
print(sq2.vertices, sq2.lattice_volume)

# both have 8 flags and 8 lattice symmetries
for sq in (sq1, sq2):
    print(len(sq.flags), symmetry_group(sq).order)

# ...but they are not lattice-congruent
print(are_congruent(sq1, sq2))

###############################################################################
# The hexagons behave the same way. ``{6}_2`` contains seven interior lattice
# points, ``{6}_1`` only the origin.

from latreg import interior_lattice_points

for v in (1, 2):
    hexagon = build("hexagon", 2, v).polytope
    print(v, hexagon.lattice_volume, len(interior_lattice_points(hexagon)))
