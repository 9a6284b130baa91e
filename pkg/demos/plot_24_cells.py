"""
Growing a 24-cell out of a 4-cube
=================================

Add the eight points ``O + (v1 + v2 + v3 + v4)/2 +- v_i`` to the cube spanned
by ``v1 .. v4``. For the unit cube these points are not lattice points; for
the other two 4-cubes they are, and the result is a 24-cell.
"""

from latreg import are_congruent, build, derive_cell24

print(derive_cell24(build("cube", 4, 1)))        # None

cells = [build("cell24", 4, v).polytope for v in (1, 2)]
for variant in (2, 3):
    grown = derive_cell24(build("cube", 4, variant))
    print(variant, grown.face_lattice.f_vector,
          [are_congruent(grown, c) is not None for c in cells])

###############################################################################
# Each 24-cell has 1152 flags, and its lattice symmetry group is just as
# large, so it is lattice-regular. This is the slowest step here (about a
# second).

from latreg import symmetry_group

group = symmetry_group(cells[0])
print(group.order, len(cells[0].flags))
