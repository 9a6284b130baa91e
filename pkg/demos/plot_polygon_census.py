"""
A census of lattice-regular polygons
====================================

Walk through every convex lattice polygon that fits in a 5 x 5 grid, keep
the elementary lattice-regular ones and sort them into congruence classes.
Six classes survive, and none of them is a pentagon.
"""

from latreg.verify import run_classify_2d

report = run_classify_2d(2)
print(report.examined, "polygons examined")
print(report.vertex_count_histogram)

for rep, match in zip(report.representatives, report.catalog_matches):
    print(rep.vertices, "->", match)

###############################################################################
# The triangle ``(0,0), (1,0), (0,2)`` is an instructive failure: only the
# reflection fixing ``(1,0)`` survives as a lattice symmetry, so two of its
# six flags are reachable from any given one.

from latreg import from_vertices, symmetry_group

skew = from_vertices([(0, 0), (1, 0), (0, 2)])
group = symmetry_group(skew)
print(group.order, len(skew.flags))
print([g.to_json() for g in group.elements])
