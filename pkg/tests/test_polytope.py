import itertools
import math

import numpy as np
import pytest
from scipy.spatial import ConvexHull

from latreg.catalog import build, listed_cell24
from latreg.exactalg import AffineMap, DegenerateError, DimensionError, det
from latreg.polytope import (
    Polytope,
    flags,
    from_vertices,
    hull_coords,
    interior_lattice_points,
    is_elementary,
    lattice_distance,
    lattice_volume,
    multiple,
)

SQUARE = from_vertices([(0, 0), (1, 0), (0, 1), (1, 1)])
UNIT_TRIANGLE = from_vertices([(0, 0), (1, 0), (0, 1)])


def brute_facets(p):
    """Vertex sets of facets via every n-subset of vertices and an exact
    cofactor normal; independent of the double-description code."""
    verts = p.vertices
    n = p.ambient_dim
    found = set()
    for subset in itertools.combinations(range(len(verts)), n):
        base = verts[subset[0]]
        rows = [[a - b for a, b in zip(verts[i], base)] for i in subset[1:]]
        normal = [(-1) ** c * det([r[:c] + r[c + 1:] for r in rows]) for c in range(n)]
        if not any(normal):
            continue
        vals = [sum(a * (x - y) for a, x, y in zip(normal, v, base)) for v in verts]
        if all(x >= 0 for x in vals) or all(x <= 0 for x in vals):
            found.add(tuple(i for i, x in enumerate(vals) if x == 0))
    return found


def float_volume(p):
    return ConvexHull(np.array(p.vertices, dtype=float)).volume * math.factorial(p.ambient_dim)


# -- construction ----------------------------------------------------------------

def test_from_vertices_examples():
    pt = from_vertices([(0, 0)])
    assert pt.dim == 0
    tri = from_vertices([(0, 0), (1, 0), (2, 0), (0, 2)])
    assert tri.vertices == ((0, 0), (0, 2), (2, 0))
    assert len(listed_cell24(1).vertices) == 24


def test_from_vertices_rejects_bad_input():
    with pytest.raises(ValueError):
        from_vertices([])
    with pytest.raises((ValueError, DimensionError)):
        from_vertices([(0, 0), (1, 0, 0)])


def test_json_round_trip_canonicalises():
    p = Polytope.from_json({"ambient_dim": 2, "vertices": [[1, 1], [0, 0], [1, 0], [0, 1]]})
    assert p == SQUARE
    assert Polytope.from_json(p.to_json()) == p


# -- faces and flags ---------------------------------------------------------------

def test_face_lattice_examples():
    assert SQUARE.face_lattice.f_vector == (4, 4)
    assert build("cross", 3, 1).polytope.face_lattice.f_vector == (6, 12, 8)
    assert build("cell24", 4, 1).polytope.face_lattice.f_vector == (24, 96, 96, 24)


@pytest.mark.parametrize("family, n, variant", [
    ("simplex", 3, 2), ("cube", 3, 3), ("cross", 3, 3), ("cross", 4, 2),
    ("cube", 4, 2), ("cell24", 4, 2),
])
def test_facets_match_brute_force(family, n, variant):
    p = build(family, n, variant).polytope
    assert set(p.face_lattice.faces[n - 1]) == brute_facets(p)


def test_flag_counts():
    assert len(flags(from_vertices([(0,), (1,)]))) == 2
    assert len(flags(SQUARE)) == 8
    assert len(flags(build("cell24", 4, 1).polytope)) == 1152


def test_flags_are_chains():
    p = build("cube", 3, 2).polytope
    fl = p.face_lattice
    for flag in p.flags:
        for d in range(1, len(flag)):
            assert set(fl.faces[d - 1][flag[d - 1]]) < set(fl.faces[d][flag[d]])


def test_supporting_functional_cuts_out_the_face():
    p = build("cross", 3, 2).polytope
    fl = p.face_lattice
    for d in range(fl.dim):
        for i, face in enumerate(fl.faces[d]):
            c, b = p.supporting_functional(d, i)
            values = [sum(x * y for x, y in zip(c, v)) for v in p.vertices]
            assert max(values) == b
            assert tuple(j for j, x in enumerate(values) if x == b) == face


# -- volume -------------------------------------------------------------------------

def test_lattice_volume_examples():
    assert lattice_volume(build("simplex", 3, 2).polytope) == 2
    assert lattice_volume(build("cube", 3, 3).polytope) == 24
    assert lattice_volume(build("hexagon", 2, 1).polytope) == 6


@pytest.mark.parametrize("family, n, variant", [
    ("simplex", 4, 5), ("cube", 4, 3), ("cross", 4, 3), ("cross", 3, 2),
    ("hexagon", 2, 2), ("cell24", 4, 1), ("cell24", 4, 2),
])
def test_lattice_volume_against_float_hull(family, n, variant):
    p = build(family, n, variant).polytope
    assert lattice_volume(p) == round(float_volume(p))


def test_lattice_volume_of_lower_dimensional_polytopes():
    # measured in the lattice of the affine hull
    seg = from_vertices([(0, 0, 0), (2, 2, 0)])
    assert lattice_volume(seg) == 2
    tri = from_vertices([(1, 0, 0), (0, 1, 0), (3, 3, 4)])
    assert lattice_volume(tri) == 1
    assert lattice_volume(from_vertices([(4, 4)])) == 1


# -- distance, multiples, elementarity ------------------------------------------------

def test_lattice_distance_examples():
    assert lattice_distance((0, 1), from_vertices([(0, 0), (1, 0)])) == 1
    base = from_vertices([(0, 0, 0), (1, 0, 0), (0, 1, 0)])
    assert lattice_distance((1, 1, 2), base) == 2
    cube2 = build("cube", 3, 2)
    o, e1, e2, top = (0, 0, 0), *cube2.generators
    facet = from_vertices([o, e1, e2, tuple(a + b for a, b in zip(e1, e2))])
    opposite = tuple(a + b + c for a, b, c in zip(e1, e2, top))
    assert lattice_distance(opposite, facet) == 2


def test_lattice_distance_errors():
    seg = from_vertices([(0, 0), (1, 0)])
    with pytest.raises(DegenerateError):
        lattice_distance((5, 0), seg)
    with pytest.raises(DimensionError):
        lattice_distance((0, 0, 1), seg)


def test_multiple_examples():
    seg = from_vertices([(0,), (1,)])
    assert multiple(seg, 2).vertices == ((0,), (2,))
    assert multiple(UNIT_TRIANGLE, 1) == UNIT_TRIANGLE
    big = multiple(UNIT_TRIANGLE, 3)
    assert big.vertices == ((0, 0), (0, 3), (3, 0))
    assert big.lattice_volume == 9
    with pytest.raises(ValueError):
        multiple(seg, 0)


def test_is_elementary_examples():
    assert is_elementary(UNIT_TRIANGLE)
    assert not is_elementary(multiple(UNIT_TRIANGLE, 2))
    assert is_elementary(build("cross", 3, 3).polytope)
    assert is_elementary(from_vertices([(3, 3)]))


# -- hull coordinates and interior points -----------------------------------------------

def test_hull_coords_segment():
    q, embed = hull_coords(from_vertices([(0, 0), (2, 2)]))
    assert q.ambient_dim == 1 and q.lattice_volume == 2
    images = sorted(embed(v + (0,)) for v in q.vertices)
    assert images == [(0, 0), (2, 2)]
    step = tuple(a - b for a, b in zip(embed((1, 0)), embed((0, 0))))
    assert step in {(1, 1), (-1, -1)}


def test_hull_coords_full_dimensional_is_identity():
    assert hull_coords(SQUARE) == (SQUARE, AffineMap.identity(2))


def test_hull_coords_of_tetrahedron_facet():
    # the facet is a unimodular triangle (cross product (4, 4, -5) is primitive)
    facet = from_vertices([(1, 0, 0), (0, 1, 0), (3, 3, 4)])
    q, embed = hull_coords(facet)
    assert q.ambient_dim == 2
    assert q.lattice_volume == 1
    assert sorted(embed(v + (0,)) for v in q.vertices) == list(facet.vertices)
    assert abs(det(embed.linear)) == 1


def test_interior_points_examples():
    assert interior_lattice_points(SQUARE) == []
    assert interior_lattice_points(from_vertices([(1, 0), (0, 1), (-1, -1)])) == [(0, 0)]
    assert interior_lattice_points(build("cube", 3, 2).polytope) == [(1, 1, 1)]
    with pytest.raises(DimensionError):
        interior_lattice_points(from_vertices([(0, 0), (1, 1)]))


def test_interior_points_pick_formula():
    # Pick: area = I + B/2 - 1, lattice volume = 2 * area
    hexagon = build("hexagon", 2, 2).polytope
    boundary = sum(math.gcd(*(a - b for a, b in zip(hexagon.vertices[i], hexagon.vertices[j])))
                   for i, j in hexagon.face_lattice.faces[1])
    assert hexagon.lattice_volume == 2 * len(interior_lattice_points(hexagon)) + boundary - 2
