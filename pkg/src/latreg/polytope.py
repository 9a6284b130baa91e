"""Lattice polytopes: exact hulls, face lattices, flags and lattice measures.

A :class:`Polytope` is stored by its vertices only. Everything else (affine
hull lattice, facets, face lattice, flags) is derived on demand with exact
integer arithmetic and cached on the instance.

Facets come from a double-description pass over the homogenised vertex
cone, carried out in coordinates of the lattice of the affine hull so that
lower-dimensional polytopes are handled the same way as full-dimensional
ones.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from latreg.exactalg import (
    AffineMap,
    DegenerateError,
    DimensionError,
    det,
    hnf,
    identity,
    inverse,
    matmul,
    matvec,
    rank,
    snf,
    transpose,
)

__all__ = [
    "Polytope",
    "FaceLattice",
    "Flag",
    "from_vertices",
    "face_lattice",
    "flags",
    "lattice_volume",
    "lattice_distance",
    "lattice_length",
    "multiple",
    "is_elementary",
    "hull_coords",
    "interior_lattice_points",
]

#: A flag is one face index per dimension, ``flag[d]`` indexing
#: ``FaceLattice.faces[d]``; the last entry is always 0 (the polytope).
Flag = tuple


# -- hull frame -------------------------------------------------------------

def _hull_frame(points):
    """Origin, unimodular basis and affine dimension of the hull lattice.

    Returns ``(origin, U, U_inv, k)`` where the first ``k`` columns of the
    unimodular ``U`` are an HNF basis of the integer points of the linear
    span of ``p - origin``.
    """
    origin = points[0]
    n = len(origin)
    diffs = [tuple(a - b for a, b in zip(p, origin)) for p in points[1:]]
    diffs = [d for d in diffs if any(d)]
    if not diffs:
        return origin, identity(n), identity(n), 0
    s, _, v = snf(diffs)
    k = sum(1 for i in range(min(len(s), n)) if s[i][i])
    # rows of v^-1 are a basis of Z^n whose first k span the saturated lattice
    v_inv = tuple(tuple(int(x) for x in row) for row in inverse(v))
    basis = transpose(v_inv)                       # columns
    # normalise the first k columns with a column HNF
    head = tuple(row[:k] for row in basis)
    h, w = hnf(head)
    full_w = [list(row) for row in identity(n)]
    for i in range(k):
        for j in range(k):
            full_w[i][j] = w[i][j]
    u = matmul(basis, full_w)
    u_inv = tuple(tuple(int(x) for x in row) for row in inverse(u))
    return origin, u, u_inv, k


def _to_local(points, origin, u_inv, k):
    out = []
    for p in points:
        x = matvec(u_inv, tuple(a - b for a, b in zip(p, origin)))
        if any(x[k:]):
            raise DegenerateError("point outside the affine hull")
        out.append(tuple(x[:k]))
    return out


# -- double description -----------------------------------------------------

def _primitive(v):
    g = math.gcd(*v)
    return tuple(x // g for x in v) if g > 1 else tuple(v)


def _facets_full(points):
    """Facets of the hull of full-dimensional integer ``points`` in Z^k.

    Returns a list of ``(normal, offset, members)`` with primitive integer
    ``normal`` such that ``normal . x <= offset`` on the hull, equality
    exactly for the point indices in the frozenset ``members``.
    """
    k = len(points[0])
    d = k + 1
    rows = [(1,) + tuple(p) for p in points]
    basis = []
    for i, r in enumerate(rows):
        if rank([rows[j] for j in basis] + [r]) > len(basis):
            basis.append(i)
            if len(basis) == d:
                break
    if len(basis) < d:
        raise DegenerateError("points are not full-dimensional")
    inv = inverse([rows[i] for i in basis])
    rays = []
    zeros = []
    for j in range(d):
        col = [inv[i][j] for i in range(d)]
        lcm = math.lcm(*(x.denominator for x in col))
        rays.append(_primitive([int(x * lcm) for x in col]))
        zeros.append(sum(1 << basis[i] for i in range(d) if i != j))

    for i in range(len(rows)):
        if i in basis:
            continue
        a = rows[i]
        bit = 1 << i
        vals = [sum(x * y for x, y in zip(a, r)) for r in rays]
        pos = [j for j, x in enumerate(vals) if x > 0]
        neg = [j for j, x in enumerate(vals) if x < 0]
        if not neg:
            zeros = [z | bit if vals[j] == 0 else z for j, z in enumerate(zeros)]
            continue
        new_rays, new_zeros = [], []
        for p in pos:
            for q in neg:
                common = zeros[p] & zeros[q]
                if common.bit_count() < d - 2:
                    continue
                if any(r != p and r != q and zeros[r] & common == common
                       for r in range(len(rays))):
                    continue
                vp, vq = vals[p], vals[q]
                new_rays.append(_primitive([vp * y - vq * x for x, y in zip(rays[p], rays[q])]))
                new_zeros.append(common | bit)
        keep = [j for j, x in enumerate(vals) if x >= 0]
        rays = [rays[j] for j in keep] + new_rays
        zeros = [zeros[j] | bit if vals[j] == 0 else zeros[j] for j in keep] + new_zeros

    out = []
    for r in rays:
        normal = tuple(-x for x in r[1:])
        g = math.gcd(*normal)
        normal = tuple(x // g for x in normal)
        offset = max(sum(x * y for x, y in zip(normal, p)) for p in points)
        members = frozenset(j for j, p in enumerate(points)
                            if sum(x * y for x, y in zip(normal, p)) == offset)
        out.append((normal, offset, members))
    out.sort(key=lambda f: (sorted(f[2]), f[0]))
    return out


def _extreme_indices(local, k):
    if k == 0:
        return [0]
    facets = _facets_full(local)
    everything = frozenset(range(len(local)))
    out = []
    for i in range(len(local)):
        meet = everything
        for _, _, members in facets:
            if i in members:
                meet &= members
        if meet == {i}:
            out.append(i)
    return out


# -- types ------------------------------------------------------------------

@dataclass(frozen=True)
class FaceLattice:
    """Graded face lattice.

    ``faces[d]`` lists the d-faces as sorted tuples of vertex indices, in
    lexicographic order. ``boundary[d][i]`` lists the indices (into
    ``faces[d - 1]``) of the facets of face ``faces[d][i]``; ``boundary[0]``
    holds empty tuples.
    """

    faces: tuple[tuple[tuple[int, ...], ...], ...]
    boundary: tuple[tuple[tuple[int, ...], ...], ...]

    @property
    def dim(self) -> int:
        return len(self.faces) - 1

    @property
    def f_vector(self) -> tuple[int, ...]:
        """Face counts in dimensions ``0 .. dim - 1``."""
        return tuple(len(self.faces[d]) for d in range(self.dim))

    def index(self, d: int, vertex_set: Iterable[int]) -> int:
        return self._lookup[d][tuple(sorted(vertex_set))]

    @cached_property
    def _lookup(self):
        return [{f: i for i, f in enumerate(level)} for level in self.faces]


@dataclass(frozen=True)
class Polytope:
    """Convex hull of lattice points, stored by its canonical vertex list.

    Use :func:`from_vertices` to build one from arbitrary points; the
    constructor itself expects vertices that are already the distinct
    extreme points in lexicographic order.
    """

    ambient_dim: int
    vertices: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        verts = tuple(tuple(int(x) for x in v) for v in self.vertices)
        if not verts:
            raise ValueError("a polytope needs at least one vertex")
        if any(len(v) != self.ambient_dim for v in verts):
            raise DimensionError(f"vertices must have length {self.ambient_dim}")
        if list(verts) != sorted(set(verts)):
            raise ValueError("vertices must be distinct and sorted; use from_vertices")
        object.__setattr__(self, "vertices", verts)

    def __repr__(self):
        return f"Polytope(dim={self.dim}, ambient_dim={self.ambient_dim}, n_vertices={len(self.vertices)})"

    @cached_property
    def vertex_index(self) -> dict:
        """Map from vertex to its position in ``vertices``."""
        return {v: i for i, v in enumerate(self.vertices)}

    # frame ---------------------------------------------------------------
    @cached_property
    def _frame(self):
        return _hull_frame(self.vertices)

    @property
    def dim(self) -> int:
        """Affine dimension."""
        return self._frame[3]

    @property
    def is_full_dimensional(self) -> bool:
        return self.dim == self.ambient_dim

    @cached_property
    def local_vertices(self) -> tuple[tuple[int, ...], ...]:
        """Vertices in hull-lattice coordinates (length ``dim`` each)."""
        origin, _, u_inv, k = self._frame
        return tuple(_to_local(self.vertices, origin, u_inv, k))

    @cached_property
    def facets(self) -> tuple:
        """``(normal, offset, vertex indices)`` triples in hull coordinates."""
        if self.dim == 0:
            return ()
        return tuple(_facets_full(self.local_vertices))

    @cached_property
    def face_lattice(self) -> FaceLattice:
        k = self.dim
        top = tuple(range(len(self.vertices)))
        if k == 0:
            return FaceLattice(((top,),), ((),))
        facet_sets = [members for _, _, members in self.facets]
        levels = {k: [frozenset(top)], k - 1: list(dict.fromkeys(facet_sets))}
        for d in range(k - 1, 0, -1):
            below = {}
            for face in levels[d]:
                cuts = {face & g for g in facet_sets}
                cuts = [c for c in cuts if c and c != face]
                for c in cuts:
                    if not any(c < other for other in cuts):
                        below[c] = None
            levels[d - 1] = list(below)
        faces = tuple(tuple(sorted(tuple(sorted(f)) for f in levels[d])) for d in range(k + 1))
        lookup = [{f: i for i, f in enumerate(level)} for level in faces]
        boundary = [tuple(() for _ in faces[0])]
        for d in range(1, k + 1):
            level = []
            for face in faces[d]:
                s = set(face)
                level.append(tuple(sorted(j for f, j in lookup[d - 1].items() if s.issuperset(f))))
            boundary.append(tuple(level))
        return FaceLattice(faces, tuple(boundary))

    @cached_property
    def flags(self) -> tuple[Flag, ...]:
        fl = self.face_lattice
        k = fl.dim
        out = []

        def down(d, i, chain):
            chain = chain + (i,)
            if d == 0:
                out.append(chain[::-1])
                return
            for j in fl.boundary[d][i]:
                down(d - 1, j, chain)

        down(k, 0, ())
        out.sort()
        return tuple(out)

    @cached_property
    def face_centroids(self) -> tuple[tuple[tuple[Fraction, ...], ...], ...]:
        """Vertex centroid of every face, in ambient coordinates."""
        out = []
        for level in self.face_lattice.faces:
            row = []
            for face in level:
                m = len(face)
                row.append(tuple(Fraction(sum(self.vertices[i][c] for i in face), m)
                                 for c in range(self.ambient_dim)))
            out.append(tuple(row))
        return tuple(out)

    def flag_points(self, flag: Flag) -> tuple[tuple[Fraction, ...], ...]:
        """Face centroids along ``flag``, vertex first."""
        return tuple(self.face_centroids[d][i] for d, i in enumerate(flag))

    def supporting_functional(self, d: int, i: int) -> tuple[tuple[int, ...], int]:
        """Integer ``(c, b)`` with ``c . v <= b`` on the polytope, equality
        exactly on the vertices of face ``faces[d][i]``."""
        fl = self.face_lattice
        face = set(fl.faces[d][i])
        k = self.dim
        c_loc = [0] * k
        for normal, _, members in self.facets:
            if face <= members:
                c_loc = [a + b for a, b in zip(c_loc, normal)]
        origin, _, u_inv, _ = self._frame
        row = list(c_loc) + [0] * (self.ambient_dim - k)
        c = tuple(sum(row[r] * u_inv[r][col] for r in range(self.ambient_dim))
                  for col in range(self.ambient_dim))
        b = max(sum(x * y for x, y in zip(c, v)) for v in self.vertices)
        return c, b

    @cached_property
    def lattice_volume(self) -> int:
        return _lattice_volume(self)

    # JSON ------------------------------------------------------------------
    def to_json(self) -> dict:
        return {"ambient_dim": self.ambient_dim, "vertices": [list(v) for v in self.vertices]}

    @classmethod
    def from_json(cls, data: dict) -> Polytope:
        return from_vertices(data["vertices"], data["ambient_dim"])


# -- operations -------------------------------------------------------------

def from_vertices(points: Iterable[Sequence[int]], n: int | None = None) -> Polytope:
    """Canonical polytope spanned by ``points``; non-extreme points are dropped.

    >>> from_vertices([(0, 0), (1, 0), (2, 0), (0, 2)]).vertices
    ((0, 0), (0, 2), (2, 0))
    """
    pts = [tuple(p) for p in points]
    if not pts:
        raise ValueError("empty point set")
    if n is None:
        n = len(pts[0])
    for p in pts:
        if len(p) != n:
            raise DimensionError(f"point {p} does not have length {n}")
        for x in p:
            if int(x) != x:
                raise ValueError(f"non-integral coordinate in {p}")
    pts = sorted({tuple(int(x) for x in p) for p in pts})
    origin, _, u_inv, k = _hull_frame(pts)
    local = _to_local(pts, origin, u_inv, k)
    keep = _extreme_indices(local, k)
    return Polytope(n, tuple(pts[i] for i in keep))


def face_lattice(p: Polytope) -> FaceLattice:
    return p.face_lattice


def flags(p: Polytope) -> tuple[Flag, ...]:
    """All flags of ``p`` in lexicographic order of their face indices."""
    return p.flags


def _lattice_volume(p: Polytope) -> int:
    # pulling triangulation: cone from the lowest vertex of each face over the
    # faces of its boundary that miss that vertex
    k = p.dim
    if k == 0:
        return 1
    fl = p.face_lattice
    memo = {}

    def simplices(d, i):
        key = (d, i)
        if key not in memo:
            face = fl.faces[d][i]
            if d == 0:
                memo[key] = [face]
            else:
                apex = face[0]
                memo[key] = [(apex,) + s
                             for j in fl.boundary[d][i] if apex not in fl.faces[d - 1][j]
                             for s in simplices(d - 1, j)]
        return memo[key]

    loc = p.local_vertices
    total = 0
    for s in simplices(k, 0):
        base = loc[s[0]]
        total += abs(det([[a - b for a, b in zip(loc[j], base)] for j in s[1:]]))
    return int(total)


def lattice_volume(p: Polytope) -> int:
    """Normalised volume ``k! * vol`` measured in the lattice of the affine hull."""
    return p.lattice_volume


def lattice_length(a: Sequence[int], b: Sequence[int]) -> int:
    """Lattice length of the segment ``ab``."""
    return math.gcd(*(x - y for x, y in zip(a, b)))


def lattice_distance(point: Sequence[int], facet: Polytope) -> int:
    """Lattice distance from ``point`` to the affine hull of ``facet``.

    ``facet`` must span a hyperplane of its ambient space.
    """
    n = facet.ambient_dim
    if len(point) != n:
        raise DimensionError("point and facet live in different dimensions")
    if facet.dim != n - 1:
        raise DimensionError(f"facet must have affine dimension {n - 1}, got {facet.dim}")
    origin, _, u_inv, _ = facet._frame
    # last row of U^-1 is a primitive normal of the hull lattice
    normal = u_inv[n - 1]
    dist = abs(sum(c * (x - o) for c, x, o in zip(normal, point, origin)))
    if dist == 0:
        raise DegenerateError("point lies on the facet hyperplane")
    return dist


def multiple(p: Polytope, t: int) -> Polytope:
    """The t-multiple: every vertex vector scaled by ``t``."""
    if t < 1 or int(t) != t:
        raise ValueError(f"t must be a positive integer, got {t!r}")
    return Polytope(p.ambient_dim, tuple(sorted(tuple(t * x for x in v) for v in p.vertices)))


def is_elementary(p: Polytope) -> bool:
    """True iff ``p`` is not lattice-congruent to any t-multiple with t > 1.

    Lattice-affine maps preserve divisibility of difference vectors and
    translations cancel in differences, so this holds exactly when the gcd of
    all coordinates of ``v - v0`` over the vertices is 1. A single point is
    elementary by convention.
    """
    v0 = p.vertices[0]
    g = 0
    for v in p.vertices[1:]:
        g = math.gcd(g, *(a - b for a, b in zip(v, v0)))
    return g in (0, 1)


def hull_coords(p: Polytope) -> tuple[Polytope, AffineMap]:
    """Rewrite ``p`` in coordinates of the lattice of its affine hull.

    Returns ``(q, embed)``: ``q`` is full-dimensional in Z^k and ``embed`` is
    a lattice-affine map of Z^n such that ``embed(x + (0,) * (n - k))`` runs
    over the vertices of ``p`` as ``x`` runs over the vertices of ``q``.
    """
    origin, u, _, k = p._frame
    if k == p.ambient_dim:
        return p, AffineMap.identity(p.ambient_dim)
    q = Polytope(k, tuple(sorted(p.local_vertices)))
    return q, AffineMap(u, origin)


def interior_lattice_points(p: Polytope) -> list[tuple[int, ...]]:
    """All lattice points strictly inside a full-dimensional ``p``."""
    if not p.is_full_dimensional:
        raise DimensionError("interior points need a full-dimensional polytope")
    n = p.ambient_dim
    if n == 0:
        return []
    # full-dimensional: hull coordinates are a unimodular change of basis
    origin, _, u_inv, _ = p._frame
    lows = [min(v[c] for v in p.vertices) for c in range(n)]
    highs = [max(v[c] for v in p.vertices) for c in range(n)]
    funcs = []
    for normal, offset, _ in p.facets:
        # normal . U^-1 (x - origin) < offset, rewritten in ambient terms
        c = tuple(sum(normal[r] * u_inv[r][col] for r in range(n)) for col in range(n))
        b = offset + sum(x * y for x, y in zip(c, origin))
        funcs.append((c, b))
    out = []
    for x in itertools.product(*(range(lo + 1, hi) for lo, hi in zip(lows, highs))):
        if all(sum(a * y for a, y in zip(c, x)) < b for c, b in funcs):
            out.append(x)
    return out
