"""Lattice symmetries, lattice-regularity and lattice congruence.

Everything runs through one observation: an affine map is pinned down by
where it sends the centroids of the faces of a single flag (k + 1 affinely
independent points). So the lattice symmetries of ``p`` are found by trying
the map from one fixed base flag to every flag, and ``p`` is lattice-regular
exactly when all of those maps are lattice-affine symmetries.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from latreg.exactalg import (
    AffineMap,
    DimensionError,
    det,
    identity,
    inverse,
    transpose,
)
from latreg.polytope import (
    Flag,
    Polytope,
    hull_coords,
    interior_lattice_points,
    lattice_length,
)

__all__ = [
    "SymmetryGroup",
    "Signature",
    "flag_map",
    "symmetry_group",
    "is_lattice_regular",
    "are_congruent",
    "invariant_signature",
]

log = logging.getLogger(__name__)


class _FlagSolver:
    """Precomputed inverse of the centroid frame of one flag of ``p``."""

    def __init__(self, p: Polytope, f: Flag):
        pts = p.flag_points(f)
        self.p = p
        self.base = pts[0]
        self.inv = inverse(transpose([[a - b for a, b in zip(x, pts[0])] for x in pts[1:]]))

    def linear_to(self, q: Polytope, g: Flag):
        """Integer (linear, translation) sending this flag to ``g``, or None."""
        pts = q.flag_points(g)
        g0 = pts[0]
        cols = [[a - b for a, b in zip(x, g0)] for x in pts[1:]]   # as columns
        n = len(g0)
        lin = []
        for r in range(n):
            row = []
            for c in range(n):
                x = sum(cols[j][r] * self.inv[j][c] for j in range(n))
                if x.denominator != 1:
                    return None
                row.append(int(x))
            lin.append(tuple(row))
        tr = []
        for r in range(n):
            x = g0[r] - sum(lin[r][c] * self.base[c] for c in range(n))
            if x.denominator != 1:
                return None
            tr.append(int(x))
        return tuple(lin), tuple(tr)

    def map_to(self, q: Polytope, g: Flag):
        """Vertex permutation image and map, if the flag map is a lattice map of p onto q."""
        found = self.linear_to(q, g)
        if found is None:
            return None
        lin, tr = found
        index = q.vertex_index
        perm = []
        for v in self.p.vertices:
            img = tuple(sum(a * b for a, b in zip(row, v)) + t for row, t in zip(lin, tr))
            j = index.get(img)
            if j is None:
                return None
            perm.append(j)
        if len(set(perm)) != len(perm) or len(perm) != len(q.vertices):
            return None
        if abs(det(lin)) != 1:
            return None
        return tuple(perm), AffineMap(lin, tr)


def _require_full(p: Polytope, q: Polytope):
    if not (p.is_full_dimensional and q.is_full_dimensional) or p.ambient_dim != q.ambient_dim:
        raise DimensionError("flag maps need full-dimensional polytopes of equal dimension")


def flag_map(p: Polytope, f: Flag, q: Polytope, g: Flag) -> AffineMap | None:
    """The affine map taking flag ``f`` of ``p`` to flag ``g`` of ``q``.

    Returned only when it is lattice-affine and maps the vertices of ``p``
    onto those of ``q``; otherwise ``None``.
    """
    _require_full(p, q)
    found = _FlagSolver(p, f).map_to(q, g)
    return None if found is None else found[1]


@dataclass(frozen=True)
class SymmetryGroup:
    """Lattice symmetries of a full-dimensional polytope.

    ``elements[i]`` sends ``base_flag`` to ``flag_orbit[i]`` and permutes the
    vertices by ``permutations[i]``. Lower-dimensional input is handled in the
    coordinates of :func:`~latreg.polytope.hull_coords`, recorded in
    ``polytope``.
    """

    polytope: Polytope
    base_flag: Flag
    elements: tuple[AffineMap, ...]
    flag_orbit: tuple[Flag, ...]
    permutations: tuple[tuple[int, ...], ...] = field(repr=False)

    def __post_init__(self):
        n_vert = len(self.polytope.vertices)
        ident = tuple(range(n_vert))
        perms = set(self.permutations)
        if ident not in perms:
            raise AssertionError("symmetry group lacks the identity")
        if len(perms) != len(self.permutations):
            raise AssertionError("duplicate group elements")
        for perm in self.permutations:
            inv = [0] * n_vert
            for i, j in enumerate(perm):
                inv[j] = i
            if tuple(inv) not in perms:
                raise AssertionError("symmetry group not closed under inverses")

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, f: AffineMap) -> bool:
        return f in set(self.elements)

    def check_closure(self) -> bool:
        """Exhaustive closure check on the vertex permutations.

        Since the vertices affinely span the polytope, an affine symmetry is
        determined by its vertex permutation.
        """
        perms = np.asarray(self.permutations, dtype=np.int64)
        if perms.size == 0:
            return True
        width = perms.shape[1]
        keys = np.ascontiguousarray(perms).view(np.dtype((np.void, 8 * width))).ravel()
        known = np.sort(keys)
        for row in perms:
            # (g o h)[i] = g[h[i]]
            comp = np.ascontiguousarray(row[perms])
            ck = comp.view(np.dtype((np.void, 8 * width))).ravel()
            pos = np.searchsorted(known, ck)
            pos[pos == len(known)] = 0
            if not np.all(known[pos] == ck):
                return False
        return True

    def check_free_action(self) -> bool:
        """True iff no non-identity element fixes any flag."""
        p = self.polytope
        fl = p.face_lattice
        all_flags = np.asarray(p.flags, dtype=np.int64)
        ident = tuple(range(len(p.vertices)))
        for perm in self.permutations:
            if perm == ident:
                continue
            fixed = np.ones(len(all_flags), dtype=bool)
            for d in range(fl.dim):
                image = np.array([fl.index(d, (perm[v] for v in face)) for face in fl.faces[d]])
                fixed &= image[all_flags[:, d]] == all_flags[:, d]
            if fixed.any():
                return False
        return True


def _full_form(p: Polytope) -> Polytope:
    return p if p.is_full_dimensional else hull_coords(p)[0]


def symmetry_group(p: Polytope) -> SymmetryGroup:
    """All lattice-affine maps preserving ``p``."""
    q = _full_form(p)
    all_flags = q.flags
    base = all_flags[0]
    solver = _FlagSolver(q, base)
    elements, orbit, perms = [], [], []
    for g in all_flags:
        found = solver.map_to(q, g)
        if found is not None:
            perms.append(found[0])
            elements.append(found[1])
            orbit.append(g)
    log.debug("symmetry group of %r: order %d of %d flags", p, len(elements), len(all_flags))
    return SymmetryGroup(q, base, tuple(elements), tuple(orbit), tuple(perms))


def is_lattice_regular(p: Polytope) -> tuple[bool, tuple[Flag, Flag] | None]:
    """Whether lattice symmetries act transitively on the flags of ``p``.

    Returns ``(True, None)`` or ``(False, (base_flag, unreachable_flag))``;
    the flags of the witness refer to the hull-coordinate form of ``p`` when
    ``p`` is not full-dimensional (the flag indices coincide).
    """
    q = _full_form(p)
    all_flags = q.flags
    base = all_flags[0]
    solver = _FlagSolver(q, base)
    for g in all_flags:
        if solver.map_to(q, g) is None:
            return False, (base, g)
    return True, None


@dataclass(frozen=True)
class Signature:
    """Lattice-affine invariants used to rule out congruence cheaply."""

    dim: int
    n_vertices: int
    lattice_volume: int
    f_vector: tuple[int, ...]
    edge_lengths: tuple[int, ...]
    interior_points: int

    def to_json(self) -> dict:
        return {"dim": self.dim, "n_vertices": self.n_vertices,
                "lattice_volume": self.lattice_volume, "f_vector": list(self.f_vector),
                "edge_lengths": list(self.edge_lengths),
                "interior_points": self.interior_points}


def invariant_signature(p: Polytope) -> Signature:
    q = _full_form(p)
    fl = q.face_lattice
    edges = fl.faces[1] if fl.dim >= 1 else ()
    lengths = sorted(lattice_length(q.vertices[a], q.vertices[b]) for a, b in edges)
    interior = len(interior_lattice_points(q)) if q.dim > 0 else 0
    return Signature(q.dim, len(q.vertices), q.lattice_volume, fl.f_vector,
                     tuple(lengths), interior)


def _direct_sum(f: AffineMap, n: int) -> AffineMap:
    k = f.dim
    lin = [list(row) + [0] * (n - k) for row in f.linear]
    lin += [[0] * k + [int(i == j) for j in range(n - k)] for i in range(n - k)]
    return AffineMap(lin, tuple(f.translation) + (0,) * (n - k))


def are_congruent(p: Polytope, q: Polytope) -> AffineMap | None:
    """A lattice-affine map taking ``p`` onto ``q``, or ``None``."""
    if p.ambient_dim != q.ambient_dim:
        return None
    if invariant_signature(p) != invariant_signature(q):
        return None
    if p.dim == 0:
        return AffineMap(identity(p.ambient_dim),
                         tuple(b - a for a, b in zip(p.vertices[0], q.vertices[0])))
    if p.is_full_dimensional:
        solver = _FlagSolver(p, p.flags[0])
        for g in q.flags:
            found = solver.map_to(q, g)
            if found is not None:
                return found[1]
        return None
    p_loc, p_embed = hull_coords(p)
    q_loc, q_embed = hull_coords(q)
    inner = are_congruent(p_loc, q_loc)
    if inner is None:
        return None
    return q_embed @ _direct_sum(inner, p.ambient_dim) @ p_embed.inverse()
