"""Constructors for the elementary lattice-regular polytopes.

Each family is built from explicit integer vertex lists:

* ``segment``: ``O``, ``O + e1``.
* ``simplex`` (dimension n, parameter p): ``O``, ``e_i`` for ``i < n`` and
  ``(p - 1)(e_1 + ... + e_{n-1}) + p e_n``. Lattice-regular iff ``p | n + 1``;
  other ``p`` are accepted as negative controls.
* ``cube`` (variants 1, 2, 3): the parallelepiped on generators from the
  origin. Variant 1 uses the basis, variant 2 replaces ``e_n`` by
  ``e_1 + ... + e_{n-1} + 2 e_n``, variant 3 uses ``e_1`` and
  ``e_1 + 2 e_i``.
* ``cross`` (variants 1, 2, 3): ``+-e_i``; ``+-e_i`` (i < n) together with
  ``+-(e_1 + ... + e_{n-1} + 2 e_n)``; and ``O``, ``-e_1``, ``-e_1 - e_i``,
  ``e_i`` (i >= 2), whose diagonals meet at the non-lattice point
  ``-e_1 / 2``.
* ``hexagon`` (variants 1, 2): ``+-e1, +-e2, +-(e1 - e2)`` and
  ``+-(2e1 + e2), +-(e1 + 2e2), +-(e1 - e2)``.
* ``cell24`` (variants 1, 2): the 24-cell ``+-w_i`` together with
  ``(+-w_1 +-w_2 +-w_3 +-w_4) / 2`` for two frames ``w``. The frames are
  chosen so that all of these points are integral.

Two-dimensional triangles are indexed by their lattice area ``p`` in
``{1, 3}``, like every other simplex.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

from latreg.exactalg import DimensionError
from latreg.polytope import Polytope, from_vertices

__all__ = [
    "FAMILIES",
    "CatalogEntry",
    "NotAnOctahedronError",
    "build",
    "all_entries",
    "listed_cell24",
    "octa_cube",
    "derive_cell24",
    "divisors",
]

FAMILIES = ("segment", "simplex", "cube", "cross", "hexagon", "cell24")

# frames for the two 24-cells; all (+-w1 +-w2 +-w3 +-w4) are even vectors
CELL24_FRAMES = {
    1: ((0, 1, 1, 1), (1, 1, 0, 1), (1, 0, 1, 1), (0, 0, 0, 1)),
    2: ((1, 1, 1, 1), (1, -1, 1, 1), (1, 1, -1, 1), (1, 1, 1, -1)),
}


class NotAnOctahedronError(ValueError):
    pass


@dataclass(frozen=True)
class CatalogEntry:
    family: str
    dim: int
    variant: int
    polytope: Polytope
    schlafli: str
    expected_regular: bool
    expected: dict = field(hash=False, compare=False)
    base: tuple[int, ...] | None = None
    generators: tuple[tuple[int, ...], ...] | None = None

    @property
    def name(self) -> str:
        return f"{self.family}(n={self.dim}, variant={self.variant})"

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "dim": self.dim,
            "variant": self.variant,
            "schlafli": self.schlafli,
            "polytope": self.polytope.to_json(),
            "expected": {"lattice_volume": self.expected["lattice_volume"],
                         "flag_count": self.expected["flag_count"]},
        }


def divisors(m: int) -> list[int]:
    return [d for d in range(1, m + 1) if m % d == 0]


def _unit(n, i):
    return tuple(int(j == i) for j in range(n))


def _add(*vs):
    return tuple(map(sum, zip(*vs)))


def _scale(t, v):
    return tuple(t * x for x in v)


def _schlafli(symbol, variant=None):
    s = "{" + ",".join(map(str, symbol)) + "}^L"
    return s if variant is None else f"{s}_{variant}"


def _parallelepiped(base, gens):
    pts = []
    for mask in itertools.product((0, 1), repeat=len(gens)):
        pts.append(_add(base, *(_scale(m, g) for m, g in zip(mask, gens))))
    return pts


def cube_generators(n: int, variant: int) -> tuple[tuple[int, ...], ...]:
    if variant == 1:
        return tuple(_unit(n, i) for i in range(n))
    if variant == 2:
        last = tuple(1 for _ in range(n - 1)) + (2,)
        return tuple(_unit(n, i) for i in range(n - 1)) + (last,)
    if variant == 3:
        e1 = _unit(n, 0)
        return (e1,) + tuple(_add(e1, _scale(2, _unit(n, i))) for i in range(1, n))
    raise ValueError(f"cube variant must be 1, 2 or 3, got {variant}")


def _cross_vertices(n, variant):
    if variant == 1:
        return [_scale(s, _unit(n, i)) for i in range(n) for s in (1, -1)]
    if variant == 2:
        last = tuple(1 for _ in range(n - 1)) + (2,)
        axes = [_unit(n, i) for i in range(n - 1)] + [last]
        return [_scale(s, a) for a in axes for s in (1, -1)]
    if variant == 3:
        o = (0,) * n
        e1 = _unit(n, 0)
        pts = [o, _scale(-1, e1)]
        for i in range(1, n):
            ei = _unit(n, i)
            pts.append(ei)
            pts.append(_add(_scale(-1, e1), _scale(-1, ei)))
        return pts
    raise ValueError(f"cross variant must be 1, 2 or 3, got {variant}")


def _cell24_vertices(frame, scale_twice=False):
    # scale_twice gives the 2-multiple (the "+-2 w_i, +-w1+-w2+-w3+-w4" form)
    pts = []
    k = 2 if scale_twice else 1
    for w in frame:
        pts.append(_scale(k, w))
        pts.append(_scale(-k, w))
    for signs in itertools.product((1, -1), repeat=4):
        s = _add(*(_scale(e, w) for e, w in zip(signs, frame)))
        if scale_twice:
            pts.append(s)
        else:
            assert all(x % 2 == 0 for x in s)
            pts.append(tuple(x // 2 for x in s))
    return pts


def build(family: str, n: int, variant: int | None = None) -> CatalogEntry:
    """Construct one catalog polytope with its expected invariants."""
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")
    base = generators = None
    fact = math.factorial
    if family == "segment":
        if n != 1 or variant not in (None, 1):
            raise ValueError("the segment exists only in dimension 1 (variant 1)")
        variant = 1
        verts = [(0,), (1,)]
        volume, nflags, fvec = 1, 2, (2,)
        schlafli, regular = "{}^L", True
    elif family == "simplex":
        if n < 2:
            raise ValueError("simplex family starts in dimension 2")
        if variant is None or variant < 1:
            raise ValueError(f"simplex parameter p must be a positive integer, got {variant}")
        p = variant
        verts = [(0,) * n] + [_unit(n, i) for i in range(n - 1)]
        verts.append(tuple(p - 1 for _ in range(n - 1)) + (p,))
        volume, nflags = p, fact(n + 1)
        fvec = tuple(math.comb(n + 1, d + 1) for d in range(n))
        schlafli, regular = _schlafli([3] * (n - 1), p), (n + 1) % p == 0
    elif family == "cube":
        if variant not in (1, 2, 3):
            raise ValueError(f"cube variant must be 1, 2 or 3, got {variant}")
        if n < (3 if variant == 3 else 2):
            raise ValueError(f"cube variant {variant} needs n >= {3 if variant == 3 else 2}")
        base = (0,) * n
        generators = cube_generators(n, variant)
        verts = _parallelepiped(base, generators)
        volume = {1: fact(n), 2: 2 * fact(n), 3: 2 ** (n - 1) * fact(n)}[variant]
        nflags = 2 ** n * fact(n)
        fvec = tuple(2 ** (n - d) * math.comb(n, d) for d in range(n))
        schlafli, regular = _schlafli([4] + [3] * (n - 2), variant), True
    elif family == "cross":
        if variant not in (1, 2, 3):
            raise ValueError(f"cross variant must be 1, 2 or 3, got {variant}")
        if n < 3:
            raise ValueError("cross-polytopes are catalogued from dimension 3")
        verts = _cross_vertices(n, variant)
        volume = {1: 2 ** n, 2: 2 ** (n + 1), 3: 2 ** (n - 1)}[variant]
        nflags = 2 ** n * fact(n)
        fvec = tuple(2 ** (d + 1) * math.comb(n, d + 1) for d in range(n))
        schlafli, regular = _schlafli([3] * (n - 2) + [4], variant), True
    elif family == "hexagon":
        if n != 2 or variant not in (1, 2):
            raise ValueError("hexagons: n = 2, variant 1 or 2")
        axes = {1: [(1, 0), (0, 1), (1, -1)], 2: [(2, 1), (1, 2), (1, -1)]}[variant]
        verts = [_scale(s, a) for a in axes for s in (1, -1)]
        volume, nflags, fvec = {1: 6, 2: 18}[variant], 12, (6, 6)
        schlafli, regular = _schlafli([6], variant), True
    else:
        if n != 4 or variant not in (1, 2):
            raise ValueError("24-cells: n = 4, variant 1 or 2")
        verts = _cell24_vertices(CELL24_FRAMES[variant])
        volume = {1: 96, 2: 384}[variant]
        nflags, fvec = 1152, (24, 96, 96, 24)
        schlafli, regular = _schlafli([3, 4, 3], variant), True
    poly = from_vertices(verts, n)
    expected = {"lattice_volume": volume, "flag_count": nflags, "f_vector": fvec}
    return CatalogEntry(family, n, variant, poly, schlafli, regular, expected, base, generators)


def listed_cell24(variant: int) -> Polytope:
    """The 24-cell in its ``+-2 w_i``, ``+-w_1 +-w_2 +-w_3 +-w_4`` form.

    This is the 2-multiple of ``build("cell24", 4, variant).polytope``.
    """
    return from_vertices(_cell24_vertices(CELL24_FRAMES[variant], scale_twice=True), 4)


def all_entries(max_dim: int) -> list[CatalogEntry]:
    """Every catalog polytope of dimension ``1 .. max_dim`` in canonical order."""
    if max_dim < 1:
        raise ValueError("max_dim must be at least 1")
    out = [build("segment", 1)]
    for n in range(2, max_dim + 1):
        out += [build("simplex", n, p) for p in divisors(n + 1)]
        if n == 2:
            out += [build("cube", 2, v) for v in (1, 2)]
            out += [build("hexagon", 2, v) for v in (1, 2)]
            continue
        out += [build("cross", n, v) for v in (1, 2, 3)]
        out += [build("cube", n, v) for v in (1, 2, 3)]
        if n == 4:
            out += [build("cell24", 4, v) for v in (1, 2)]
    return out


def octa_cube(p: Polytope) -> Polytope:
    """The cube ``A +- (V_1 - A) +- ... +- (V_n - A)`` around an octahedron.

    ``p`` must be a generalised octahedron: 2n vertices forming n antipodal
    pairs through one common midpoint ``A``. ``A`` has to be a lattice point;
    otherwise pass ``multiple(p, 2)``.
    """
    n = p.ambient_dim
    verts = p.vertices
    if not p.is_full_dimensional or len(verts) != 2 * n:
        raise NotAnOctahedronError(f"expected {2 * n} vertices spanning dimension {n}")
    total = _add(*verts)
    twice_a = tuple(2 * x // len(verts) if 2 * x % len(verts) == 0 else None for x in total)
    if any(x is None for x in twice_a):
        raise NotAnOctahedronError("vertex pairs do not share a half-integral midpoint")
    index = p.vertex_index
    reps = []
    for v in verts:
        w = tuple(a - x for a, x in zip(twice_a, v))
        if w not in index or w == v:
            raise NotAnOctahedronError(f"vertex {v} has no antipode through the centre")
        if v > w:
            reps.append(v)
    if any(x % 2 for x in twice_a):
        raise ValueError("common midpoint is not a lattice point; pass multiple(p, 2)")
    a = tuple(x // 2 for x in twice_a)
    arms = [tuple(x - y for x, y in zip(v, a)) for v in reps]
    pts = [_add(a, *(_scale(s, arm) for s, arm in zip(signs, arms)))
           for signs in itertools.product((1, -1), repeat=n)]
    return from_vertices(pts, n)


def derive_cell24(c: CatalogEntry) -> Polytope | None:
    """Complete a 4-cube to a 24-cell by adding ``O + (v1+v2+v3+v4)/2 +- v_i``.

    Returns ``None`` when those eight points are not lattice points.
    """
    if c.family != "cube" or c.generators is None:
        raise ValueError(f"expected a cube entry, got {c.family}")
    if c.dim != 4:
        raise DimensionError(f"24-cell derivation needs a 4-cube, got dimension {c.dim}")
    total = _add(*c.generators)
    if any(x % 2 for x in total):
        return None
    centre = _add(c.base, tuple(x // 2 for x in total))
    extra = [_add(centre, _scale(s, v)) for v in c.generators for s in (1, -1)]
    return from_vertices(_parallelepiped(c.base, c.generators) + extra, 4)
