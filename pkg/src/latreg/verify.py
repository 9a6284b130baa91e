"""Bounded verification of the classification.

:func:`run_verify_theorem` checks every catalog polytope up to a dimension,
every same-dimension pair and a set of negative controls.
:func:`run_classify_2d` enumerates all convex lattice polygons in a square
grid and sorts the lattice-regular elementary ones into congruence classes.
"""

from __future__ import annotations

import functools
import logging
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

from latreg.catalog import all_entries, build, derive_cell24
from latreg.polytope import Polytope, from_vertices, is_elementary
from latreg.symmetry import are_congruent, is_lattice_regular, symmetry_group

__all__ = [
    "EntryResult",
    "ControlResult",
    "VerifyReport",
    "ClassifyReport",
    "run_verify_theorem",
    "run_classify_2d",
    "enumerate_convex_polygons",
]

log = logging.getLogger(__name__)

MAX_VERIFY_DIM = 6


@dataclass
class EntryResult:
    name: str
    family: str
    dim: int
    variant: int
    regular: bool
    elementary: bool
    lattice_volume: int
    expected_volume: int
    flag_count: int
    expected_flag_count: int
    group_order: int
    f_vector: tuple[int, ...]

    @property
    def passed(self) -> bool:
        return (self.regular and self.elementary
                and self.lattice_volume == self.expected_volume
                and self.flag_count == self.expected_flag_count
                and self.group_order == self.flag_count)


@dataclass
class ControlResult:
    name: str
    expected: str
    observed: str

    @property
    def passed(self) -> bool:
        return self.expected == self.observed


@dataclass
class VerifyReport:
    max_dim: int
    entries: list[EntryResult]
    congruence: dict[int, list[list[bool]]]
    controls: list[ControlResult]
    timings: dict[str, float] = field(default_factory=dict)

    @property
    def pair_checks(self) -> int:
        return sum(len(m) * (len(m) - 1) // 2 for m in self.congruence.values())

    @property
    def passed(self) -> bool:
        pairs_ok = all(not m[i][j] for m in self.congruence.values()
                       for i in range(len(m)) for j in range(len(m)) if i != j)
        return (all(e.passed for e in self.entries) and pairs_ok
                and all(c.passed for c in self.controls))

    def to_json(self, include_timings: bool = False) -> dict:
        out = {
            "max_dim": self.max_dim,
            "passed": self.passed,
            "entries": [dict(asdict(e), f_vector=list(e.f_vector), passed=e.passed)
                        for e in self.entries],
            "congruence": {str(d): m for d, m in sorted(self.congruence.items())},
            "pair_checks": self.pair_checks,
            "controls": [dict(asdict(c), passed=c.passed) for c in self.controls],
        }
        if include_timings:
            out["timings"] = self.timings
        return out


def _check_entry(key) -> EntryResult:
    family, n, variant = key
    e = build(family, n, variant)
    p = e.polytope
    group = symmetry_group(p)
    return EntryResult(
        name=e.name, family=family, dim=n, variant=e.variant,
        regular=group.order == len(p.flags),
        elementary=is_elementary(p),
        lattice_volume=p.lattice_volume,
        expected_volume=e.expected["lattice_volume"],
        flag_count=len(p.flags),
        expected_flag_count=e.expected["flag_count"],
        group_order=group.order,
        f_vector=p.face_lattice.f_vector,
    )


def _check_pair(key) -> bool:
    a, b = key
    return are_congruent(build(*a).polytope, build(*b).polytope) is not None


def _smallest_non_divisor(m):
    return next(p for p in range(2, m + 2) if m % p)


def negative_controls(max_dim: int) -> list[ControlResult]:
    """Polytopes that must fail regularity, plus the cube-1 24-cell completion."""
    def regular(p):
        return "regular" if is_lattice_regular(p)[0] else "not regular"

    out = []
    for n in range(2, max_dim + 1):
        p = _smallest_non_divisor(n + 1)
        out.append(ControlResult(f"simplex(n={n}, p={p})", "not regular",
                                 regular(build("simplex", n, p).polytope)))
    if max_dim < 3:
        out.append(ControlResult("simplex(n=3, p=3)", "not regular",
                                 regular(build("simplex", 3, 3).polytope)))
    out.append(ControlResult("triangle (0,0),(1,0),(0,2)", "not regular",
                             regular(from_vertices([(0, 0), (1, 0), (0, 2)]))))
    out.append(ControlResult("S^3(2;0,0,2)", "not regular",
                             regular(from_vertices([(0, 0, 0), (1, 0, 0), (1, 2, 0), (0, 0, 2)]))))
    derived = derive_cell24(build("cube", 4, 1))
    out.append(ControlResult("derive_cell24(cube(n=4, variant=1))", "empty",
                             "empty" if derived is None else "24-cell"))
    return out


def run_verify_theorem(max_dim: int, jobs: int = 1) -> VerifyReport:
    """Check regularity, elementarity and pairwise non-congruence of the
    catalog up to ``max_dim``."""
    if not 1 <= max_dim <= MAX_VERIFY_DIM:
        raise ValueError(f"max_dim must be in 1..{MAX_VERIFY_DIM}, got {max_dim}")
    timings = {}
    t0 = time.perf_counter()
    keys = [(e.family, e.dim, e.variant) for e in all_entries(max_dim)]
    timings["catalog"] = time.perf_counter() - t0

    pairs = []
    by_dim: dict[int, list] = {}
    for k in keys:
        by_dim.setdefault(k[1], []).append(k)
    for d, ks in by_dim.items():
        pairs += [(a, b) for i, a in enumerate(ks) for b in ks[i + 1:]]

    t0 = time.perf_counter()
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_check_entry, keys))
            timings["entries"] = time.perf_counter() - t0
            t0 = time.perf_counter()
            pair_results = list(pool.map(_check_pair, pairs))
    else:
        results = [_check_entry(k) for k in keys]
        timings["entries"] = time.perf_counter() - t0
        t0 = time.perf_counter()
        pair_results = [_check_pair(pr) for pr in pairs]
    timings["pairs"] = time.perf_counter() - t0
    for r in results:
        log.info("%s: regular=%s elementary=%s group=%d", r.name, r.regular, r.elementary, r.group_order)

    congruent = dict(zip(pairs, pair_results))
    matrices = {}
    for d, ks in sorted(by_dim.items()):
        matrices[d] = [[a == b or congruent.get((a, b), congruent.get((b, a), False))
                        for b in ks] for a in ks]

    t0 = time.perf_counter()
    controls = negative_controls(max_dim)
    timings["controls"] = time.perf_counter() - t0
    return VerifyReport(max_dim, results, matrices, controls, timings)


# -- 2-D enumeration -----------------------------------------------------------

def _half(v):
    x, y = v
    return 0 if (y > 0 or (y == 0 and x > 0)) else 1


def _angle_cmp(a, b):
    ha, hb = _half(a), _half(b)
    if ha != hb:
        return ha - hb
    cross = a[0] * b[1] - a[1] * b[0]
    return -1 if cross > 0 else (1 if cross < 0 else 0)


def _walk_polygons(width: int, visit) -> None:
    """Call ``visit(edges)`` for every convex lattice polygon whose bounding
    box fits in ``width`` by ``width``, once per translation class.

    ``edges`` lists the edge vectors counter-clockwise, starting with the
    edge of smallest polar angle in ``[0, 2 pi)``. The list is reused between
    calls, so copy it if it needs to outlive ``visit``.
    """
    dirs = [(x, y) for x in range(-width, width + 1) for y in range(-width, width + 1)
            if (x, y) != (0, 0) and math.gcd(x, y) == 1]
    dirs.sort(key=functools.cmp_to_key(_angle_cmp))
    steps = [[(k * x, k * y) for k in range(1, width + 1) if k * max(abs(x), abs(y)) <= width]
             for x, y in dirs]
    halves = [_half(d) for d in dirs]
    ndirs = len(dirs)
    edges = []

    def walk(i, px, py, x0, x1, y0, y1):
        # (x0, x1, y0, y1) is the bounding box of the vertices so far
        for j in range(i, ndirs):
            dx, dy = dirs[j]
            if halves[j]:
                # every remaining edge points into the lower half-plane, so
                # the way home (-px, -py) must not be behind direction j
                turn = px * dy - py * dx
                if turn < 0:
                    break
                if turn == 0:
                    k = abs(px) // abs(dx) if dx else abs(py) // abs(dy)
                    if len(edges) >= 2 and px + k * dx == 0 and py + k * dy == 0:
                        edges.append((-px, -py))
                        visit(edges)
                        edges.pop()
                    continue
            for ex, ey in steps[j]:
                nx, ny = px + ex, py + ey
                nx0 = nx if nx < x0 else x0
                nx1 = nx if nx > x1 else x1
                ny0 = ny if ny < y0 else y0
                ny1 = ny if ny > y1 else y1
                if nx1 - nx0 > width or ny1 - ny0 > width:
                    break
                edges.append((ex, ey))
                if nx == 0 and ny == 0:
                    if len(edges) >= 3:
                        visit(edges)
                else:
                    walk(j + 1, nx, ny, nx0, nx1, ny0, ny1)
                edges.pop()

    walk(0, 0, 0, 0, 0, 0, 0)


def enumerate_convex_polygons(width: int) -> list[tuple[tuple[int, int], ...]]:
    """Edge sequences of all convex lattice polygons in a ``width`` box, one
    per translation class (see :func:`_walk_polygons` for the ordering)."""
    out = []
    _walk_polygons(width, lambda edges: out.append(tuple(edges)))
    return out


def _passes_prefilter(edges) -> bool:
    """Invariants every flag-transitive polygon has: all edges of one lattice
    length, and the same |det| at every corner."""
    gcd = math.gcd
    length = gcd(*edges[0])
    px, py = edges[-1]
    corner = None
    for x, y in edges:
        if gcd(x, y) != length:
            return False
        d = abs(px * y - py * x)
        if corner is None:
            corner = d
        elif d != corner:
            return False
        px, py = x, y
    return True


@dataclass
class ClassifyReport:
    radius: int
    examined: int
    passing: int
    vertex_count_histogram: dict[int, int]
    representatives: list[Polytope]
    catalog_matches: list[str | None]
    timings: dict[str, float] = field(default_factory=dict)

    @property
    def n_classes(self) -> int:
        return len(self.representatives)

    @property
    def pentagons(self) -> int:
        return self.vertex_count_histogram.get(5, 0)

    def to_json(self, include_timings: bool = False) -> dict:
        out = {
            "radius": self.radius,
            "examined": self.examined,
            "passing": self.passing,
            "n_classes": self.n_classes,
            "vertex_count_histogram": {str(k): v for k, v in sorted(self.vertex_count_histogram.items())},
            "representatives": [
                {"polytope": r.to_json(), "catalog_match": m}
                for r, m in zip(self.representatives, self.catalog_matches)
            ],
        }
        if include_timings:
            out["timings"] = self.timings
        return out


def run_classify_2d(radius: int) -> ClassifyReport:
    """Classify elementary lattice-regular polygons with vertices in
    ``[-radius, radius]^2`` up to lattice congruence."""
    if radius < 2:
        raise ValueError("radius must be at least 2 to hold every class")
    width = 2 * radius
    t0 = time.perf_counter()
    examined = 0
    candidates = []

    def visit(edges):
        nonlocal examined
        examined += 1
        if _passes_prefilter(edges) and math.gcd(*(c for e in edges for c in e)) == 1:
            candidates.append(tuple(edges))

    _walk_polygons(width, visit)
    found = []
    for edges in candidates:
        pts = [(0, 0)]
        for e in edges[:-1]:
            pts.append((pts[-1][0] + e[0], pts[-1][1] + e[1]))
        lo_x = min(x for x, _ in pts)
        lo_y = min(y for _, y in pts)
        poly = from_vertices([(x - lo_x - radius, y - lo_y - radius) for x, y in pts])
        if is_lattice_regular(poly)[0] and is_elementary(poly):
            found.append(poly)
    timings = {"enumerate": time.perf_counter() - t0}

    t0 = time.perf_counter()
    reps: list[Polytope] = []
    for poly in found:
        if not any(are_congruent(r, poly) is not None for r in reps):
            reps.append(poly)
    catalog_2d = [e for e in all_entries(2) if e.dim == 2]
    matches = []
    for r in reps:
        hits = [e.name for e in catalog_2d if are_congruent(r, e.polytope) is not None]
        matches.append(hits[0] if len(hits) == 1 else None)
    timings["classes"] = time.perf_counter() - t0

    hist: dict[int, int] = {}
    for poly in found:
        hist[len(poly.vertices)] = hist.get(len(poly.vertices), 0) + 1
    return ClassifyReport(radius, examined, len(found), hist, reps, matches, timings)
