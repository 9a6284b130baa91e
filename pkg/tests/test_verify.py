import itertools
import json

import pytest

from latreg.catalog import all_entries
from latreg.polytope import is_elementary
from latreg.symmetry import are_congruent, is_lattice_regular
from latreg.verify import enumerate_convex_polygons, run_classify_2d, run_verify_theorem


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def strict_hull_size(points):
    """Andrew's monotone chain, dropping collinear points."""
    pts = sorted(points)
    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return len(lower) + len(upper) - 2


def brute_force_polygon_classes(width):
    grid = list(itertools.product(range(width + 1), repeat=2))
    classes = set()
    for r in range(3, len(grid) + 1):
        for subset in itertools.combinations(grid, r):
            if strict_hull_size(subset) == r:
                x0 = min(x for x, _ in subset)
                y0 = min(y for _, y in subset)
                classes.add(frozenset((x - x0, y - y0) for x, y in subset))
    return classes


@pytest.mark.parametrize("width", [1, 2, 3])
def test_polygon_enumeration_matches_subset_search(width):
    walked = set()
    for edges in enumerate_convex_polygons(width):
        pts, x, y = [], 0, 0
        for ex, ey in edges:
            pts.append((x, y))
            x, y = x + ex, y + ey
        assert (x, y) == (0, 0)
        x0 = min(p[0] for p in pts)
        y0 = min(p[1] for p in pts)
        key = frozenset((a - x0, b - y0) for a, b in pts)
        assert key not in walked
        walked.add(key)
    assert walked == brute_force_polygon_classes(width)


def test_verify_dim_2():
    report = run_verify_theorem(2)
    assert len(report.entries) == 7
    assert report.pair_checks == 15
    assert all(e.passed for e in report.entries)
    assert report.passed


@pytest.mark.parametrize("bad", [0, 7, -1])
def test_verify_rejects_out_of_range(bad):
    with pytest.raises(ValueError):
        run_verify_theorem(bad)


def test_verify_report_is_deterministic_across_workers():
    one = json.dumps(run_verify_theorem(3).to_json())
    again = json.dumps(run_verify_theorem(3).to_json())
    pooled = json.dumps(run_verify_theorem(3, jobs=2).to_json())
    assert one == again == pooled


def test_controls_fail_regularity():
    report = run_verify_theorem(3)
    names = [c.name for c in report.controls]
    assert "simplex(n=3, p=3)" in names
    assert all(c.passed for c in report.controls)


def test_classify_radius_2():
    report = run_classify_2d(2)
    assert report.n_classes == 6
    assert report.pentagons == 0
    catalog = {e.name for e in all_entries(2) if e.dim == 2}
    assert set(report.catalog_matches) == catalog
    reps = report.representatives
    for r in reps:
        assert is_elementary(r) and is_lattice_regular(r)[0]
    for a, b in itertools.combinations(reps, 2):
        assert are_congruent(a, b) is None


def test_classify_rejects_small_radius():
    with pytest.raises(ValueError):
        run_classify_2d(1)


@pytest.mark.slow
def test_classify_radius_3_finds_nothing_new():
    report = run_classify_2d(3)
    assert report.n_classes == 6
    assert report.pentagons == 0
    assert None not in report.catalog_matches
