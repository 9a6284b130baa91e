from fractions import Fraction
from itertools import permutations
from math import prod

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from latreg.exactalg import (
    AffineMap,
    DegenerateError,
    DimensionError,
    det,
    hnf,
    identity,
    inverse,
    is_lattice_affine,
    is_unimodular,
    matmul,
    rank,
    snf,
    solve_affine_map,
    sublattice_index,
)


def leibniz_det(m):
    """Permutation-expansion determinant, used as an independent oracle."""
    n = len(m)
    total = 0
    for perm in permutations(range(n)):
        inversions = sum(perm[i] > perm[j] for i in range(n) for j in range(i + 1, n))
        total += (-1) ** inversions * prod(m[i][perm[i]] for i in range(n))
    return total


small_ints = st.integers(-6, 6)


def square(n):
    return st.lists(st.lists(small_ints, min_size=n, max_size=n), min_size=n, max_size=n)


def rect():
    return st.integers(1, 4).flatmap(
        lambda r: st.integers(1, 4).flatmap(
            lambda c: st.lists(st.lists(small_ints, min_size=c, max_size=c), min_size=r, max_size=r)))


# -- det ------------------------------------------------------------------------

def test_det_examples():
    assert det(identity(2)) == 1
    assert det([[2, 1], [1, 2]]) == 3
    m = [list(r) for r in identity(4)]
    m[0] = [-1, 1, 1, 1]
    assert det(m) == -1


def test_det_rejects_non_square():
    with pytest.raises(DimensionError):
        det([[1, 2, 3], [4, 5, 6]])


def test_det_is_exact_on_rationals():
    assert det([[Fraction(1, 3), 1], [0, 3]]) == 1


@given(st.integers(1, 4).flatmap(square))
def test_det_matches_leibniz(m):
    assert det(m) == leibniz_det(m)


# -- HNF ------------------------------------------------------------------------

def test_hnf_examples():
    assert hnf(identity(3)) == (identity(3), identity(3))
    h, u = hnf([[2, 1], [0, 1]])
    assert h == ((1, 0), (1, 2))
    assert matmul([[2, 1], [0, 1]], u) == h
    assert abs(det(u)) == 1
    h, u = hnf([[0, 0], [0, 0]])
    assert h == ((0, 0), (0, 0)) and u == identity(2)


def _check_hnf_shape(h):
    col = 0
    for row in h:
        if col < len(row) and row[col] != 0:
            assert row[col] > 0
            assert all(0 <= x < row[col] for x in row[:col])
            assert all(x == 0 for x in row[col + 1:])
            col += 1
        else:
            assert all(x == 0 for x in row[col:])


@settings(max_examples=200)
@given(rect())
def test_hnf_properties(m):
    h, u = hnf(m)
    assert matmul(m, u) == h
    assert is_unimodular(u)
    _check_hnf_shape(h)
    # the normal form is unique: recomputing from h changes nothing
    assert hnf(h)[0] == h


# -- SNF ------------------------------------------------------------------------

def _diag(s):
    return [s[i][i] for i in range(min(len(s), len(s[0])))]


def test_snf_examples():
    assert _diag(snf([[2, 0], [0, 2]])[0]) == [2, 2]
    assert _diag(snf([[1, 1], [0, 2]])[0]) == [1, 2]
    assert _diag(snf([[2, 0], [0, 3]])[0]) == [1, 6]


@settings(max_examples=200)
@given(rect())
def test_snf_properties_and_sympy_oracle(m):
    from sympy import Matrix, ZZ
    from sympy.matrices.normalforms import smith_normal_form

    s, u, v = snf(m)
    assert matmul(matmul(u, m), v) == s
    assert is_unimodular(u) and is_unimodular(v)
    d = _diag(s)
    assert all(x >= 0 for x in d)
    nonzero = [x for x in d if x]
    assert d[:len(nonzero)] == nonzero
    assert all(b % a == 0 for a, b in zip(nonzero, nonzero[1:]))
    assert all(s[i][j] == 0 for i in range(len(s)) for j in range(len(s[0])) if i != j)
    expected = smith_normal_form(Matrix(m), domain=ZZ)
    assert sorted(abs(int(expected[i, i])) for i in range(len(d))) == sorted(d)


def test_snf_terminates_on_overdetermined_input():
    # this one used to cycle forever when the pivot already divided the entry
    s, u, v = snf([[0, 1], [1, 0], [1, 1]])
    assert _diag(s) == [1, 1]


# -- sublattice index -----------------------------------------------------------

@pytest.mark.parametrize("vectors, index", [
    ([(1, 0), (0, 1)], 1),
    ([(1, 1), (1, -1)], 2),
    ([(1, -1), (-1, -2)], 3),
])
def test_sublattice_index(vectors, index):
    assert sublattice_index(vectors) == index


def test_sublattice_index_empty():
    with pytest.raises(ValueError):
        sublattice_index([])


def test_rank_and_inverse():
    assert rank([[1, 2], [2, 4]]) == 1
    assert matmul(inverse([[2, 1], [1, 1]]), [[2, 1], [1, 1]]) == ((1, 0), (0, 1))
    with pytest.raises(DegenerateError):
        inverse([[1, 2], [2, 4]])


# -- affine maps ------------------------------------------------------------------

def test_solve_affine_map_examples():
    corners = [(0, 0), (1, 0), (0, 1)]
    assert solve_affine_map(corners, corners) == AffineMap.identity(2)
    f = solve_affine_map(corners, [(0, 0), (1, 0), (1, 1)])
    assert f.linear == ((1, 1), (0, 1))
    assert f.translation == (0, 0)
    with pytest.raises(DegenerateError):
        solve_affine_map([(0, 0), (1, 0), (2, 0)], corners)


def test_is_lattice_affine_examples():
    assert is_lattice_affine(AffineMap.identity(3))
    assert is_lattice_affine(AffineMap([[1, 1], [0, 1]], (3, -2)))
    assert not is_lattice_affine(AffineMap([[2, 0], [0, 1]], (0, 0)))
    assert not is_lattice_affine(AffineMap([[1, 0], [0, 1]], (Fraction(1, 2), 0)))


def test_affine_map_algebra():
    f = AffineMap([[1, 1], [0, 1]], (3, -2))
    g = AffineMap([[0, -1], [1, 0]], (1, 0))
    x = (5, 7)
    assert (f @ g)(x) == f(g(x))
    assert (f @ f.inverse())(x) == x
    assert f.to_json() == {"linear": [[1, 1], [0, 1]], "translation": [3, -2]}
    assert AffineMap([[1]], (Fraction(1, 2),)).to_json()["translation"] == ["1/2"]
