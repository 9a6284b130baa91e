"""Exact integer and rational linear algebra.

Matrices are plain tuples of row tuples holding ``int`` or
``fractions.Fraction`` entries. Python integers are unbounded, so nothing in
here can overflow; there are no floating point paths.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

__all__ = [
    "DimensionError",
    "DegenerateError",
    "AffineMap",
    "as_int_matrix",
    "as_rat_matrix",
    "identity",
    "transpose",
    "matmul",
    "matvec",
    "det",
    "inverse",
    "rank",
    "hnf",
    "snf",
    "sublattice_index",
    "solve_affine_map",
    "is_lattice_affine",
    "is_unimodular",
]


class DimensionError(ValueError):
    """Raised when matrix or vector shapes do not fit the operation."""


class DegenerateError(ValueError):
    """Raised when input points are affinely dependent (or coincide)."""


def _check_rect(m):
    if not m or not m[0]:
        raise DimensionError("matrix must have at least one row and column")
    cols = len(m[0])
    if any(len(row) != cols for row in m):
        raise DimensionError("ragged matrix")


def as_int_matrix(m) -> tuple[tuple[int, ...], ...]:
    """Validate ``m`` and return it as an immutable integer matrix."""
    out = tuple(tuple(int(x) for x in row) for row in m)
    _check_rect(out)
    for row_in, row_out in zip(m, out):
        for x, y in zip(row_in, row_out):
            if x != y:
                raise ValueError(f"non-integral entry {x!r}")
    return out


def as_rat_matrix(m) -> tuple[tuple[Fraction, ...], ...]:
    out = tuple(tuple(Fraction(x) for x in row) for row in m)
    _check_rect(out)
    return out


def identity(n: int) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def transpose(m):
    return tuple(zip(*m))


def matmul(a, b):
    if len(a[0]) != len(b):
        raise DimensionError(f"cannot multiply {len(a)}x{len(a[0])} by {len(b)}x{len(b[0])}")
    bt = tuple(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def matvec(a, v):
    if len(a[0]) != len(v):
        raise DimensionError("matrix/vector size mismatch")
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def _echelon(m):
    """Fraction Gaussian elimination; returns (reduced rows, pivot columns, sign)."""
    rows = [[Fraction(x) for x in row] for row in m]
    nrows, ncols = len(rows), len(rows[0])
    pivots = []
    sign = 1
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if piv is None:
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
            sign = -sign
        for i in range(r + 1, nrows):
            if rows[i][c] != 0:
                f = rows[i][c] / rows[r][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows, pivots, sign


def det(m) -> Fraction:
    """Exact determinant of a square integer or rational matrix.

    >>> det([[2, 1], [1, 2]])
    Fraction(3, 1)
    """
    _check_rect(m)
    n = len(m)
    if len(m[0]) != n:
        raise DimensionError(f"determinant of non-square {n}x{len(m[0])} matrix")
    rows, pivots, sign = _echelon(m)
    if len(pivots) < n:
        return Fraction(0)
    out = Fraction(sign)
    for i in range(n):
        out *= rows[i][i]
    return out


def rank(m) -> int:
    if not m:
        return 0
    return len(_echelon(m)[1])


def inverse(m) -> tuple[tuple[Fraction, ...], ...]:
    """Exact inverse by Gauss-Jordan elimination."""
    _check_rect(m)
    n = len(m)
    if len(m[0]) != n:
        raise DimensionError("inverse of non-square matrix")
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(m)]
    for c in range(n):
        piv = next((i for i in range(c, n) if aug[i][c] != 0), None)
        if piv is None:
            raise DegenerateError("singular matrix")
        aug[c], aug[piv] = aug[piv], aug[c]
        p = aug[c][c]
        aug[c] = [x / p for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    return tuple(tuple(row[n:]) for row in aug)


def is_unimodular(m) -> bool:
    return all(Fraction(x).denominator == 1 for row in m for x in row) and abs(det(m)) == 1


# -- normal forms -----------------------------------------------------------

def _col_op(a, i, j, p, q, r, s):
    """Replace columns (i, j) of ``a`` by (p*ci + q*cj, r*ci + s*cj) in place."""
    for row in a:
        x, y = row[i], row[j]
        row[i] = p * x + q * y
        row[j] = r * x + s * y


def _row_op(a, i, j, p, q, r, s):
    ri, rj = a[i], a[j]
    a[i] = [p * x + q * y for x, y in zip(ri, rj)]
    a[j] = [r * x + s * y for x, y in zip(ri, rj)]


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with a*x + b*y = g = gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def hnf(m):
    """Column-style Hermite normal form.

    Returns ``(h, u)`` with ``h = m @ u``, ``u`` unimodular. ``h`` is lower
    triangular in the echelon sense: each pivot is positive, everything to its
    right in the pivot row is zero, and every entry to its left in the pivot
    row lies in ``[0, pivot)``. Zero columns come last.
    """
    a = [list(row) for row in as_int_matrix(m)]
    nrows, ncols = len(a), len(a[0])
    u = [list(row) for row in identity(ncols)]
    c = 0
    pivots = []
    for i in range(nrows):
        if c == ncols:
            break
        for j in range(c + 1, ncols):
            if a[i][j] == 0:
                continue
            x, y = a[i][c], a[i][j]
            g, s, t = _xgcd(x, y)
            # [[s, -y/g], [t, x/g]] has determinant 1
            _col_op(a, c, j, s, t, -y // g, x // g)
            _col_op(u, c, j, s, t, -y // g, x // g)
        if a[i][c] == 0:
            continue
        if a[i][c] < 0:
            for row in a:
                row[c] = -row[c]
            for row in u:
                row[c] = -row[c]
        p = a[i][c]
        for j in pivots:
            f = a[i][j] // p
            if f:
                for row in a:
                    row[j] -= f * row[c]
                for row in u:
                    row[j] -= f * row[c]
        pivots.append(c)
        c += 1
    return tuple(map(tuple, a)), tuple(map(tuple, u))


def snf(m):
    """Smith normal form.

    Returns ``(s, u, v)`` with ``s = u @ m @ v`` diagonal, nonnegative, each
    diagonal entry dividing the next, and ``u``, ``v`` unimodular.
    """
    a = [list(row) for row in as_int_matrix(m)]
    nrows, ncols = len(a), len(a[0])
    u = [list(row) for row in identity(nrows)]
    v = [list(row) for row in identity(ncols)]

    def swap_rows(i, j):
        if i != j:
            a[i], a[j] = a[j], a[i]
            u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        if i != j:
            _col_op(a, i, j, 0, 1, 1, 0)
            _col_op(v, i, j, 0, 1, 1, 0)

    for t in range(min(nrows, ncols)):
        nz = [(abs(a[i][j]), i, j) for i in range(t, nrows) for j in range(t, ncols) if a[i][j]]
        if not nz:
            break
        _, i0, j0 = min(nz)
        swap_rows(t, i0)
        swap_cols(t, j0)
        while True:
            changed = False
            for i in range(t + 1, nrows):
                if a[i][t]:
                    x, y = a[t][t], a[i][t]
                    if y % x == 0:
                        _row_op(a, t, i, 1, 0, -(y // x), 1)
                        _row_op(u, t, i, 1, 0, -(y // x), 1)
                    else:
                        g, s, r = _xgcd(x, y)
                        _row_op(a, t, i, s, r, -y // g, x // g)
                        _row_op(u, t, i, s, r, -y // g, x // g)
                        changed = True
            for j in range(t + 1, ncols):
                if a[t][j]:
                    x, y = a[t][t], a[t][j]
                    if y % x == 0:
                        _col_op(a, t, j, 1, 0, -(y // x), 1)
                        _col_op(v, t, j, 1, 0, -(y // x), 1)
                    else:
                        g, s, r = _xgcd(x, y)
                        _col_op(a, t, j, s, r, -y // g, x // g)
                        _col_op(v, t, j, s, r, -y // g, x // g)
                        changed = True
            if not changed:
                break
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        # enforce divisibility against the rest of the block
        p = a[t][t]
        bad = next(((i, j) for i in range(t + 1, nrows) for j in range(t + 1, ncols)
                    if a[i][j] % p), None)
        if bad is not None:
            i, _ = bad
            # add row i to row t and redo this pivot
            a[t] = [x + y for x, y in zip(a[t], a[i])]
            u[t] = [x + y for x, y in zip(u[t], u[i])]
            return _snf_continue(a, u, v, t)
    return tuple(map(tuple, a)), tuple(map(tuple, u)), tuple(map(tuple, v))


def _snf_continue(a, u, v, t):
    # the accumulated transforms compose: s = U (u m v) V = (U u) m (v V)
    s, uu, vv = snf(a)
    return s, matmul(uu, u), matmul(v, vv)


def sublattice_index(vectors: Sequence[Sequence[int]], n: int | None = None,
                     full_rank: bool = False) -> int:
    """Index of the lattice spanned by ``vectors`` in its saturation.

    The saturation is the set of integer points in the rational span. With
    ``full_rank=True`` the index is taken inside all of Z^n, so a set that
    does not span returns 0.

    >>> sublattice_index([(1, -1), (-1, -2)])
    3
    """
    if not vectors:
        raise ValueError("need at least one vector")
    if n is None:
        n = len(vectors[0])
    if any(len(v) != n for v in vectors):
        raise DimensionError(f"all vectors must have length {n}")
    s, _, _ = snf(vectors)
    factors = [s[i][i] for i in range(min(len(s), n)) if s[i][i]]
    if full_rank and len(factors) < n:
        return 0
    return math.prod(factors)


# -- affine maps ------------------------------------------------------------

@dataclass(frozen=True)
class AffineMap:
    """The map ``x -> linear @ x + translation`` with rational entries."""

    linear: tuple[tuple[Fraction, ...], ...]
    translation: tuple[Fraction, ...]

    def __post_init__(self):
        lin = as_rat_matrix(self.linear)
        tr = tuple(Fraction(x) for x in self.translation)
        n = len(lin)
        if len(lin[0]) != n or len(tr) != n:
            raise DimensionError("affine map needs a square linear part matching the translation")
        if det(lin) == 0:
            raise DegenerateError("linear part is singular")
        object.__setattr__(self, "linear", lin)
        object.__setattr__(self, "translation", tr)

    @classmethod
    def identity(cls, n: int) -> AffineMap:
        return cls(identity(n), (0,) * n)

    @property
    def dim(self) -> int:
        return len(self.translation)

    def __call__(self, x):
        return tuple(y + t for y, t in zip(matvec(self.linear, x), self.translation))

    def __matmul__(self, other: AffineMap) -> AffineMap:
        """Composition: ``(f @ g)(x) == f(g(x))``."""
        return AffineMap(matmul(self.linear, other.linear),
                         self(other.translation))

    def inverse(self) -> AffineMap:
        inv = inverse(self.linear)
        return AffineMap(inv, tuple(-x for x in matvec(inv, self.translation)))

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for row in self.linear for x in row) and \
            all(x.denominator == 1 for x in self.translation)

    def to_json(self) -> dict:
        """JSON-ready dict; integers stay integers, other rationals become "p/q"."""
        def enc(x):
            return int(x) if x.denominator == 1 else str(x)
        return {"linear": [[enc(x) for x in row] for row in self.linear],
                "translation": [enc(x) for x in self.translation]}


def is_lattice_affine(f: AffineMap) -> bool:
    """True iff ``f`` maps Z^n onto itself."""
    return f.is_integral() and abs(det(f.linear)) == 1


def solve_affine_map(src, dst) -> AffineMap:
    """The unique affine map sending ``src[i]`` to ``dst[i]``.

    ``src`` and ``dst`` hold n+1 points of R^n; ``src`` must be affinely
    independent.
    """
    if len(src) != len(dst) or not src:
        raise DimensionError("src and dst must hold the same number of points")
    n = len(src[0])
    if len(src) != n + 1 or any(len(p) != n for p in list(src) + list(dst)):
        raise DimensionError(f"need {n + 1} points of dimension {n}")
    s0, d0 = src[0], dst[0]
    # columns are difference vectors
    ds = transpose([[Fraction(a) - b for a, b in zip(p, s0)] for p in src[1:]])
    dd = transpose([[Fraction(a) - b for a, b in zip(p, d0)] for p in dst[1:]])
    try:
        ds_inv = inverse(ds)
    except DegenerateError:
        raise DegenerateError("source points are affinely dependent") from None
    lin = matmul(dd, ds_inv)
    image = matvec(lin, s0)
    return AffineMap(lin, tuple(Fraction(d) - x for d, x in zip(d0, image)))
