"""Exact integer and rational linear algebra on plain tuples.

Vectors are tuples; matrices are tuples of *columns* (column-major). All
arithmetic uses Python's arbitrary-precision ``int`` and ``fractions.Fraction``
so nothing in this package ever touches floating point. Values are immutable
and every function is pure, so everything here is safe to share between
threads without coordination.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import NamedTuple, Sequence, Union

IntVec = tuple[int, ...]
RatVec = tuple[Fraction, ...]
IntMat = tuple[IntVec, ...]  # columns
RatMat = tuple[RatVec, ...]  # columns

Scalar = Union[int, Fraction]


# ---------------------------------------------------------------------------
# vectors

def vec_add(u: Sequence[Scalar], v: Sequence[Scalar]) -> tuple:
    return tuple(a + b for a, b in zip(u, v, strict=True))


def vec_sub(u: Sequence[Scalar], v: Sequence[Scalar]) -> tuple:
    return tuple(a - b for a, b in zip(u, v, strict=True))


def vec_scale(c: Scalar, v: Sequence[Scalar]) -> tuple:
    return tuple(c * a for a in v)


def vec_dot(u: Sequence[Scalar], v: Sequence[Scalar]) -> Scalar:
    return sum(a * b for a, b in zip(u, v, strict=True))


def as_fractions(v: Sequence[Scalar]) -> RatVec:
    return tuple(Fraction(a) for a in v)


def is_zero_vector(v: Sequence[Scalar]) -> bool:
    return all(a == 0 for a in v)


def prim(v: Sequence[int]) -> IntVec:
    """Divide an integer vector by the gcd of its entries.

    The result is the shortest integer vector that is a positive multiple
    of ``v``. Raises ``ValueError`` on the zero vector, which lies on no ray.
    """
    g = 0
    for a in v:
        g = math.gcd(g, a)
    if g == 0:
        raise ValueError("zero vector has no primitive form")
    if g == 1:
        return tuple(v)
    return tuple(a // g for a in v)


def is_forward(v: Sequence[Scalar]) -> bool:
    """True if the first non-zero entry of ``v`` is positive (or v = 0)."""
    for a in v:
        if a != 0:
            return a > 0
    return True


# ---------------------------------------------------------------------------
# matrices (tuples of columns)

def identity(n: int) -> IntMat:
    return tuple(tuple(1 if i == j else 0 for i in range(n)) for j in range(n))


def num_rows(m: IntMat | RatMat) -> int:
    return len(m[0])


def num_cols(m: IntMat | RatMat) -> int:
    return len(m)


def mat_vec(m: IntMat | RatMat, x: Sequence[Scalar]) -> tuple:
    """Matrix-vector product; ``x`` holds one coefficient per column."""
    if len(x) != len(m):
        raise ValueError(f"dimension mismatch: {len(m)} columns, {len(x)} coefficients")
    n = len(m[0])
    return tuple(sum(m[j][i] * x[j] for j in range(len(m))) for i in range(n))


def mat_mul(a: IntMat | RatMat, b: IntMat | RatMat) -> tuple:
    return tuple(mat_vec(a, col) for col in b)


def _check_columns(m: IntMat) -> tuple[int, int]:
    if not m:
        raise ValueError("matrix has no columns")
    n = len(m[0])
    if n == 0 or any(len(col) != n for col in m):
        raise ValueError("columns must be non-empty and of equal length")
    return n, len(m)


def det(m: IntMat) -> int:
    """Exact determinant by Bareiss fraction-free elimination."""
    n, k = _check_columns(m)
    if n != k:
        raise ValueError(f"determinant requires a square matrix, got {n}x{k}")
    # row-major working copy
    a = [[m[j][i] for j in range(n)] for i in range(n)]
    sign = 1
    prev = 1
    for t in range(n - 1):
        if a[t][t] == 0:
            pivot_row = next((i for i in range(t + 1, n) if a[i][t] != 0), None)
            if pivot_row is None:
                return 0
            a[t], a[pivot_row] = a[pivot_row], a[t]
            sign = -sign
        for i in range(t + 1, n):
            for j in range(t + 1, n):
                a[i][j] = (a[i][j] * a[t][t] - a[i][t] * a[t][j]) // prev
            a[i][t] = 0
        prev = a[t][t]
    return sign * a[n - 1][n - 1]


def solve_rational(m: IntMat | RatMat, x: Sequence[Scalar]) -> RatVec | None:
    """Solve ``m @ lam = x`` exactly for linearly independent columns.

    Returns the unique coefficient vector if ``x`` lies in the column span
    and ``None`` otherwise. Raises ``ValueError`` when the columns are
    linearly dependent.
    """
    n, k = _check_columns(m)
    if len(x) != n:
        raise ValueError(f"dimension mismatch: matrix has {n} rows, vector has {len(x)}")
    aug = [[Fraction(m[j][i]) for j in range(k)] + [Fraction(x[i])] for i in range(n)]
    row = 0
    for col in range(k):
        pivot = next((i for i in range(row, n) if aug[i][col] != 0), None)
        if pivot is None:
            raise ValueError("generators not linearly independent")
        aug[row], aug[pivot] = aug[pivot], aug[row]
        pv = aug[row][col]
        aug[row] = [a / pv for a in aug[row]]
        for i in range(n):
            if i != row and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[row])]
        row += 1
    for i in range(row, n):
        if aug[i][k] != 0:
            return None
    return tuple(aug[i][k] for i in range(k))


def invert_rational(m: IntMat | RatMat) -> RatMat:
    """Exact inverse of a square matrix with independent columns."""
    n, k = _check_columns(m)
    if n != k:
        raise ValueError(f"inverse requires a square matrix, got {n}x{k}")
    cols = []
    for j in range(n):
        e = tuple(1 if i == j else 0 for i in range(n))
        col = solve_rational(m, e)
        assert col is not None
        cols.append(col)
    return tuple(cols)


def scaled_inverse(m: IntMat) -> tuple[IntMat, int]:
    """Return ``(adj, d)`` with ``adj = d * m^-1`` integral and ``d = det(m)``.

    Raises ``ValueError`` if ``m`` is singular or not square.
    """
    d = det(m)
    if d == 0:
        raise ValueError("generators not linearly independent")
    inv = invert_rational(m)
    adj = tuple(tuple(int(d * inv[j][i]) for i in range(len(inv))) for j in range(len(inv)))
    return adj, d


# ---------------------------------------------------------------------------
# Smith normal form

class SmithDecomposition(NamedTuple):
    """Factorization V = U @ S @ W with unimodular U, W and diagonal S.

    The diagonal of S is non-negative and forms a divisibility chain
    s1 | s2 | ... ; zeros appear only after the rank. U_inv and W_inv are
    exact inverses, kept because downstream formulas need them constantly.
    """

    U: IntMat
    S: IntMat
    W: IntMat
    U_inv: IntMat
    W_inv: IntMat

    def diagonal(self) -> IntVec:
        k = min(len(self.S), len(self.S[0]))
        return tuple(self.S[j][j] for j in range(k))


def snf(m: IntMat) -> SmithDecomposition:
    """Smith normal form of an integer matrix.

    Pivots are chosen by minimal absolute value to limit coefficient growth.
    All five returned matrices are exact; V = U @ S @ W holds bit for bit.
    """
    n, k = _check_columns(m)
    # row-major working copies; P = U^-1 and Q = W^-1 accumulate the applied
    # row/column operations, Pinv = U and Qinv = W their inverses.
    a = [[m[j][i] for j in range(k)] for i in range(n)]
    p = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    pinv = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    q = [[1 if i == j else 0 for j in range(k)] for i in range(k)]
    qinv = [[1 if i == j else 0 for j in range(k)] for i in range(k)]

    def row_swap(i: int, j: int) -> None:
        a[i], a[j] = a[j], a[i]
        p[i], p[j] = p[j], p[i]
        for r in pinv:
            r[i], r[j] = r[j], r[i]

    def row_negate(i: int) -> None:
        a[i] = [-x for x in a[i]]
        p[i] = [-x for x in p[i]]
        for r in pinv:
            r[i] = -r[i]

    def row_addmul(i: int, j: int, c: int) -> None:
        # row_i += c * row_j; the inverse accumulator gets col_j -= c * col_i
        a[i] = [x + c * y for x, y in zip(a[i], a[j])]
        p[i] = [x + c * y for x, y in zip(p[i], p[j])]
        for r in pinv:
            r[j] -= c * r[i]

    def col_swap(i: int, j: int) -> None:
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in q:
            r[i], r[j] = r[j], r[i]
        qinv[i], qinv[j] = qinv[j], qinv[i]

    def col_addmul(i: int, j: int, c: int) -> None:
        for r in a:
            r[i] += c * r[j]
        for r in q:
            r[i] += c * r[j]
        qinv[j] = [x - c * y for x, y in zip(qinv[j], qinv[i])]

    def min_pivot(t: int) -> tuple[int, int] | None:
        best = None
        for i in range(t, n):
            for j in range(t, k):
                if a[i][j] != 0 and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        return best

    t = 0
    while t < min(n, k):
        pos = min_pivot(t)
        if pos is None:
            break
        row_swap(t, pos[0])
        col_swap(t, pos[1])
        while True:
            if a[t][t] < 0:
                row_negate(t)
            piv = a[t][t]
            dirty = False
            for i in range(t + 1, n):
                if a[i][t]:
                    row_addmul(i, t, -(a[i][t] // piv))
                    dirty = dirty or a[i][t] != 0
            for j in range(t + 1, k):
                if a[t][j]:
                    col_addmul(j, t, -(a[t][j] // piv))
                    dirty = dirty or a[t][j] != 0
            if dirty:
                # a remainder smaller than the pivot appeared; re-pivot on it
                pos = min_pivot(t)
                row_swap(t, pos[0])
                col_swap(t, pos[1])
                continue
            # enforce the divisibility chain before moving on
            piv = a[t][t]
            offender = None
            for i in range(t + 1, n):
                if any(x % piv for x in a[i][t + 1:]):
                    offender = i
                    break
            if offender is not None:
                row_addmul(t, offender, 1)
                continue
            break
        t += 1

    def to_cols(rows: list[list[int]], nr: int, nc: int) -> IntMat:
        return tuple(tuple(rows[i][j] for i in range(nr)) for j in range(nc))

    return SmithDecomposition(
        U=to_cols(pinv, n, n),
        S=to_cols(a, n, k),
        W=to_cols(qinv, k, k),
        U_inv=to_cols(p, n, n),
        W_inv=to_cols(q, k, k),
    )


# ---------------------------------------------------------------------------
# lattice basis reduction

_DELTA = Fraction(3, 4)


def lll_reduce(basis: IntMat, numerator_scale: int = 1) -> IntMat:
    """LLL-reduce an integer lattice basis (delta = 3/4), exactly.

    The columns of ``basis`` are interpreted as ``(1/numerator_scale)``
    times the stored integers, which lets callers feed rational lattices in
    integer form. Reducedness is invariant under uniform scaling, so the
    scale only matters for the caller's bookkeeping; the returned columns
    are stored at the same scale as the input and span the same lattice.

    Raises ``ValueError`` for dependent columns or a non-positive scale.
    """
    n, k = _check_columns(basis)
    if numerator_scale <= 0:
        raise ValueError("numerator_scale must be positive")
    b = [list(col) for col in basis]

    def gram_schmidt() -> tuple[list[list[Fraction]], list[Fraction]]:
        star: list[list[Fraction]] = []
        mu = [[Fraction(0)] * k for _ in range(k)]
        norms: list[Fraction] = []
        for i in range(k):
            v = [Fraction(x) for x in b[i]]
            for j in range(i):
                mu[i][j] = sum(Fraction(x) * y for x, y in zip(b[i], star[j])) / norms[j]
                v = [x - mu[i][j] * y for x, y in zip(v, star[j])]
            nv = sum(x * x for x in v)
            if nv == 0:
                raise ValueError("generators not linearly independent")
            star.append(v)
            norms.append(nv)
        return mu, norms

    mu, norms = gram_schmidt()
    i = 1
    while i < k:
        for j in range(i - 1, -1, -1):
            c = (mu[i][j] + Fraction(1, 2)).__floor__()
            if c:
                b[i] = [x - c * y for x, y in zip(b[i], b[j])]
                mu, norms = gram_schmidt()
        if norms[i] >= (_DELTA - mu[i][i - 1] ** 2) * norms[i - 1]:
            i += 1
        else:
            b[i], b[i - 1] = b[i - 1], b[i]
            mu, norms = gram_schmidt()
            i = max(i - 1, 1)
    return tuple(tuple(col) for col in b)
