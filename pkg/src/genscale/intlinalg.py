"""Small exact integer linear algebra: column Hermite normal form and lattice cosets.

Matrices are tuples of row tuples.  Lattices are column spans A·ℤ^k.
"""
from __future__ import annotations

from typing import Sequence

Matrix = tuple[tuple[int, ...], ...]
Vector = tuple[int, ...]


def as_matrix(rows: Sequence[Sequence[int]]) -> Matrix:
    return tuple(tuple(int(x) for x in row) for row in rows)


def identity(d: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(d)) for i in range(d))


def matmul(a: Matrix, b: Matrix) -> Matrix:
    cols = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in a)


def matvec(a: Matrix, v: Sequence[int]) -> Vector:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def det(a: Matrix) -> int:
    """Bareiss fraction-free determinant."""
    n = len(a)
    m = [list(row) for row in a]
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1] if n else 1


def hnf_with_transform(a: Matrix) -> tuple[Matrix, Matrix]:
    """Column-style HNF: return (H, U) with a·U = H, U unimodular.

    H is lower triangular in echelon form: the pivot of column j sits in a
    row strictly below the pivot of column j-1, pivots are positive and the
    entries left of a pivot are reduced into [0, pivot).
    """
    rows = len(a)
    ncols = len(a[0]) if rows else 0
    h = [list(row) for row in a]
    u = [[int(i == j) for j in range(ncols)] for i in range(ncols)]

    def col_op(j: int, k: int, p: int, q: int, r: int, s: int) -> None:
        # (col_j, col_k) <- (p·col_j + q·col_k, r·col_j + s·col_k)
        for mat in (h, u):
            for row in mat:
                x, y = row[j], row[k]
                row[j], row[k] = p * x + q * y, r * x + s * y

    piv_col = 0
    pivots: list[tuple[int, int]] = []
    for i in range(rows):
        if piv_col >= ncols:
            break
        for k in range(piv_col + 1, ncols):
            if h[i][k] == 0:
                continue
            x, y = h[i][piv_col], h[i][k]
            g, p, q = _xgcd(x, y)
            col_op(piv_col, k, p, q, -y // g, x // g)
        if h[i][piv_col] == 0:
            continue
        if h[i][piv_col] < 0:
            for mat in (h, u):
                for row in mat:
                    row[piv_col] = -row[piv_col]
        pivots.append((i, piv_col))
        piv_col += 1
    for i, j in pivots:
        d = h[i][j]
        for k in range(j):
            f = h[i][k] // d
            if f:
                for mat in (h, u):
                    for row in mat:
                        row[k] -= f * row[j]
    return as_matrix(h), as_matrix(u)


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


class Lattice:
    """Full-rank sublattice L = A·ℤ^d of ℤ^d with canonical coset representatives."""

    def __init__(self, generators: Matrix):
        h, _ = hnf_with_transform(generators)
        d = len(generators)
        basis = [tuple(row[j] for row in h) for j in range(len(h[0]))]
        basis = [c for c in basis if any(c)]
        if len(basis) != d:
            raise ValueError("lattice is not of full rank")
        self.d = d
        self.basis = tuple(basis)  # basis[j][j] > 0, basis[j][i] = 0 for i < j
        self.diagonal = tuple(basis[j][j] for j in range(d))

    @property
    def index(self) -> int:
        out = 1
        for x in self.diagonal:
            out *= x
        return out

    def reduce(self, v: Sequence[int]) -> Vector:
        w = list(v)
        for j, b in enumerate(self.basis):
            q = w[j] // b[j]
            if q:
                for i in range(j, self.d):
                    w[i] -= q * b[i]
        return tuple(w)

    def contains(self, v: Sequence[int]) -> bool:
        return not any(self.reduce(v))

    def coset_representatives(self) -> list[Vector]:
        """All reduced vectors, lexicographic order."""
        out: list[Vector] = [()]
        for x in self.diagonal:
            out = [r + (k,) for r in out for k in range(x)]
        return out


def solve_in_span(a: Matrix, b: Matrix, v: Sequence[int]) -> tuple[Vector, Vector] | None:
    """Find integer (k, l) with a·k - b·l = v, or None if v ∉ aℤ^d + bℤ^d."""
    d = len(a)
    m = tuple(tuple(a[i]) + tuple(-x for x in b[i]) for i in range(d))
    h, u = hnf_with_transform(m)
    ncols = len(m[0])
    # forward substitution on the echelon columns
    y = [0] * ncols
    rest = list(v)
    col = 0
    for i in range(d):
        if col < ncols and h[i][col] != 0:
            if rest[i] % h[i][col]:
                return None
            y[col] = rest[i] // h[i][col]
            for r in range(i, d):
                rest[r] -= y[col] * h[r][col]
            col += 1
        elif rest[i] != 0:
            return None
    if any(rest):
        return None
    x = matvec(u, y)
    n = len(a[0])
    return tuple(x[:n]), tuple(x[n:])
