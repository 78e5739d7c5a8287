"""Exact integer linear algebra: Smith normal form and lattice utilities.

Matrices are lists of rows of Python ints.  Vectors are lists of ints and
are treated as columns whenever a matrix acts on them.
"""

from __future__ import annotations

from typing import Sequence

Matrix = list[list[int]]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def zeros(rows: int, cols: int) -> Matrix:
    return [[0] * cols for _ in range(rows)]


def shape(m: Sequence[Sequence[int]], cols: int | None = None) -> tuple[int, int]:
    rows = len(m)
    if rows:
        return rows, len(m[0])
    return 0, cols or 0


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]], inner: int | None = None) -> Matrix:
    """Product of an (r x k) and a (k x c) matrix.

    ``inner`` is needed only when both operands are empty along k.
    """
    r = len(a)
    k = len(a[0]) if r else (len(b) if inner is None else inner)
    c = len(b[0]) if b else 0
    out = zeros(r, c)
    for i in range(r):
        row = a[i]
        acc = out[i]
        for t in range(k):
            x = row[t]
            if x:
                brow = b[t]
                for j in range(c):
                    acc[j] += x * brow[j]
    return out


def matvec(a: Sequence[Sequence[int]], v: Sequence[int]) -> list[int]:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def transpose(m: Sequence[Sequence[int]], rows: int = 0) -> Matrix:
    if not m:
        return [[] for _ in range(rows)]
    return [list(col) for col in zip(*m)]


def hstack(*blocks: Sequence[Sequence[int]], rows: int) -> Matrix:
    out = [[] for _ in range(rows)]
    for blk in blocks:
        for i in range(rows):
            out[i].extend(blk[i] if blk else [])
    return out


def smith_normal_form(m: Sequence[Sequence[int]], cols: int | None = None) -> tuple[Matrix, Matrix, Matrix]:
    """Return ``(U, D, V)`` with ``U @ m @ V == D`` and D in Smith form.

    U and V are unimodular.  The diagonal of D is nonnegative and each entry
    divides the next; zero entries come last.
    """
    rows, ncols = shape(m, cols)
    d = [list(r) for r in m]
    u = identity(rows)
    v = identity(ncols)

    def swap_rows(i: int, j: int) -> None:
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i: int, j: int) -> None:
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst: int, src: int, q: int) -> None:
        # row_dst += q * row_src
        rd, rs = d[dst], d[src]
        for j in range(ncols):
            rd[j] += q * rs[j]
        ud, us = u[dst], u[src]
        for j in range(rows):
            ud[j] += q * us[j]

    def add_col(dst: int, src: int, q: int) -> None:
        for row in d:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    t = 0
    while t < min(rows, ncols):
        best = None
        for i in range(t, rows):
            for j in range(t, ncols):
                x = d[i][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
        if best is None:
            break
        swap_rows(t, best[1])
        swap_cols(t, best[2])
        while True:
            p = d[t][t]
            dirty = False
            for i in range(t + 1, rows):
                if d[i][t]:
                    add_row(i, t, -(d[i][t] // p))
                    if d[i][t]:
                        dirty = True
            for j in range(t + 1, ncols):
                if d[t][j]:
                    add_col(j, t, -(d[t][j] // p))
                    if d[t][j]:
                        dirty = True
            if dirty:
                # move the smallest remainder in row/column t onto the pivot
                cand = [(abs(d[i][t]), i, t) for i in range(t + 1, rows) if d[i][t]]
                cand += [(abs(d[t][j]), t, j) for j in range(t + 1, ncols) if d[t][j]]
                _, i, j = min(cand)
                if j == t:
                    swap_rows(t, i)
                else:
                    swap_cols(t, j)
                continue
            bad = None
            for i in range(t + 1, rows):
                for j in range(t + 1, ncols):
                    if d[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, 1)
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return u, d, v


def diagonal(d: Matrix) -> list[int]:
    return [d[i][i] for i in range(min(len(d), len(d[0]) if d else 0))]


def rank(m: Sequence[Sequence[int]], cols: int | None = None) -> int:
    _, d, _ = smith_normal_form(m, cols)
    return sum(1 for x in diagonal(d) if x)


def inverse_unimodular(m: Matrix) -> Matrix:
    """Inverse of a unimodular matrix, computed exactly."""
    n = len(m)
    u, d, v = smith_normal_form(m, n)
    # U m V = D with D = diag(1, ..., 1) so m^-1 = V U
    if any(d[i][i] != 1 for i in range(n)):
        raise ValueError("matrix is not unimodular")
    return matmul(v, u, n)


def kernel_basis(m: Sequence[Sequence[int]], cols: int) -> Matrix:
    """Columns of the returned (cols x k) matrix form a basis of ker(m)."""
    if not m:
        return identity(cols)
    _, d, v = smith_normal_form(m, cols)
    r = sum(1 for x in diagonal(d) if x)
    return [row[r:] for row in v]


def lattice_basis(gens: Sequence[Sequence[int]], dim: int) -> Matrix:
    """Basis (as columns of a dim x k matrix) of the lattice spanned by ``gens``.

    ``gens`` is a dim x q matrix whose columns generate the lattice.
    """
    if not gens or not gens[0]:
        return [[] for _ in range(dim)]
    u, d, _ = smith_normal_form(gens)
    uinv = inverse_unimodular(u)
    diag = diagonal(d)
    cols = [i for i, x in enumerate(diag) if x]
    return [[uinv[r][i] * diag[i] for i in cols] for r in range(dim)]


def solve(a: Sequence[Sequence[int]], b: Sequence[int], cols: int) -> list[int] | None:
    """Some integer solution x of a @ x == b, or None if there is none."""
    rows = len(b)
    if cols == 0:
        return [] if not any(b) else None
    if rows == 0:
        return [0] * cols
    u, d, v = smith_normal_form(a, cols)
    ub = matvec(u, b)
    y = [0] * cols
    for i in range(rows):
        di = d[i][i] if i < cols else 0
        if di:
            if ub[i] % di:
                return None
            y[i] = ub[i] // di
        elif ub[i]:
            return None
    return matvec(v, y)


def in_span(gens: Sequence[Sequence[int]], vec: Sequence[int]) -> bool:
    """Whether ``vec`` lies in the integer span of the columns of ``gens``."""
    if not any(vec):
        return True
    if not gens or not gens[0]:
        return False
    return solve(gens, vec, len(gens[0])) is not None


def column(m: Sequence[Sequence[int]], j: int) -> list[int]:
    return [row[j] for row in m]


def columns(m: Sequence[Sequence[int]]) -> list[list[int]]:
    if not m:
        return []
    return [list(c) for c in zip(*m)]


def from_columns(cols: Sequence[Sequence[int]], rows: int) -> Matrix:
    if not cols:
        return [[] for _ in range(rows)]
    return [list(r) for r in zip(*cols)]


def det(m: Sequence[Sequence[int]]) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(m)
    if n == 0:
        return 1
    if any(len(r) != n for r in m):
        raise ValueError("determinant of a non-square matrix")
    a = [list(r) for r in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]
