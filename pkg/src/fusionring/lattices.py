"""Exact integer lattice arithmetic: Smith normal form and sublattice indices."""

from __future__ import annotations

from fractions import Fraction


def smith_normal_form(mat):
    """Diagonalize an integer matrix by unimodular row/column operations.

    Returns ``(diag, u, v)`` with ``u @ mat @ v`` diagonal, ``u`` and ``v``
    unimodular, and each diagonal entry dividing the next.  ``diag`` has
    ``min(shape)`` nonnegative entries (zeros trail).
    """
    m = [list(map(int, row)) for row in mat]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    u = [[int(i == j) for j in range(nrows)] for i in range(nrows)]
    v = [[int(i == j) for j in range(ncols)] for i in range(ncols)]

    def swap_rows(i, j):
        m[i], m[j] = m[j], m[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in m:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, k):
        for c in range(ncols):
            m[dst][c] += k * m[src][c]
        for c in range(nrows):
            u[dst][c] += k * u[src][c]

    def add_col(src, dst, k):
        for row in m:
            row[dst] += k * row[src]
        for row in v:
            row[dst] += k * row[src]

    def negate_row(i):
        m[i] = [-x for x in m[i]]
        u[i] = [-x for x in u[i]]

    rank = min(nrows, ncols)
    for t in range(rank):
        while True:
            pivot = None
            for i in range(t, nrows):
                for j in range(t, ncols):
                    if m[i][j] and (pivot is None or abs(m[i][j]) < abs(m[pivot[0]][pivot[1]])):
                        pivot = (i, j)
            if pivot is None:
                break
            if pivot != (t, t):
                if pivot[0] != t:
                    swap_rows(t, pivot[0])
                if pivot[1] != t:
                    swap_cols(t, pivot[1])
            if m[t][t] < 0:
                negate_row(t)
            dirty = False
            for i in range(t + 1, nrows):
                q = m[i][t] // m[t][t]
                if q:
                    add_row(t, i, -q)
                if m[i][t]:
                    dirty = True
            for j in range(t + 1, ncols):
                q = m[t][j] // m[t][t]
                if q:
                    add_col(t, j, -q)
                if m[t][j]:
                    dirty = True
            if dirty:
                continue
            # Enforce divisibility of the remaining block by the pivot.
            offender = None
            for i in range(t + 1, nrows):
                for j in range(t + 1, ncols):
                    if m[i][j] % m[t][t]:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            add_row(offender, t, 1)
        if m[t][t] == 0:
            break

    diag = [m[i][i] for i in range(rank)]
    return diag, u, v


def lattice_index(rows, dim):
    """Index in Z^dim of the sublattice spanned by integer row vectors.

    Raises ``ValueError`` when the rows do not span a finite-index (full rank)
    sublattice.
    """
    diag, _, _ = smith_normal_form([list(r) for r in rows])
    if len(diag) < dim or any(d == 0 for d in diag[:dim]):
        raise ValueError("rows do not span a full-rank sublattice")
    idx = 1
    for d in diag[:dim]:
        idx *= d
    return idx


def row_basis(rows, dim):
    """Integer basis (``dim`` rows) of the lattice spanned by integer row vectors."""
    diag, _, v = smith_normal_form([list(r) for r in rows])
    if len(diag) < dim or any(d == 0 for d in diag[:dim]):
        raise ValueError("rows do not span a full-rank sublattice")
    vinv = invert_rational_matrix(v)
    basis = []
    for i in range(dim):
        row = [diag[i] * x for x in vinv[i]]
        assert all(x.denominator == 1 for x in row)
        basis.append(tuple(int(x) for x in row))
    return tuple(basis)


def integer_determinant(mat):
    """Determinant of a square integer matrix, computed exactly."""
    n = len(mat)
    a = [[Fraction(x) for x in row] for row in mat]
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col]), None)
        if pivot is None:
            return 0
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = -det
        det *= a[col][col]
        inv = 1 / a[col][col]
        for r in range(col + 1, n):
            factor = a[r][col] * inv
            if factor:
                a[r] = [x - factor * y for x, y in zip(a[r], a[col])]
    assert det.denominator == 1
    return int(det)


def invert_rational_matrix(mat):
    """Exact inverse of a square matrix with Fraction entries."""
    n = len(mat)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(mat)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col]), None)
        if pivot is None:
            raise ValueError("matrix is singular")
        a[col], a[pivot] = a[pivot], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                factor = a[r][col]
                a[r] = [x - factor * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]
