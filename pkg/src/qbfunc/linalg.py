"""Dense exact linear algebra over Q(q).

Matrices are lists of lists of QScalar.  Division is exact, so plain
Gaussian elimination is already fraction-free in effect; pivots are
chosen by smallest term count to limit intermediate expression swell.
"""

from __future__ import annotations

from .scalars import QScalar, QS_ZERO, QS_ONE


def _pivot_row(rows, col, start):
    best = None
    for r in range(start, len(rows)):
        v = rows[r][col]
        if v:
            if best is None or v.complexity() < rows[best][col].complexity():
                best = r
    return best


def matrix_rank(rows):
    if not rows:
        return 0
    rows = [list(r) for r in rows]
    ncols = len(rows[0])
    rank = 0
    for col in range(ncols):
        p = _pivot_row(rows, col, rank)
        if p is None:
            continue
        rows[rank], rows[p] = rows[p], rows[rank]
        inv = rows[rank][col].inverse()
        rows[rank] = [x * inv for x in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                f = rows[r][col]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[rank])]
        rank += 1
        if rank == len(rows):
            break
    return rank


def row_reduce_solve(rows, rhs):
    """Solve rows * x = rhs (overdetermined, consistent); None if inconsistent.

    Requires the coefficient matrix to have full column rank.
    """
    m = [list(r) + [b] for r, b in zip(rows, rhs)]
    ncols = len(rows[0])
    rank = 0
    for col in range(ncols):
        p = _pivot_row(m, col, rank)
        if p is None:
            return None  # rank deficient
        m[rank], m[p] = m[p], m[rank]
        inv = m[rank][col].inverse()
        m[rank] = [x * inv for x in m[rank]]
        for r in range(len(m)):
            if r != rank and m[r][col]:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[rank])]
        rank += 1
    for r in range(rank, len(m)):
        if m[r][ncols]:
            return None
    return [m[r][ncols] for r in range(ncols)]


def kernel_basis(rows, ncols):
    """Basis of the right kernel of the matrix (rows of length ncols)."""
    m = [list(r) for r in rows]
    pivots = []
    rank = 0
    for col in range(ncols):
        p = _pivot_row(m, col, rank)
        if p is None:
            continue
        m[rank], m[p] = m[p], m[rank]
        inv = m[rank][col].inverse()
        m[rank] = [x * inv for x in m[rank]]
        for r in range(len(m)):
            if r != rank and m[r][col]:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[rank])]
        pivots.append(col)
        rank += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [QS_ZERO] * ncols
        vec[fc] = QS_ONE
        for r, pc in enumerate(pivots):
            vec[pc] = -m[r][fc]
        basis.append(vec)
    return basis
