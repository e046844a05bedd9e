"""Exact Gaussian elimination over a cyclotomic field.

Small dense systems only (coefficient matching); returns None when the
system is inconsistent, and the unique/least-indexed solution otherwise
(free columns are set to zero).
"""

from __future__ import annotations


def solve_exact(field, rows, rhs):
    """Solve rows * v = rhs over the field; rows is a list of coefficient lists."""
    m = len(rows)
    ncols = len(rows[0]) if m else 0
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    pivots = []
    r = 0
    for col in range(ncols):
        pivot = None
        for i in range(r, m):
            if aug[i][col]:
                pivot = i
                break
        if pivot is None:
            continue
        aug[r], aug[pivot] = aug[pivot], aug[r]
        inv = field.one / aug[r][col]
        aug[r] = [v * inv for v in aug[r]]
        for i in range(m):
            if i != r and aug[i][col]:
                f = aug[i][col]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
        pivots.append(col)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if aug[i][ncols]:
            return None
    sol = [field.zero] * ncols
    for i, col in enumerate(pivots):
        sol[col] = aug[i][ncols]
    return sol
