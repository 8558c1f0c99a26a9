"""Exact linear algebra over any field-like coefficient type.

Works for Scalar and for the radical extension ring: elements only need
+, -, *, /, is_zero().  Matrices are lists of row lists.
"""

from __future__ import annotations


def rref(rows, ncols):
    """Reduced row echelon form.  Returns (new_rows, pivot_column_list)."""
    rows = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = None
        for k in range(r, len(rows)):
            if not rows[k][c].is_zero():
                pivot = k
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for k in range(len(rows)):
            if k != r and not rows[k][c].is_zero():
                f = rows[k][c]
                rows[k] = [a - f * b for a, b in zip(rows[k], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def nullspace(rows, ncols, one, zero):
    """Basis of the solution space of rows * x = 0 (columns = unknowns)."""
    red, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [zero] * ncols
        vec[fc] = one
        for r, pc in enumerate(pivots):
            vec[pc] = -red[r][fc]
        basis.append(vec)
    return basis


def solve_affine(rows, rhs, ncols, one, zero):
    """Solve rows * x = rhs exactly.

    Returns (particular, nullspace_basis) or None when inconsistent.
    """
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug, ncols + 1)
    if ncols in pivots:
        return None
    part = [zero] * ncols
    for r, pc in enumerate(pivots):
        part[pc] = red[r][ncols]
    basis = nullspace([row[:ncols] for row in red], ncols, one, zero)
    return part, basis


def rank(rows, ncols):
    _, pivots = rref(rows, ncols)
    return len(pivots)
