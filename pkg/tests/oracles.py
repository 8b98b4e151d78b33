"""Independent dense-elimination oracle used to cross-check the sparse solver.

Deliberately textbook and self-contained: plain lists of Fractions, first
nonzero entry as pivot, no sparsity tricks.  Nothing here imports from the
package under test.
"""

from fractions import Fraction


def dense_rref(rows):
    """Return (rref_rows, pivot_cols) of a dense list-of-lists matrix."""
    mat = [[Fraction(x) for x in row] for row in rows]
    nrows = len(mat)
    ncols = len(mat[0]) if mat else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, nrows):
            if mat[i][c] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        pv = mat[r][c]
        mat[r] = [x / pv for x in mat[r]]
        for i in range(nrows):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return mat, pivots


def dense_rank(rows):
    return len(dense_rref(rows)[1])


def dense_nullspace(rows, ncols=None):
    """Kernel basis with each free variable set to 1 in turn."""
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    if not rows:
        rows = [[Fraction(0)] * ncols]
    mat, pivots = dense_rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for row_idx, pc in enumerate(pivots):
            vec[pc] = -mat[row_idx][fc]
        basis.append(tuple(vec))
    return basis


def dense_in_span(vectors, target):
    """Whether target is a rational combination of the given vectors."""
    if not vectors:
        return all(x == 0 for x in target)
    n = len(target)
    aug = [[Fraction(vectors[j][i]) for j in range(len(vectors))] + [Fraction(target[i])] for i in range(n)]
    _, pivots = dense_rref(aug)
    return len(vectors) not in pivots
