"""Dense exact linear algebra over a :class:`FieldSpec` (codes as entries)."""

from __future__ import annotations


def rref(rows, field, ncols=None):
    """Reduced row echelon form; returns ``(rows, pivot_columns)``.

    ``rows`` is a list of lists of field codes and is not modified.
    """
    rows = [list(r) for r in rows]
    if not rows:
        return [], []
    ncols = len(rows[0]) if ncols is None else ncols
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = field.inv(rows[r][c])
        rows[r] = [field.mul(x, inv) for x in rows[r]]
        pr = rows[r]
        for i in range(len(rows)):
            if i != r:
                f = rows[i][c]
                if f != 0:
                    rows[i] = [field.sub(a, field.mul(f, b)) for a, b in zip(rows[i], pr)]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def nullspace(rows, field, ncols):
    """Basis of ``{v : rows · v = 0}`` as a list of vectors."""
    red, pivots = rref(rows, field, ncols) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for row, pc in zip(red, pivots):
            if row[fc] != 0:
                v[pc] = field.neg(row[fc])
        basis.append(v)
    return basis


def solve(rows, rhs, field, ncols):
    """One solution of ``rows · v = rhs`` or ``None``; also returns the nullspace."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug, field, ncols + 1) if aug else ([], [])
    if ncols in pivots:
        return None, []
    v = [0] * ncols
    for row, pc in zip(red, pivots):
        v[pc] = row[ncols]
    return v, nullspace(rows, field, ncols)


def rank(rows, field, ncols=None) -> int:
    return len(rref(rows, field, ncols)[1])
