"""Exact Smith normal form over the integers.

Sparse row/column elimination with Python integers, always pivoting on an
entry of minimal absolute value.  This is the slow, always-correct path: the
homology code uses it whenever the unit-pivot kernel gives up, and the tests
use it as the reference for small matrices.
"""

from math import gcd


def _entries(matrix):
    """Accept a SparseIntMatrix, a dense nested list, or a dict {(r, c): v}."""
    if hasattr(matrix, "iter_entries"):
        return matrix.shape, matrix.iter_entries()
    if isinstance(matrix, dict):
        rows = 1 + max((r for r, _ in matrix), default=-1)
        cols = 1 + max((c for _, c in matrix), default=-1)
        return (rows, cols), ((r, c, v) for (r, c), v in matrix.items())
    mat = [list(row) for row in matrix]
    ncols = len(mat[0]) if mat else 0
    return (len(mat), ncols), (
        (r, c, v) for r, row in enumerate(mat) for c, v in enumerate(row)
    )


def smith_diagonal(matrix):
    """Nonzero entries of a diagonal matrix equivalent to ``matrix``
    (absolute values, unordered)."""
    _, entries = _entries(matrix)
    rows = {}
    cols = {}
    for r, c, v in entries:
        v = int(v)
        if v:
            row = rows.setdefault(r, {})
            row[c] = row.get(c, 0) + v
            cols.setdefault(c, set()).add(r)
    for r in list(rows):
        for c in [c for c, v in rows[r].items() if v == 0]:
            del rows[r][c]
            cols[c].discard(r)

    def add_row(dst, src, q):
        # row dst += q * row src
        drow = rows[dst]
        for c, v in rows[src].items():
            nv = drow.get(c, 0) + q * v
            if nv:
                if c not in drow:
                    cols[c].add(dst)
                drow[c] = nv
            elif c in drow:
                del drow[c]
                cols[c].discard(dst)

    def add_col(dst, src, q):
        # column dst += q * column src
        for r in list(cols[src]):
            row = rows[r]
            nv = row.get(dst, 0) + q * row[src]
            if nv:
                if dst not in row:
                    cols.setdefault(dst, set()).add(r)
                row[dst] = nv
            elif dst in row:
                del row[dst]
                cols[dst].discard(r)

    diag = []
    while True:
        best = None
        for r, row in rows.items():
            for c, v in row.items():
                a = abs(v)
                if best is None or a < best[0]:
                    best = (a, r, c)
                    if a == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, r, c = best
        while True:
            pv = rows[r][c]
            clean = True
            for r2 in list(cols[c]):
                if r2 != r:
                    add_row(r2, r, -(rows[r2][c] // pv))
                    if c in rows[r2]:
                        clean = False
            for c2 in list(rows[r]):
                if c2 != c:
                    add_col(c2, c, -(rows[r][c2] // pv))
                    if c2 in rows[r]:
                        clean = False
            if clean:
                break
            # a nonzero remainder is smaller than the pivot: move there
            cand = [(abs(v), r, c2) for c2, v in rows[r].items()]
            cand += [(abs(rows[r2][c]), r2, c) for r2 in cols[c]]
            _, r, c = min(cand)
        diag.append(abs(rows[r][c]))
        del rows[r]
        cols[c].discard(r)
        del cols[c]
        for key in [k for k, row in rows.items() if not row]:
            del rows[key]
    return diag


def invariant_factors(diag):
    """Turn any diagonal into Smith form d_1 | d_2 | ... (zeros dropped)."""
    d = sorted(int(abs(x)) for x in diag if x)
    changed = True
    while changed:
        changed = False
        for i in range(len(d)):
            for j in range(i + 1, len(d)):
                a, b = d[i], d[j]
                g = gcd(a, b)
                if g != a:
                    d[i], d[j] = g, a * b // g
                    changed = True
        d.sort()
    return d


def smith_invariants(matrix):
    """Invariant factors (nonzero diagonal of the Smith normal form)."""
    return invariant_factors(smith_diagonal(matrix))
