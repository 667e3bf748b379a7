"""Hot loops behind the poset, nerve and homology code.

Every kernel exists twice: a loop implementation that numba compiles, and a
numpy / pure-Python twin.  The twin is used when numba is missing or when the
environment sets ``OPERAD_FORGE_NUMBA=0``.  Both return identical results; the
test-suite and ``benchmarks/bench_kernels.py`` run them side by side.
"""

import os

import numpy as np

__all__ = [
    "BACKEND",
    "HAVE_NUMBA",
    "edge_leq_table",
    "find_intransitive",
    "chain_counts",
    "enumerate_chains",
    "reduce_columns",
    "REDUCE_OK",
    "REDUCE_NONUNIT",
    "REDUCE_OVERFLOW",
]

REDUCE_OK = 0
REDUCE_NONUNIT = 1
REDUCE_OVERFLOW = 2

# int64 products of two values below this bound cannot overflow
_MAG_LIMIT = 1 << 31


def _numba_requested():
    flag = os.environ.get("OPERAD_FORGE_NUMBA", "1").strip().lower()
    return flag not in ("0", "false", "no", "off")


try:
    if not _numba_requested():
        raise ImportError("numba disabled by OPERAD_FORGE_NUMBA")
    from numba import njit as _njit

    HAVE_NUMBA = True
except ImportError:
    _njit = None
    HAVE_NUMBA = False

BACKEND = "numba" if HAVE_NUMBA else "numpy"


def _compiled(fn):
    if _njit is None:
        return None
    return _njit(cache=True, nogil=True)(fn)


# ---------------------------------------------------------------------------
# order relation on encoded graph labels
#
# An element of the augmented complete graphs operad is stored as one int8 per
# vertex pair a<b: 0 = unlabelled, +c = a->b colour c, -c = b->a colour c.


def _edge_leq_loops(codes):
    n, e = codes.shape
    out = np.zeros((n, n), dtype=np.bool_)
    for i in range(n):
        for j in range(n):
            ok = True
            for t in range(e):
                x = codes[i, t]
                y = codes[j, t]
                if x == 0:
                    if y != 0:
                        ok = False
                        break
                elif y != 0:
                    ax = x if x > 0 else -x
                    ay = y if y > 0 else -y
                    if (x > 0) == (y > 0):
                        if ay < ax:
                            ok = False
                            break
                    elif ay <= ax:
                        ok = False
                        break
            out[i, j] = ok
    return out


def _edge_leq_numpy(codes, chunk=256):
    codes = np.asarray(codes, dtype=np.int16)
    n = codes.shape[0]
    out = np.empty((n, n), dtype=bool)
    y = codes[None, :, :]
    ay = np.abs(y)
    for lo in range(0, n, chunk):
        x = codes[lo:lo + chunk, None, :]
        ax = np.abs(x)
        same = (x > 0) == (y > 0)
        ok = np.where(
            x == 0,
            y == 0,
            (y == 0) | np.where(same, ay >= ax, ay > ax),
        )
        out[lo:lo + chunk] = ok.all(axis=2)
    return out


_edge_leq_numba = _compiled(_edge_leq_loops)


def edge_leq_table(codes):
    """Full ``<=`` table of the augmented complete-graph order on encoded rows."""
    codes = np.ascontiguousarray(codes, dtype=np.int8)
    if codes.ndim != 2:
        raise ValueError("codes must be a 2-d array")
    if codes.shape[1] == 0:
        return np.ones((codes.shape[0],) * 2, dtype=bool)
    if _edge_leq_numba is not None:
        return _edge_leq_numba(codes)
    return _edge_leq_numpy(codes)


# ---------------------------------------------------------------------------
# transitivity


def _intransitive_loops(leq):
    n = leq.shape[0]
    for i in range(n):
        for j in range(n):
            if i != j and leq[i, j]:
                for k in range(n):
                    if leq[j, k] and not leq[i, k]:
                        return np.array([i, j, k], dtype=np.int64)
    return np.full(3, -1, dtype=np.int64)


def _intransitive_numpy(leq):
    n = leq.shape[0]
    packed = np.packbits(leq, axis=1)
    for i in range(n):
        above = np.flatnonzero(leq[i])
        if above.size == 0:
            continue
        reach = np.bitwise_or.reduce(packed[above], axis=0)
        bad = reach & ~packed[i]
        if bad.any():
            k = int(np.flatnonzero(np.unpackbits(bad)[:n])[0])
            j = int(above[leq[above, k]][0])
            return np.array([i, j, k], dtype=np.int64)
    return np.full(3, -1, dtype=np.int64)


_intransitive_numba = _compiled(_intransitive_loops)


def find_intransitive(leq):
    """Return ``(i, j, k)`` with i<=j<=k but not i<=k, or ``None``."""
    leq = np.ascontiguousarray(leq, dtype=np.bool_)
    if _intransitive_numba is not None:
        hit = _intransitive_numba(leq)
    else:
        hit = _intransitive_numpy(leq)
    if hit[0] < 0:
        return None
    return tuple(int(v) for v in hit)


# ---------------------------------------------------------------------------
# chains of a poset
#
# ``indptr``/``indices`` hold the strict up-sets in CSR form; ``order`` is a
# linear extension (every element after everything below it).


def _chain_counts_loops(indptr, indices, order, max_len):
    n = order.shape[0]
    per = np.zeros((n, max_len), dtype=np.int64)
    for t in range(n - 1, -1, -1):
        x = order[t]
        per[x, 0] = 1
        for p in range(indptr[x], indptr[x + 1]):
            y = indices[p]
            for length in range(1, max_len):
                per[x, length] += per[y, length - 1]
    return per.sum(axis=0)


def _chain_counts_numpy(indptr, indices, order, max_len):
    n = order.shape[0]
    per = np.zeros((n, max_len), dtype=np.int64)
    for x in order[::-1]:
        per[x, 0] = 1
        up = indices[indptr[x]:indptr[x + 1]]
        if up.size:
            per[x, 1:] += per[up, :-1].sum(axis=0)
    return per.sum(axis=0)


_chain_counts_numba = _compiled(_chain_counts_loops)


def chain_counts(indptr, indices, order, max_len):
    """Number of chains with 1, 2, ..., max_len elements."""
    if order.shape[0] == 0:
        return np.zeros(max_len, dtype=np.int64)
    args = (
        np.ascontiguousarray(indptr, dtype=np.int64),
        np.ascontiguousarray(indices, dtype=np.int64),
        np.ascontiguousarray(order, dtype=np.int64),
        int(max_len),
    )
    if _chain_counts_numba is not None:
        return _chain_counts_numba(*args)
    return _chain_counts_numpy(*args)


def _enumerate_chains_loops(indptr, indices, n, total, max_len):
    out = np.full((total, max_len), -1, dtype=np.int32)
    lengths = np.zeros(total, dtype=np.int32)
    stack_node = np.empty(max_len, dtype=np.int64)
    stack_next = np.empty(max_len, dtype=np.int64)
    row = 0
    for start in range(n):
        depth = 0
        stack_node[0] = start
        stack_next[0] = indptr[start]
        for q in range(depth + 1):
            out[row, q] = stack_node[q]
        lengths[row] = 1
        row += 1
        while depth >= 0:
            x = stack_node[depth]
            p = stack_next[depth]
            if p < indptr[x + 1]:
                stack_next[depth] = p + 1
                y = indices[p]
                depth += 1
                stack_node[depth] = y
                stack_next[depth] = indptr[y]
                for q in range(depth + 1):
                    out[row, q] = stack_node[q]
                lengths[row] = depth + 1
                row += 1
            else:
                depth -= 1
    return out, lengths


def _enumerate_chains_numpy(indptr, indices, n, total, max_len):
    up = np.zeros((n, n), dtype=bool)
    for x in range(n):
        up[x, indices[indptr[x]:indptr[x + 1]]] = True
    blocks = []
    current = np.arange(n, dtype=np.int32)[:, None]
    while current.shape[0]:
        blocks.append(current)
        src, nxt = np.nonzero(up[current[:, -1]])
        current = np.hstack([current[src], nxt[:, None].astype(np.int32)])
    out = np.full((total, max_len), -1, dtype=np.int32)
    lengths = np.zeros(total, dtype=np.int32)
    row = 0
    for blk in blocks:
        m, width = blk.shape
        out[row:row + m, :width] = blk
        lengths[row:row + m] = width
        row += m
    return out, lengths


_enumerate_chains_numba = _compiled(_enumerate_chains_loops)


def enumerate_chains(indptr, indices, n, counts):
    """All chains, grouped by size: a list whose entry d is an int32 array of
    shape ``(counts[d], d + 1)`` listing the chain elements in increasing order.

    Rows within a dimension are in no particular order; callers sort them.
    """
    counts = np.asarray(counts, dtype=np.int64)
    while counts.size and counts[-1] == 0:
        counts = counts[:-1]
    max_len = int(counts.size)
    total = int(counts.sum())
    if total == 0:
        return []
    args = (
        np.ascontiguousarray(indptr, dtype=np.int64),
        np.ascontiguousarray(indices, dtype=np.int64),
        int(n),
        total,
        max_len,
    )
    if _enumerate_chains_numba is not None:
        flat, lengths = _enumerate_chains_numba(*args)
    else:
        flat, lengths = _enumerate_chains_numpy(*args)
    return [flat[lengths == d + 1, :d + 1] for d in range(max_len)]


# ---------------------------------------------------------------------------
# integer column reduction
#
# Reduces the columns of an integer matrix (CSC, row indices ascending) with
# unimodular column operations until all nonzero columns have distinct lowest
# rows.  Pivots are only ever taken on lowest entries equal to +-1; meeting any
# other lowest entry aborts with REDUCE_NONUNIT so the caller can switch to the
# exact Smith normal form.  When every pivot is a unit the column space is a
# direct summand, i.e. the cokernel is torsion free.


def _reduce_loops(indptr, indices, data, nrows, skip):
    ncols = indptr.shape[0] - 1
    pivot_of = np.full(nrows, -1, dtype=np.int64)
    lows = np.empty(ncols, dtype=np.int64)
    slot_start = np.empty(ncols, dtype=np.int64)
    slot_len = np.empty(ncols, dtype=np.int64)
    cap = max(64, 2 * indices.shape[0])
    st_idx = np.empty(cap, dtype=np.int64)
    st_val = np.empty(cap, dtype=np.int64)
    used = 0
    nslots = 0
    work_idx = np.empty(nrows, dtype=np.int64)
    work_val = np.empty(nrows, dtype=np.int64)
    tmp_idx = np.empty(nrows, dtype=np.int64)
    tmp_val = np.empty(nrows, dtype=np.int64)
    rank = 0
    for j in range(ncols):
        if skip[j]:
            continue
        m = 0
        for p in range(indptr[j], indptr[j + 1]):
            if data[p] != 0:
                work_idx[m] = indices[p]
                work_val[m] = data[p]
                m += 1
        while m > 0:
            low = work_idx[m - 1]
            s = pivot_of[low]
            if s < 0:
                break
            a = slot_start[s]
            la = slot_len[s]
            # stored pivot is +-1, so the multiplier is value * pivot
            coef = work_val[m - 1] * st_val[a + la - 1]
            if coef > _MAG_LIMIT or coef < -_MAG_LIMIT:
                return rank, lows[:rank], REDUCE_OVERFLOW
            u = 0
            v = 0
            t = 0
            while u < m or v < la:
                if v >= la or (u < m and work_idx[u] < st_idx[a + v]):
                    tmp_idx[t] = work_idx[u]
                    tmp_val[t] = work_val[u]
                    u += 1
                    t += 1
                elif u >= m or st_idx[a + v] < work_idx[u]:
                    val = -coef * st_val[a + v]
                    tmp_idx[t] = st_idx[a + v]
                    tmp_val[t] = val
                    v += 1
                    t += 1
                else:
                    val = work_val[u] - coef * st_val[a + v]
                    if val != 0:
                        tmp_idx[t] = work_idx[u]
                        tmp_val[t] = val
                        t += 1
                    u += 1
                    v += 1
                if t > 0 and (tmp_val[t - 1] > _MAG_LIMIT or tmp_val[t - 1] < -_MAG_LIMIT):
                    return rank, lows[:rank], REDUCE_OVERFLOW
            for q in range(t):
                work_idx[q] = tmp_idx[q]
                work_val[q] = tmp_val[q]
            m = t
        if m == 0:
            continue
        pv = work_val[m - 1]
        if pv != 1 and pv != -1:
            return rank, lows[:rank], REDUCE_NONUNIT
        if used + m > cap:
            while used + m > cap:
                cap *= 2
            grown_idx = np.empty(cap, dtype=np.int64)
            grown_val = np.empty(cap, dtype=np.int64)
            grown_idx[:used] = st_idx[:used]
            grown_val[:used] = st_val[:used]
            st_idx = grown_idx
            st_val = grown_val
        slot_start[nslots] = used
        slot_len[nslots] = m
        for q in range(m):
            st_idx[used + q] = work_idx[q]
            st_val[used + q] = work_val[q]
        used += m
        pivot_of[work_idx[m - 1]] = nslots
        nslots += 1
        lows[rank] = work_idx[m - 1]
        rank += 1
    return rank, lows[:rank], REDUCE_OK


def _reduce_python(indptr, indices, data, nrows, skip):
    # exact Python integers: never overflows, only NONUNIT can stop it
    pivots = {}
    lows = []
    for j in range(len(indptr) - 1):
        if skip[j]:
            continue
        col = {}
        for p in range(indptr[j], indptr[j + 1]):
            v = int(data[p])
            if v:
                col[int(indices[p])] = v
        while col:
            low = max(col)
            piv = pivots.get(low)
            if piv is None:
                break
            coef = col[low] * piv[low]
            for r, v in piv.items():
                nv = col.get(r, 0) - coef * v
                if nv:
                    col[r] = nv
                else:
                    col.pop(r, None)
        if not col:
            continue
        low = max(col)
        if col[low] not in (1, -1):
            return len(lows), np.array(lows, dtype=np.int64), REDUCE_NONUNIT
        pivots[low] = col
        lows.append(low)
    return len(lows), np.array(lows, dtype=np.int64), REDUCE_OK


_reduce_numba = _compiled(_reduce_loops)


def reduce_columns(indptr, indices, data, nrows, skip=None):
    """Unit-pivot column reduction.

    Returns ``(rank, low_rows, status)``.  ``rank`` and ``low_rows`` are only
    meaningful when ``status == REDUCE_OK``.
    """
    ncols = len(indptr) - 1
    if skip is None:
        skip = np.zeros(ncols, dtype=np.bool_)
    args = (
        np.ascontiguousarray(indptr, dtype=np.int64),
        np.ascontiguousarray(indices, dtype=np.int64),
        np.ascontiguousarray(data, dtype=np.int64),
        int(nrows),
        np.ascontiguousarray(skip, dtype=np.bool_),
    )
    if _reduce_numba is not None:
        rank, lows, status = _reduce_numba(*args)
    else:
        rank, lows, status = _reduce_python(*args)
    return int(rank), np.asarray(lows, dtype=np.int64), int(status)


# exposed for the benchmark and the cross-backend tests
IMPLEMENTATIONS = {
    "edge_leq_table": (_edge_leq_numba, _edge_leq_numpy),
    "find_intransitive": (_intransitive_numba, _intransitive_numpy),
    "chain_counts": (_chain_counts_numba, _chain_counts_numpy),
    "enumerate_chains": (_enumerate_chains_numba, _enumerate_chains_numpy),
    "reduce_columns": (_reduce_numba, _reduce_python),
}
