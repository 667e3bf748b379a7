"""Order complexes and their integer chain complexes."""

from dataclasses import dataclass

import numpy as np

from . import kernels
from .poset import FinPoset

DEFAULT_SIMPLEX_BUDGET = 5_000_000


class BudgetExceeded(RuntimeError):
    """A computation would exceed its configured size budget."""


@dataclass(frozen=True, eq=False)
class SparseIntMatrix:
    """Integer matrix in compressed-column form (row indices ascending)."""

    shape: tuple
    indptr: np.ndarray
    indices: np.ndarray
    data: np.ndarray

    @classmethod
    def from_coo(cls, shape, rows, cols, vals):
        rows = np.asarray(rows, dtype=np.int64)
        cols = np.asarray(cols, dtype=np.int64)
        vals = np.asarray(vals, dtype=np.int64)
        order = np.lexsort((rows, cols))
        rows, cols, vals = rows[order], cols[order], vals[order]
        if rows.size:
            # merge duplicates
            key = cols * max(shape[0], 1) + rows
            uniq, start = np.unique(key, return_index=True)
            vals = np.add.reduceat(vals, start)
            rows, cols = rows[start], cols[start]
            keep = vals != 0
            rows, cols, vals = rows[keep], cols[keep], vals[keep]
        indptr = np.zeros(shape[1] + 1, dtype=np.int64)
        np.add.at(indptr, cols + 1, 1)
        indptr = np.cumsum(indptr)
        return cls(tuple(int(s) for s in shape), indptr, rows, vals)

    @classmethod
    def from_dense(cls, dense):
        a = np.asarray(dense, dtype=np.int64)
        if a.ndim != 2:
            if a.size:
                raise ValueError("dense matrix must be 2-d")
            a = a.reshape(0, 0)
        r, c = np.nonzero(a)
        return cls.from_coo(a.shape, r, c, a[r, c])

    @property
    def nnz(self) -> int:
        return int(self.indices.size)

    def iter_entries(self):
        for j in range(self.shape[1]):
            for p in range(self.indptr[j], self.indptr[j + 1]):
                yield int(self.indices[p]), j, int(self.data[p])

    def coo(self):
        cols = np.repeat(np.arange(self.shape[1], dtype=np.int64), np.diff(self.indptr))
        return self.indices, cols, self.data

    def to_dense(self):
        out = np.zeros(self.shape, dtype=object)
        for r, c, v in self.iter_entries():
            out[r, c] = v
        return out

    def matmul_is_zero(self, other: "SparseIntMatrix") -> bool:
        """Exact test of ``self @ other == 0`` (int64; entries here are tiny)."""
        if self.shape[1] != other.shape[0]:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        orow, ocol, oval = other.coo()
        lens = np.diff(self.indptr)[orow]
        if lens.sum() == 0:
            return True
        starts = self.indptr[orow]
        rep = np.repeat(np.arange(orow.size), lens)
        offs = np.arange(lens.sum()) - np.repeat(np.cumsum(lens) - lens, lens)
        pos = starts[rep] + offs
        out_r = self.indices[pos]
        out_c = ocol[rep]
        out_v = self.data[pos] * oval[rep]
        key = out_c * max(self.shape[0], 1) + out_r
        order = np.argsort(key, kind="stable")
        key, out_v = key[order], out_v[order]
        _, start = np.unique(key, return_index=True)
        return not np.any(np.add.reduceat(out_v, start))


class SimplicialComplexFin:
    """Finite simplicial complex on vertices ``0..n-1``.

    ``simplices[d]`` is an int array of shape ``(count_d, d + 1)``; each row is
    a strictly increasing vertex tuple and rows are sorted lexicographically.
    """

    def __init__(self, simplices, check: bool = True):
        cleaned = []
        for d, arr in enumerate(simplices):
            arr = np.asarray(arr, dtype=np.int32).reshape(-1, d + 1)
            if arr.size:
                arr = np.sort(arr, axis=1)
                arr = np.unique(arr, axis=0)
            cleaned.append(arr)
        while cleaned and cleaned[-1].shape[0] == 0:
            cleaned.pop()
        self.simplices = cleaned
        if check:
            self.check_closed()

    @classmethod
    def from_facets(cls, facets):
        from itertools import combinations

        by_dim = {}
        for f in facets:
            f = sorted(set(f))
            for size in range(1, len(f) + 1):
                for face in combinations(f, size):
                    by_dim.setdefault(size - 1, set()).add(face)
        top = max(by_dim, default=-1)
        return cls([sorted(by_dim.get(d, ())) for d in range(top + 1)], check=False)

    @property
    def dimension(self) -> int:
        return len(self.simplices) - 1

    def counts(self) -> list:
        return [int(a.shape[0]) for a in self.simplices]

    def euler_characteristic(self) -> int:
        return sum((-1) ** d * c for d, c in enumerate(self.counts()))

    def as_sets(self) -> set:
        return {tuple(int(v) for v in row) for arr in self.simplices for row in arr}

    def check_closed(self) -> None:
        for d in range(1, len(self.simplices)):
            lower = _row_index(self.simplices[d - 1])
            arr = self.simplices[d]
            for drop in range(d + 1):
                faces = np.delete(arr, drop, axis=1)
                for row in faces:
                    if row.tobytes() not in lower:
                        raise ValueError(f"missing face {tuple(row)} of a {d}-simplex")

    def boundary(self, d: int) -> SparseIntMatrix:
        """The boundary map from d-chains to (d-1)-chains."""
        if d < 1 or d > self.dimension:
            raise ValueError(f"no boundary map in degree {d}")
        arr = self.simplices[d]
        lower = _row_index(self.simplices[d - 1])
        rows, cols, vals = [], [], []
        col_ids = np.arange(arr.shape[0], dtype=np.int64)
        for drop in range(d + 1):
            faces = np.ascontiguousarray(np.delete(arr, drop, axis=1))
            idx = np.fromiter((lower[f.tobytes()] for f in faces), dtype=np.int64, count=faces.shape[0])
            rows.append(idx)
            cols.append(col_ids)
            vals.append(np.full(arr.shape[0], 1 if drop % 2 == 0 else -1, dtype=np.int64))
        shape = (self.simplices[d - 1].shape[0], arr.shape[0])
        return SparseIntMatrix.from_coo(shape, np.concatenate(rows), np.concatenate(cols), np.concatenate(vals))

    def chain_complex(self) -> "ChainComplexZ":
        return ChainComplexZ(
            [self.boundary(d) for d in range(1, self.dimension + 1)],
            dims=self.counts(),
            check=False,
        )


def _row_index(arr: np.ndarray) -> dict:
    arr = np.ascontiguousarray(arr, dtype=np.int32)
    return {row.tobytes(): i for i, row in enumerate(arr)}


class ChainComplexZ:
    """Integer chain complex ``C_top -> ... -> C_1 -> C_0``.

    ``boundaries[d - 1]`` is the map from C_d to C_{d-1}.
    """

    def __init__(self, boundaries, dims=None, check: bool = True):
        mats = [b if isinstance(b, SparseIntMatrix) else SparseIntMatrix.from_dense(b) for b in boundaries]
        if dims is None:
            if mats:
                dims = [mats[0].shape[0]] + [m.shape[1] for m in mats]
            else:
                dims = [0]
        dims = [int(x) for x in dims]
        if len(dims) != len(mats) + 1:
            raise ValueError("need one more chain group than boundary maps")
        for d, m in enumerate(mats, start=1):
            if m.shape != (dims[d - 1], dims[d]):
                raise ValueError(f"boundary {d} has shape {m.shape}, expected {(dims[d - 1], dims[d])}")
        self.boundaries = mats
        self.dims = dims
        if check:
            self.check()

    def check(self) -> None:
        for d in range(1, len(self.boundaries)):
            if not self.boundaries[d - 1].matmul_is_zero(self.boundaries[d]):
                raise ValueError(f"boundary {d} composed with boundary {d + 1} is not zero")


def order_complex(p: FinPoset, budget: int = DEFAULT_SIMPLEX_BUDGET) -> SimplicialComplexFin:
    """Nerve of ``p``: one simplex per nonempty chain."""
    counts = count_chains(p)
    total = int(counts.sum())
    if total > budget:
        raise BudgetExceeded(
            f"order complex has {total} simplices, budget is {budget}"
        )
    indptr, indices = p.up_csr()
    blocks = kernels.enumerate_chains(indptr, indices, p.size, counts)
    return SimplicialComplexFin(blocks, check=False)


def count_chains(p: FinPoset) -> np.ndarray:
    """``counts[d]`` = number of chains with d+1 elements."""
    if p.size == 0:
        return np.zeros(0, dtype=np.int64)
    indptr, indices = p.up_csr()
    return kernels.chain_counts(indptr, indices, p.linear_extension(), p.height())
