#!/usr/bin/env python3
"""Time the numba kernels against their numpy / pure-Python twins.

Inputs come from a real workload: the arity-3 carrier of the augmented
complete graphs operad with three colours (289 elements) and the nerve of the
total-labelling sub-poset K^(3)(3).

    python3 benchmarks/bench_kernels.py [--repeat 5] [--n 3]
"""

import argparse
import time

import numpy as np

from operad_forge import kernels
from operad_forge.complex import order_complex
from operad_forge.graphs import KHatOperad, codes_array


def best_of(fn, args, repeat):
    times = []
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        times.append(time.perf_counter() - t0)
    return min(times), out


def same(a, b, unordered=False):
    if unordered:   # chain rows come out in backend-dependent order
        return sorted(map(tuple, a[0].tolist())) == sorted(map(tuple, b[0].tolist()))
    if isinstance(a, tuple):
        return all(same(x, y) for x, y in zip(a, b))
    return np.array_equal(np.asarray(a), np.asarray(b))


def workloads(n):
    elems = KHatOperad(n).elements(3)
    codes = np.ascontiguousarray(codes_array(elems), dtype=np.int8)
    leq = kernels.edge_leq_table(codes)
    P = KHatOperad(n, total=True).carrier(3)
    indptr, indices = P.up_csr()
    order = np.ascontiguousarray(P.linear_extension(), dtype=np.int64)
    h = P.height()
    counts = kernels.chain_counts(indptr, indices, order, h)
    total = int(counts.sum())
    cx = order_complex(P)
    bd = cx.boundary(2)
    return [
        ("edge_leq_table", f"{len(elems)} labels", (codes,)),
        ("find_intransitive", f"{leq.shape[0]}^3 triples", (np.ascontiguousarray(leq),)),
        ("chain_counts", f"{P.size} elements", (indptr, indices, order, h)),
        ("enumerate_chains", f"{total} chains", (indptr, indices, P.size, total, h)),
        ("reduce_columns", f"{bd.shape[0]}x{bd.shape[1]} boundary",
         (bd.indptr.astype(np.int64), bd.indices.astype(np.int64), bd.data.astype(np.int64), bd.shape[0],
          np.zeros(bd.shape[1], dtype=np.bool_))),
    ]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--n", type=int, default=3, help="number of colours")
    args = ap.parse_args()

    if not kernels.HAVE_NUMBA:
        print("numba unavailable (or OPERAD_FORGE_NUMBA=0): timing the fallback only")
    print(f"{'kernel':<18} {'workload':<24} {'numba s':>10} {'fallback s':>11} {'speedup':>8}  agree")
    for name, desc, inputs in workloads(args.n):
        fast, slow = kernels.IMPLEMENTATIONS[name]
        t_slow, r_slow = best_of(slow, inputs, args.repeat)
        if fast is None:
            print(f"{name:<18} {desc:<24} {'-':>10} {t_slow:>11.4f} {'-':>8}  -")
            continue
        fast(*inputs)   # compile
        t_fast, r_fast = best_of(fast, inputs, args.repeat)
        print(f"{name:<18} {desc:<24} {t_fast:>10.4f} {t_slow:>11.4f} {t_slow / max(t_fast, 1e-9):>7.1f}x  "
              f"{'yes' if same(r_fast, r_slow, name == 'enumerate_chains') else 'NO'}")


if __name__ == "__main__":
    main()
