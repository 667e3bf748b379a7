"""The numba kernels and their fallbacks must agree bit for bit."""

import numpy as np
import pytest

from operad_forge import kernels
from operad_forge.graphs import KHatOperad, codes_array
from operad_forge.poset import FinPoset

pytestmark = pytest.mark.skipif(not kernels.HAVE_NUMBA, reason="numba backend disabled")


def pair(name):
    return kernels.IMPLEMENTATIONS[name]


@pytest.fixture(scope="module")
def carrier():
    return KHatOperad(2).carrier(3)


def test_edge_leq(carrier):
    codes = np.ascontiguousarray(codes_array(KHatOperad(3).elements(3)), dtype=np.int8)
    fast, slow = pair("edge_leq_table")
    assert np.array_equal(fast(codes), slow(codes))


def test_intransitive():
    fast, slow = pair("find_intransitive")
    leq = np.eye(3, dtype=np.bool_)
    leq[0, 1] = leq[1, 2] = True
    assert tuple(fast(leq)) == tuple(slow(leq))
    assert tuple(fast(leq))[0] >= 0
    leq[0, 2] = True
    assert fast(leq)[0] < 0 and slow(leq)[0] < 0


def test_chains(carrier):
    indptr, indices = carrier.up_csr()
    order = carrier.linear_extension().astype(np.int64)
    h = carrier.height()
    fast, slow = pair("chain_counts")
    counts = fast(indptr, indices, order, h)
    assert np.array_equal(counts, slow(indptr, indices, order, h))
    total = int(counts.sum())
    fast, slow = pair("enumerate_chains")
    a, la = fast(indptr, indices, carrier.size, total, h)
    b, lb = slow(indptr, indices, carrier.size, total, h)
    assert sorted(map(tuple, a.tolist())) == sorted(map(tuple, b.tolist()))


def test_reduce_columns_random():
    rng = np.random.default_rng(5)
    fast, slow = pair("reduce_columns")
    for _ in range(30):
        dense = rng.choice([-1, 0, 0, 0, 1, 2], size=(12, 15))
        cols = [np.nonzero(dense[:, j])[0] for j in range(15)]
        indptr = np.concatenate([[0], np.cumsum([len(c) for c in cols])]).astype(np.int64)
        indices = np.concatenate(cols).astype(np.int64)
        data = np.concatenate([dense[c, j] for j, c in enumerate(cols)]).astype(np.int64)
        skip = np.zeros(15, dtype=np.bool_)
        ra = fast(indptr, indices, data, 12, skip)
        rb = slow(indptr, indices, data, 12, skip)
        assert ra[2] == rb[2]
        if ra[2] == kernels.REDUCE_OK:
            assert ra[0] == rb[0]
            assert np.array_equal(ra[1], rb[1])


def test_poset_checks_use_kernel():
    p = FinPoset.chain(40)
    assert kernels.find_intransitive(p.leq) is None
