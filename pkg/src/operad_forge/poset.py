"""Finite posets stored as full ``<=`` tables.

Sizes in this package stay at a few thousand elements, so a dense boolean
table is both the simplest and the fastest representation for nerve building.
"""

import json
from typing import Callable, Hashable, Iterable, Optional, Sequence

import numpy as np

from . import kernels


class PosetError(ValueError):
    pass


class FinPoset:
    """A finite partial order on ``range(size)``.

    ``labels`` optionally names the elements (any hashables); algorithms only
    ever look at indices.
    """

    __slots__ = ("leq", "labels", "_index", "_order")

    def __init__(self, leq, labels: Optional[Sequence[Hashable]] = None, check: bool = True):
        leq = np.array(leq, dtype=bool, copy=True)
        if leq.ndim != 2 or leq.shape[0] != leq.shape[1]:
            raise PosetError("leq must be a square table")
        if labels is not None:
            labels = tuple(labels)
            if len(labels) != leq.shape[0]:
                raise PosetError("one label per element required")
        if check:
            _check_partial_order(leq)
        leq.setflags(write=False)
        self.leq = leq
        self.labels = labels
        self._index = None
        self._order = None

    # -- construction -----------------------------------------------------

    @classmethod
    def from_relation(cls, size: int, pairs: Iterable, labels=None) -> "FinPoset":
        """Transitive closure of the given ``(i, j)`` pairs meaning i <= j."""
        leq = np.eye(size, dtype=bool)
        for i, j in pairs:
            leq[int(i), int(j)] = True
        for k in range(size):
            leq |= leq[:, k:k + 1] & leq[k:k + 1, :]
        return cls(leq, labels)

    @classmethod
    def from_elements(cls, elements: Sequence, leq: Callable, check: bool = True) -> "FinPoset":
        n = len(elements)
        table = np.zeros((n, n), dtype=bool)
        for i, x in enumerate(elements):
            for j, y in enumerate(elements):
                table[i, j] = bool(leq(x, y))
        return cls(table, elements, check=check)

    @classmethod
    def chain(cls, n: int) -> "FinPoset":
        return cls(np.triu(np.ones((n, n), dtype=bool)))

    @classmethod
    def antichain(cls, n: int) -> "FinPoset":
        return cls(np.eye(n, dtype=bool))

    # -- basics -----------------------------------------------------------

    @property
    def size(self) -> int:
        return self.leq.shape[0]

    def __len__(self):
        return self.size

    def __repr__(self):
        return f"FinPoset(size={self.size}, relations={int(self.leq.sum()) - self.size})"

    def index(self, label) -> int:
        if self.labels is None:
            return int(label)
        if self._index is None:
            self._index = {x: i for i, x in enumerate(self.labels)}
        return self._index[label]

    def label(self, i: int):
        return i if self.labels is None else self.labels[i]

    def strict(self) -> np.ndarray:
        return self.leq & ~np.eye(self.size, dtype=bool)

    def linear_extension(self) -> np.ndarray:
        """Indices sorted so that every element follows all elements below it."""
        if self._order is None:
            below = self.leq.sum(axis=0)
            self._order = np.argsort(below, kind="stable")
        return self._order

    def up_csr(self):
        strict = self.strict()
        indptr = np.zeros(self.size + 1, dtype=np.int64)
        indptr[1:] = np.cumsum(strict.sum(axis=1))
        indices = np.nonzero(strict)[1].astype(np.int64)
        return indptr, indices

    def height(self) -> int:
        """Number of elements in a longest chain."""
        if self.size == 0:
            return 0
        longest = np.ones(self.size, dtype=np.int64)
        strict = self.strict()
        for x in self.linear_extension()[::-1]:
            up = np.flatnonzero(strict[x])
            if up.size:
                longest[x] = 1 + longest[up].max()
        return int(longest.max())

    def subposet(self, indices: Sequence[int]) -> "FinPoset":
        idx = np.asarray(list(indices), dtype=np.int64)
        labels = None if self.labels is None else [self.labels[i] for i in idx]
        return FinPoset(self.leq[np.ix_(idx, idx)], labels, check=False)

    def components(self) -> list:
        """Connected components of the comparability graph, as sorted index lists."""
        adj = self.leq | self.leq.T
        seen = np.zeros(self.size, dtype=bool)
        comps = []
        for s in range(self.size):
            if seen[s]:
                continue
            comp = [s]
            seen[s] = True
            frontier = [s]
            while frontier:
                nxt = []
                for x in frontier:
                    for y in np.flatnonzero(adj[x] & ~seen):
                        seen[y] = True
                        nxt.append(int(y))
                comp.extend(nxt)
                frontier = nxt
            comps.append(sorted(comp))
        return comps

    def relabelled(self, perm: Sequence[int]) -> "FinPoset":
        """Isomorphic copy in which old element i becomes element ``perm[i]``."""
        perm = np.asarray(perm, dtype=np.int64)
        inv = np.empty_like(perm)
        inv[perm] = np.arange(len(perm))
        labels = None if self.labels is None else [self.labels[i] for i in inv]
        return FinPoset(self.leq[np.ix_(inv, inv)], labels, check=False)

    def is_order_preserving(self, mapping: Sequence[int]) -> bool:
        m = np.asarray(mapping, dtype=np.int64)
        return bool(np.all(~self.leq | self.leq[np.ix_(m, m)]))

    # -- serialization ----------------------------------------------------

    def to_json(self) -> dict:
        ii, jj = np.nonzero(self.strict())
        return {"size": self.size, "leq": [[int(i), int(j)] for i, j in zip(ii, jj)]}

    @classmethod
    def from_json(cls, data) -> "FinPoset":
        if isinstance(data, str):
            data = json.loads(data)
        return cls.from_relation(int(data["size"]), data.get("leq", []))


def _check_partial_order(leq: np.ndarray) -> None:
    n = leq.shape[0]
    if not np.all(np.diag(leq)):
        i = int(np.flatnonzero(~np.diag(leq))[0])
        raise PosetError(f"not reflexive at element {i}")
    both = leq & leq.T
    np.fill_diagonal(both, False)
    if both.any():
        i, j = (int(v) for v in np.argwhere(both)[0])
        raise PosetError(f"not antisymmetric: {i} <= {j} <= {i}")
    if n:
        bad = kernels.find_intransitive(leq)
        if bad is not None:
            raise PosetError("not transitive: %d <= %d <= %d but not %d <= %d" % (*bad, bad[0], bad[2]))


class Z2Poset:
    """A poset with an order-preserving involution (a Z/2-poset)."""

    __slots__ = ("poset", "swap")

    def __init__(self, poset: FinPoset, swap: Sequence[int]):
        swap = np.asarray(swap, dtype=np.int64)
        if swap.shape != (poset.size,):
            raise PosetError("swap must map every element")
        if poset.size and not np.array_equal(swap[swap], np.arange(poset.size)):
            raise PosetError("swap is not an involution")
        if not poset.is_order_preserving(swap):
            raise PosetError("swap does not preserve the order")
        self.poset = poset
        self.swap = swap

    @property
    def size(self) -> int:
        return self.poset.size

    def is_free(self) -> bool:
        return not np.any(self.swap == np.arange(self.size))

    def __repr__(self):
        return f"Z2Poset(size={self.size}, free={self.is_free()})"


def ordinal_join(p, q):
    """Ordinal sum: disjoint union with every element of ``p`` below every
    element of ``q``.

    Accepts plain :class:`FinPoset` or :class:`Z2Poset`; in the second case the
    involutions act componentwise.  The nerve of the result is the simplicial
    join of the two nerves.
    """
    if isinstance(p, Z2Poset) != isinstance(q, Z2Poset):
        raise TypeError("join a Z2Poset with a Z2Poset, or a FinPoset with a FinPoset")
    pp = p.poset if isinstance(p, Z2Poset) else p
    qq = q.poset if isinstance(q, Z2Poset) else q
    a, b = pp.size, qq.size
    leq = np.zeros((a + b, a + b), dtype=bool)
    leq[:a, :a] = pp.leq
    leq[a:, a:] = qq.leq
    leq[:a, a:] = True
    labels = None
    if pp.labels is not None or qq.labels is not None:
        labels = [("L", pp.label(i)) for i in range(a)] + [("R", qq.label(j)) for j in range(b)]
    joined = FinPoset(leq, labels, check=False)
    if isinstance(p, Z2Poset):
        return Z2Poset(joined, np.concatenate([p.swap, q.swap + a]))
    return joined


def has_greatest_element(p: FinPoset) -> Optional[int]:
    """Index of the top element, if there is one."""
    tops = np.flatnonzero(p.leq.all(axis=0))
    return int(tops[0]) if tops.size else None


def has_least_element(p: FinPoset) -> Optional[int]:
    bots = np.flatnonzero(p.leq.all(axis=1))
    return int(bots[0]) if bots.size else None


def action_fixed_points(elements, act: Callable, g, poset: Optional[FinPoset] = None) -> list:
    """Elements ``x`` with ``act(x, g) == x``.

    When a poset on ``elements`` is supplied, the action by ``g`` must be an
    order automorphism; otherwise :class:`PosetError` is raised.
    """
    elements = list(elements)
    images = [act(x, g) for x in elements]
    if poset is not None:
        pos = {x: i for i, x in enumerate(elements)}
        try:
            mapping = [pos[y] for y in images]
        except KeyError as exc:
            raise PosetError(f"action leaves the carrier: {exc.args[0]!r}") from None
        if not poset.is_order_preserving(mapping):
            raise PosetError("action is not order preserving")
    return [x for x, y in zip(elements, images) if x == y]


def beat_point_core(p: FinPoset) -> list:
    """Indices of a core of ``p`` obtained by repeatedly deleting beat points.

    ``x`` is an up (down) beat point when the elements strictly above (below)
    it have a minimum (maximum).  Deleting one is a strong deformation retract
    of the associated finite space, so the nerve keeps its homotopy type.
    """
    alive = np.ones(p.size, dtype=bool)
    strict = p.strict()
    changed = True
    while changed:
        changed = False
        for x in range(p.size):
            if not alive[x]:
                continue
            for upward in (True, False):
                rel = strict[x] if upward else strict[:, x]
                cand = np.flatnonzero(rel & alive)
                if cand.size == 0:
                    continue
                sub = p.leq[np.ix_(cand, cand)]
                # up beat point: some candidate is below all others (down: above all)
                extremal = sub.all(axis=1) if upward else sub.all(axis=0)
                if extremal.any():
                    alive[x] = False
                    changed = True
                    break
    return [int(i) for i in np.flatnonzero(alive)]
