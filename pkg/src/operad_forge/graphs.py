"""Augmented complete-graph labellings and the poset operads they form.

An element of arity k stores one code per vertex pair a<b, pairs listed
lexicographically:

* ``0``  unlabelled (no orientation, no colour)
* ``+c`` oriented a -> b with colour c
* ``-c`` oriented b -> a with colour c

Vertices are 0-based internally and 1-based in JSON and in printed output.
"""

import json
import random
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations, product
from typing import Optional, Sequence

import numpy as np

from . import kernels
from .complex import BudgetExceeded
from .operad import PosetOperad
from .perm import Perm
from .poset import FinPoset

DEFAULT_ENUM_BUDGET = 2_000_000


@lru_cache(maxsize=None)
def pairs(k: int) -> tuple:
    return tuple(combinations(range(k), 2))


@lru_cache(maxsize=None)
def pair_index(k: int) -> dict:
    return {p: i for i, p in enumerate(pairs(k))}


def _npairs(k):
    return k * (k - 1) // 2


@dataclass(frozen=True)
class PartialGraphLabel:
    k: int
    n: int
    codes: tuple

    def __post_init__(self):
        codes = tuple(int(c) for c in self.codes)
        if len(codes) != _npairs(self.k):
            raise ValueError(f"need {_npairs(self.k)} edge codes for k={self.k}, got {len(codes)}")
        object.__setattr__(self, "codes", codes)

    @classmethod
    def unlabelled(cls, k: int, n: int) -> "PartialGraphLabel":
        return cls(k, n, (0,) * _npairs(k))

    @classmethod
    def from_edges(cls, k: int, n: int, edges) -> "PartialGraphLabel":
        """``edges``: iterable of (source, target, colour), 1-based vertices."""
        codes = [0] * _npairs(k)
        idx = pair_index(k)
        for s, t, c in edges:
            s, t = s - 1, t - 1
            if s == t or not (0 <= s < k and 0 <= t < k):
                raise ValueError(f"bad edge {s + 1}->{t + 1}")
            a, b = min(s, t), max(s, t)
            if codes[idx[a, b]]:
                raise ValueError(f"edge {{{a + 1},{b + 1}}} labelled twice")
            codes[idx[a, b]] = c if s < t else -c
        return cls(k, n, tuple(codes))

    @classmethod
    def from_order(cls, order: Sequence[int], colours: Sequence[int], n: int) -> "PartialGraphLabel":
        """Total labelling from a linear order (0-based vertices, first = source
        of everything) and one colour per pair, pairs in lexicographic order."""
        k = len(order)
        rank = {v: r for r, v in enumerate(order)}
        codes = tuple(c if rank[a] < rank[b] else -c for (a, b), c in zip(pairs(k), colours))
        return cls(k, n, codes)

    def code(self, a: int, b: int) -> int:
        """Code of the pair read from a to b (0-based, either order)."""
        if a < b:
            return self.codes[pair_index(self.k)[a, b]]
        return -self.codes[pair_index(self.k)[b, a]]

    def edges(self) -> list:
        """Labelled edges as (source, target, colour), 0-based."""
        out = []
        for (a, b), c in zip(pairs(self.k), self.codes):
            if c > 0:
                out.append((a, b, c))
            elif c < 0:
                out.append((b, a, -c))
        return out

    def is_total(self) -> bool:
        return all(self.codes)

    def to_json(self) -> dict:
        edges = []
        for (a, b), c in zip(pairs(self.k), self.codes):
            if c:
                edges.append({"a": a + 1, "b": b + 1, "dir": "ab" if c > 0 else "ba", "color": abs(c)})
        return {"k": self.k, "n": self.n, "edges": edges}

    @classmethod
    def from_json(cls, data) -> "PartialGraphLabel":
        if isinstance(data, str):
            data = json.loads(data)
        k, n = int(data["k"]), int(data["n"])
        codes = [0] * _npairs(k)
        idx = pair_index(k)
        for e in data.get("edges", []):
            a, b = int(e["a"]) - 1, int(e["b"]) - 1
            if a > b:
                a, b = b, a
                direction = {"ab": "ba", "ba": "ab"}[e["dir"]]
            else:
                direction = e["dir"]
            c = int(e["color"])
            codes[idx[a, b]] = c if direction == "ab" else -c
        return cls(k, n, tuple(codes))

    def __str__(self):
        parts = [f"{s + 1}->{t + 1}:{c}" for s, t, c in self.edges()]
        return f"K^({self.n})({self.k})[{' '.join(parts) or 'unlabelled'}]"


# ---------------------------------------------------------------------------
# predicates


def is_acyclic(k: int, codes: Sequence[int]) -> bool:
    """Kahn's algorithm on the labelled edges."""
    indeg = [0] * k
    out = [[] for _ in range(k)]
    for (a, b), c in zip(pairs(k), codes):
        if c > 0:
            out[a].append(b)
            indeg[b] += 1
        elif c < 0:
            out[b].append(a)
            indeg[a] += 1
    ready = [v for v in range(k) if indeg[v] == 0]
    seen = 0
    while ready:
        v = ready.pop()
        seen += 1
        for w in out[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                ready.append(w)
    return seen == k


def khat_validate(x: PartialGraphLabel) -> bool:
    if x.n < 1 or x.k < 0:
        return False
    if any(abs(c) > x.n for c in x.codes):
        return False
    return is_acyclic(x.k, x.codes)


def k_validate(x: PartialGraphLabel) -> bool:
    return x.is_total() and khat_validate(x)


def linear_order(x: PartialGraphLabel) -> Optional[tuple]:
    """The vertex order encoded by a total labelling (0-based), or None when
    the tournament is not transitive."""
    if not x.is_total():
        return None
    wins = [0] * x.k
    for s, _, _ in x.edges():
        wins[s] += 1
    order = sorted(range(x.k), key=lambda v: -wins[v])
    if sorted(wins) != list(range(x.k)):
        return None
    return tuple(order)


def _edge_leq(x: int, y: int) -> bool:
    if x == 0:
        return y == 0
    if y == 0:
        return True
    if (x > 0) == (y > 0):
        return abs(y) >= abs(x)
    return abs(y) > abs(x)


def khat_leq(x: PartialGraphLabel, y: PartialGraphLabel) -> bool:
    if x.k != y.k or x.n != y.n:
        raise ValueError(f"cannot compare arity/filtration ({x.k},{x.n}) with ({y.k},{y.n})")
    return all(_edge_leq(a, b) for a, b in zip(x.codes, y.codes))


# ---------------------------------------------------------------------------
# operad structure


@lru_cache(maxsize=4096)
def _compose_plan(sizes: tuple):
    """For every output pair: ('in', block, inner pair index) or ('out', outer pair index)."""
    k = len(sizes)
    block, local = [], []
    for i, m in enumerate(sizes):
        block.extend([i] * m)
        local.extend(range(m))
    total = len(block)
    outer_idx = pair_index(k)
    plan = []
    for u, v in pairs(total):
        p, q = block[u], block[v]
        if p == q:
            plan.append((p, pair_index(sizes[p])[local[u], local[v]]))
        else:
            plan.append((-1, outer_idx[p, q]))
    return total, tuple(plan)


def khat_compose(outer: PartialGraphLabel, inners: Sequence[PartialGraphLabel]) -> PartialGraphLabel:
    if len(inners) != outer.k:
        raise ValueError(f"outer has arity {outer.k} but {len(inners)} inputs were given")
    for y in inners:
        if y.n != outer.n:
            raise ValueError("filtration mismatch in composition")
    total, plan = _compose_plan(tuple(y.k for y in inners))
    oc = outer.codes
    codes = tuple(oc[i] if p < 0 else inners[p].codes[i] for p, i in plan)
    return PartialGraphLabel(total, outer.n, codes)


def khat_sigma(x: PartialGraphLabel, g: Perm) -> PartialGraphLabel:
    """Move vertex a to vertex g(a)."""
    if g.k != x.k:
        raise ValueError("permutation degree differs from arity")
    idx = pair_index(x.k)
    codes = [0] * len(x.codes)
    for (a, b), c in zip(pairs(x.k), x.codes):
        ga, gb = g(a), g(b)
        if ga < gb:
            codes[idx[ga, gb]] = c
        else:
            codes[idx[gb, ga]] = -c
    return PartialGraphLabel(x.k, x.n, tuple(codes))


def khat_degeneracy(x: PartialGraphLabel, i: int) -> PartialGraphLabel:
    """Delete vertex ``i`` (0-based) and every edge touching it."""
    if not 0 <= i < x.k:
        raise ValueError(f"no input {i + 1} in arity {x.k}")
    codes = tuple(c for (a, b), c in zip(pairs(x.k), x.codes) if a != i and b != i)
    return PartialGraphLabel(x.k - 1, x.n, codes)


def khat_unit(n: int) -> PartialGraphLabel:
    return PartialGraphLabel(1, n, ())


# ---------------------------------------------------------------------------
# enumeration


def _code_alphabet(n: int, total: bool) -> list:
    out = [] if total else [0]
    for c in range(1, n + 1):
        out.extend((c, -c))
    return out


def khat_count_bound(n: int, k: int, total: bool = False) -> int:
    return (2 * n + (0 if total else 1)) ** _npairs(k)


def khat_enumerate(n: int, k: int, budget: int = DEFAULT_ENUM_BUDGET, total: bool = False) -> list:
    """All valid elements of arity k, in canonical order.

    Canonical order is lexicographic in the edge codes, each code ranked as
    0, +1, -1, +2, -2, ...
    """
    if n < 1 or k < 0:
        raise ValueError("need n >= 1 and k >= 0")
    bound = khat_count_bound(n, k, total)
    if bound > budget:
        raise BudgetExceeded(f"{bound} candidate labellings for n={n}, k={k}; budget is {budget}")
    alphabet = _code_alphabet(n, total)
    return [PartialGraphLabel(k, n, codes) for codes in product(alphabet, repeat=_npairs(k)) if is_acyclic(k, codes)]


def k_enumerate(n: int, k: int, budget: int = DEFAULT_ENUM_BUDGET) -> list:
    return khat_enumerate(n, k, budget, total=True)


def k_enumerate_by_orders(n: int, k: int) -> list:
    """Independent construction of K^(n)(k): linear orders times colourings."""
    out = set()
    for order in permutations(range(k)):
        for colours in product(range(1, n + 1), repeat=_npairs(k)):
            out.add(PartialGraphLabel.from_order(order, colours, n))
    return sorted(out, key=canonical_key)


def canonical_key(x: PartialGraphLabel) -> tuple:
    return tuple(2 * abs(c) - (c > 0) if c else 0 for c in x.codes)


def codes_array(elements: Sequence[PartialGraphLabel]) -> np.ndarray:
    if not elements:
        return np.zeros((0, 0), dtype=np.int8)
    return np.array([x.codes for x in elements], dtype=np.int8).reshape(len(elements), -1)


def khat_poset(elements: Sequence[PartialGraphLabel], check: bool = True) -> FinPoset:
    """The carrier poset, built with the vectorised comparison kernel."""
    return FinPoset(kernels.edge_leq_table(codes_array(elements)), elements, check=check)


def sigma_on_codes(codes: np.ndarray, k: int, g: Perm) -> np.ndarray:
    """Vectorised :func:`khat_sigma` over many rows at once."""
    idx = pair_index(k)
    out = np.empty_like(codes)
    for t, (a, b) in enumerate(pairs(k)):
        ga, gb = g(a), g(b)
        if ga < gb:
            out[:, idx[ga, gb]] = codes[:, t]
        else:
            out[:, idx[gb, ga]] = -codes[:, t]
    return out


def fixed_point_rows(codes: np.ndarray, k: int, g: Perm) -> np.ndarray:
    """Row indices fixed by ``g``."""
    if codes.shape[0] == 0:
        return np.zeros(0, dtype=np.int64)
    moved = sigma_on_codes(codes, k, g)
    return np.flatnonzero(np.all(moved == codes, axis=1))


# ---------------------------------------------------------------------------
# colour splitting for the product filtration K^(m+n) -> K^(m), K^(n)


def split_colours(x: PartialGraphLabel, m: int) -> tuple:
    """Split an element of filtration m+n into its low part (colours 1..m,
    filtration m) and high part (colours m+1..m+n shifted down by m).

    Each edge lands in exactly one part; in the other it is unlabelled.
    """
    n = x.n - m
    if n < 1 or m < 1:
        raise ValueError(f"cannot split filtration {x.n} at {m}")
    low = tuple(c if 0 < abs(c) <= m else 0 for c in x.codes)
    high = tuple((c - m if c > 0 else c + m) if abs(c) > m else 0 for c in x.codes)
    return PartialGraphLabel(x.k, m, low), PartialGraphLabel(x.k, n, high)


def join_colours(low: PartialGraphLabel, high: PartialGraphLabel) -> PartialGraphLabel:
    """Inverse of :func:`split_colours`; edges labelled in both parts are an error."""
    if low.k != high.k:
        raise ValueError("arity mismatch")
    m = low.n
    codes = []
    for a, b in zip(low.codes, high.codes):
        if a and b:
            raise ValueError("edge labelled in both parts")
        codes.append(a if a else (b + m if b > 0 else b - m) if b else 0)
    return PartialGraphLabel(low.k, m + high.n, tuple(codes))


# ---------------------------------------------------------------------------
# operads


def random_label(k: int, n: int, rng: random.Random, total: bool = False, p_unlabelled: float = 0.3):
    order = list(range(k))
    rng.shuffle(order)
    rank = {v: r for r, v in enumerate(order)}
    codes = []
    for a, b in pairs(k):
        if not total and rng.random() < p_unlabelled:
            codes.append(0)
            continue
        c = rng.randint(1, n)
        codes.append(c if rank[a] < rank[b] else -c)
    return PartialGraphLabel(k, n, tuple(codes))


def random_above(x: PartialGraphLabel, rng: random.Random, total: bool = False, tries: int = 8):
    """A random y with x <= y, valid, total when ``total``."""
    codes = list(x.codes)
    for t in rng.sample(range(len(codes)), len(codes)):
        c = codes[t]
        if c == 0:
            continue
        options = []
        if not total:
            options.append(0)
        s = 1 if c > 0 else -1
        options += [s * j for j in range(abs(c), x.n + 1)]
        options += [-s * j for j in range(abs(c) + 1, x.n + 1)]
        for _ in range(tries):
            new = rng.choice(options)
            trial = codes[:t] + [new] + codes[t + 1:]
            if is_acyclic(x.k, trial):
                codes = trial
                break
    return PartialGraphLabel(x.k, x.n, tuple(codes))


class KHatOperad(PosetOperad):
    """K-hat^(n), or with ``total=True`` its suboperad K^(n)."""

    def __init__(self, n: int, total: bool = False, budget: int = DEFAULT_ENUM_BUDGET):
        super().__init__()
        if n < 1:
            raise ValueError("filtration index must be >= 1")
        self.n = n
        self.total = total
        self.budget = budget
        self.name = f"{'K' if total else 'Khat'}^({n})"
        self._elements = {}

    def unit(self):
        return khat_unit(self.n)

    def compose(self, x, ys):
        return khat_compose(x, ys)

    def act(self, x, g):
        return khat_sigma(x, g)

    def degeneracy(self, x, i):
        return khat_degeneracy(x, i)

    def leq(self, x, y):
        return khat_leq(x, y)

    def is_valid(self, x):
        return x.n == self.n and (k_validate(x) if self.total else khat_validate(x))

    def elements(self, k):
        if k not in self._elements:
            self._elements[k] = khat_enumerate(self.n, k, self.budget, self.total)
        return self._elements[k]

    def carrier(self, k):
        if k not in self._carriers:
            self._carriers[k] = khat_poset(self.elements(k))
        return self._carriers[k]

    def point(self):
        return PartialGraphLabel(0, self.n, ())

    def sample(self, k, rng):
        return random_label(k, self.n, rng, total=self.total)

    def sample_above(self, x, rng):
        return random_above(x, rng, total=self.total)


__all__ = [
    "PartialGraphLabel",
    "KHatOperad",
    "khat_validate",
    "k_validate",
    "khat_leq",
    "khat_compose",
    "khat_sigma",
    "khat_degeneracy",
    "khat_unit",
    "khat_enumerate",
    "k_enumerate",
    "k_enumerate_by_orders",
    "khat_poset",
    "linear_order",
    "split_colours",
    "join_colours",
    "fixed_point_rows",
    "codes_array",
    "pairs",
]
