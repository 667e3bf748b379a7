"""Right-adjoint operad constructions.

* ``R``  : edge labellings of complete graphs by a Z/2-set X.
* ``R1`` : the atomic operad of a monoid, R1M(k) = M^k.
* ``R2`` : labellings of the 1-skeleton of a simplex by a 2-truncated operad.

plus the unit maps A -> RUA, the checks that compare them, and the
finiteness obstruction for free Sigma_2 actions on A(2).

Trunc2Data convention: ``d1(c)`` is the restriction of ``c`` to its first
input (the second input is filled with the point of A(0)), ``d2(c)`` the
restriction to its second input.
"""

import csv
import io
import json
import random
from dataclasses import dataclass, field
from itertools import product
from pathlib import Path
from typing import Any, Callable, Optional, Sequence

import numpy as np

from .graphs import pairs, pair_index
from .operad import Operad, PosetOperad, iterated_degeneracy, operad_map_check
from .perm import Perm
from .poset import FinPoset

SWAP2 = Perm((1, 0))


# ---------------------------------------------------------------------------
# Z/2-sets


class Z2Set:
    """A finite set with an involution, optionally partially ordered."""

    def __init__(self, elements: Sequence, swap: Sequence[int], leq=None, free: Optional[bool] = None):
        self._elements = tuple(elements)
        self.swap = tuple(int(s) for s in swap)
        n = len(self._elements)
        if len(self.swap) != n or any(self.swap[self.swap[i]] != i for i in range(n)):
            raise ValueError("swap must be an involution of the carrier")
        self._index = {x: i for i, x in enumerate(self._elements)}
        if len(self._index) != n:
            raise ValueError("duplicate elements")
        if leq is None:
            leq = np.eye(n, dtype=bool)
        self.poset = FinPoset(leq, self._elements)
        if not self.poset.is_order_preserving(self.swap):
            raise ValueError("involution does not preserve the order")
        if free and not self.is_free():
            raise ValueError("declared free but the involution has a fixed point")

    @classmethod
    def s0(cls) -> "Z2Set":
        return cls(("+", "-"), (1, 0))

    @classmethod
    def free_on(cls, names: Sequence[str]) -> "Z2Set":
        """Free Z/2-set with elements x and x' for every name x."""
        elems = []
        for nm in names:
            elems += [nm, nm + "'"]
        swap = [i ^ 1 for i in range(len(elems))]
        return cls(elems, swap)

    @classmethod
    def from_operad(cls, op: Operad) -> "Z2Set":
        """U(op): the arity-2 carrier with the transposition action."""
        elems = op.elements(2)
        idx = {x: i for i, x in enumerate(elems)}
        swap = [idx[op.act(x, SWAP2)] for x in elems]
        leq = op.carrier(2).leq if hasattr(op, "carrier") else None
        return cls(elems, swap, leq)

    def elements(self) -> tuple:
        return self._elements

    def __len__(self):
        return len(self._elements)

    def index(self, x) -> int:
        return self._index[x]

    def bar(self, x):
        return self._elements[self.swap[self._index[x]]]

    def leq(self, x, y) -> bool:
        return bool(self.poset.leq[self._index[x], self._index[y]])

    def is_free(self) -> bool:
        return all(s != i for i, s in enumerate(self.swap))

    def sample(self, rng: random.Random):
        return self._elements[rng.randrange(len(self._elements))]

    def sample_above(self, x, rng: random.Random):
        ups = np.flatnonzero(self.poset.leq[self._index[x]])
        return self._elements[int(ups[rng.randrange(ups.size)])]

    def to_json(self) -> dict:
        return {"elements": [_plain(x) for x in self._elements], "swap": list(self.swap)}

    @classmethod
    def from_json(cls, data) -> "Z2Set":
        if isinstance(data, str):
            data = json.loads(data)
        elems = [tuple(x) if isinstance(x, list) else x for x in data["elements"]]
        swap = data["swap"]
        if swap and not isinstance(swap[0], int):
            pos = {x: i for i, x in enumerate(elems)}
            swap = [pos[s] for s in swap]
        return cls(elems, swap)


class OperadArity2:
    """U(op) for operads without an enumerable arity-2 carrier (little cubes)."""

    def __init__(self, op: Operad):
        self.op = op

    def bar(self, x):
        return self.op.act(x, SWAP2)

    def leq(self, x, y) -> bool:
        return self.op.leq(x, y)

    def elements(self):
        return tuple(self.op.elements(2))

    def sample(self, rng):
        return self.op.sample(2, rng)

    def sample_above(self, x, rng):
        return self.op.sample_above(x, rng)


def _plain(x):
    if hasattr(x, "to_json"):
        return x.to_json()
    if isinstance(x, tuple):
        return [_plain(v) for v in x]
    return x


# ---------------------------------------------------------------------------
# R X


@dataclass(frozen=True)
class REdgeLabelling:
    """Labels f(a, b) for a < b; f(b, a) is the involution of f(a, b)."""

    k: int
    labels: tuple

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        if len(self.labels) != self.k * (self.k - 1) // 2:
            raise ValueError(f"arity {self.k} needs {self.k * (self.k - 1) // 2} labels")

    def label(self, a: int, b: int, X=None):
        """f(a, b), 0-based; reading against the natural order needs ``X``."""
        if a < b:
            return self.labels[pair_index(self.k)[a, b]]
        if X is None:
            raise ValueError("reading an edge backwards needs the involution")
        return X.bar(self.labels[pair_index(self.k)[b, a]])

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "labels": [{"a": a + 1, "b": b + 1, "label": _plain(f)} for (a, b), f in zip(pairs(self.k), self.labels)],
        }


def r_compose(outer: REdgeLabelling, inners: Sequence[REdgeLabelling]) -> REdgeLabelling:
    """Within-block edges from the inners, cross-block edges from the outer."""
    if len(inners) != outer.k:
        raise ValueError(f"outer has arity {outer.k} but {len(inners)} inputs were given")
    block, local = [], []
    for i, y in enumerate(inners):
        block.extend([i] * y.k)
        local.extend(range(y.k))
    total = len(block)
    oidx = pair_index(outer.k)
    labels = []
    for u, v in pairs(total):
        p, q = block[u], block[v]
        if p == q:
            labels.append(inners[p].labels[pair_index(inners[p].k)[local[u], local[v]]])
        else:
            labels.append(outer.labels[oidx[p, q]])
    return REdgeLabelling(total, tuple(labels))


def r_sigma(x: REdgeLabelling, g: Perm, X) -> REdgeLabelling:
    """Move vertex a to g(a); edges turned against the natural order get the
    involution of their label."""
    if g.k != x.k:
        raise ValueError("permutation degree differs from arity")
    idx = pair_index(x.k)
    labels = [None] * len(x.labels)
    for (a, b), f in zip(pairs(x.k), x.labels):
        ga, gb = g(a), g(b)
        if ga < gb:
            labels[idx[ga, gb]] = f
        else:
            labels[idx[gb, ga]] = X.bar(f)
    return REdgeLabelling(x.k, tuple(labels))


def r_degeneracy(x: REdgeLabelling, i: int) -> REdgeLabelling:
    keep = tuple(f for (a, b), f in zip(pairs(x.k), x.labels) if a != i and b != i)
    return REdgeLabelling(x.k - 1, keep)


class ROperad(PosetOperad):
    """R X for a Z/2-set (or Z/2-poset) X."""

    def __init__(self, X, name: str = "R(X)"):
        super().__init__()
        self.X = X
        self.name = name
        self._cache = {}

    def unit(self):
        return REdgeLabelling(1, ())

    def point(self):
        return REdgeLabelling(0, ())

    def compose(self, x, ys):
        return r_compose(x, ys)

    def act(self, x, g):
        return r_sigma(x, g, self.X)

    def degeneracy(self, x, i):
        return r_degeneracy(x, i)

    def leq(self, x, y):
        return x.k == y.k and all(self.X.leq(a, b) for a, b in zip(x.labels, y.labels))

    def is_valid(self, x):
        elems = set(self.X.elements())
        return all(f in elems for f in x.labels)

    def elements(self, k):
        if k not in self._cache:
            e = k * (k - 1) // 2
            self._cache[k] = [REdgeLabelling(k, labs) for labs in product(self.X.elements(), repeat=e)]
        return self._cache[k]

    def carrier(self, k):
        if k not in self._carriers:
            elems = self.elements(k)
            xs = self.X.elements()
            xleq = np.array([[self.X.leq(a, b) for b in xs] for a in xs], dtype=bool)
            pos = {x: i for i, x in enumerate(xs)}
            codes = np.array([[pos[f] for f in x.labels] for x in elems], dtype=np.int64).reshape(len(elems), -1)
            table = np.ones((len(elems), len(elems)), dtype=bool)
            for t in range(codes.shape[1]):
                table &= xleq[codes[:, t][:, None], codes[:, t][None, :]]
            self._carriers[k] = FinPoset(table, elems)
        return self._carriers[k]

    def sample(self, k, rng):
        return REdgeLabelling(k, tuple(self.X.sample(rng) for _ in range(k * (k - 1) // 2)))

    def sample_above(self, x, rng):
        return REdgeLabelling(x.k, tuple(self.X.sample_above(f, rng) for f in x.labels))


def ru_operad(op: Operad, name: Optional[str] = None) -> ROperad:
    """R U op, over the enumerated arity-2 carrier when there is one."""
    try:
        X = Z2Set.from_operad(op)
    except NotImplementedError:
        X = OperadArity2(op)
    return ROperad(X, name or f"RU({op.name})")


def r_unit_map(op: Operad, a) -> REdgeLabelling:
    """A(k) -> (RUA)(k): edge {i, j} gets ``a`` with every other input degenerated."""
    k = op.arity(a)
    return REdgeLabelling(k, tuple(iterated_degeneracy(op, a, (i, j)) for i, j in pairs(k)))


@dataclass
class NonclosureResult:
    lhs: REdgeLabelling
    rhs: REdgeLabelling
    equal: bool
    differing_edges: list

    def to_json(self) -> dict:
        return {
            "lhs": self.lhs.to_json(),
            "rhs": self.rhs.to_json(),
            "equal": self.equal,
            "differing_edges": [[a + 1, b + 1] for a, b in self.differing_edges],
        }


def ru_nonclosure_check(op: Operad, x, ys) -> NonclosureResult:
    """Chase (x; ys) both ways around  A^(1+k) -> A,  A -> RUA."""
    lhs = r_unit_map(op, op.compose(x, ys))
    rhs = r_compose(r_unit_map(op, x), [r_unit_map(op, y) for y in ys])
    diff = [p for p, f, g in zip(pairs(lhs.k), lhs.labels, rhs.labels) if f != g]
    return NonclosureResult(lhs, rhs, lhs == rhs, diff)


def r_unit_map_checks(op: Operad, max_arity: int = 3, **kw) -> list:
    """The unit A -> RUA commutes with the action and with degeneracies."""
    target = ru_operad(op)
    res = operad_map_check(op, target, lambda a: r_unit_map(op, a), max_arity, **kw)
    # only the preoperad part is claimed
    return [r for r in res if r.name == "map_preoperad"]


def ru_idempotency_check(op: Operad, max_arity: int = 3) -> dict:
    """RU(RU A) and RU A agree on carriers: an arity-2 element of RUA is just
    an element of A(2), so forgetting that wrapping is a bijection commuting
    with composition and the action."""
    once = ru_operad(op)
    twice = ru_operad(once)
    unwrap = lambda x: REdgeLabelling(x.k, tuple(f.labels[0] for f in x.labels))
    counts = {}
    ok = True
    for k in range(max_arity + 1):
        a, b = once.elements(k), twice.elements(k)
        image = {unwrap(x) for x in b}
        same = len(a) == len(b) and image == set(a)
        counts[k] = (len(a), len(b))
        ok &= same
    maps = operad_map_check(twice, once, unwrap, max_arity)
    ok &= all(r.passed for r in maps)
    return {"passed": bool(ok), "counts": counts, "map_checks": [r.to_json() for r in maps]}


# ---------------------------------------------------------------------------
# monoids and R1


class MonoidM:
    """A finite monoid given by its Cayley table."""

    def __init__(self, elements: Sequence[str], table, check: bool = True):
        self.elements = tuple(elements)
        self._index = {x: i for i, x in enumerate(self.elements)}
        n = len(self.elements)
        rows = []
        for row in table:
            rows.append(tuple(self._index[v] if not isinstance(v, (int, np.integer)) else int(v) for v in row))
        if len(rows) != n or any(len(r) != n for r in rows):
            raise ValueError("Cayley table must be square over the elements")
        self.table = tuple(rows)
        self.unit_index = self._find_unit()
        if check:
            self.check()

    def _find_unit(self):
        n = len(self.elements)
        for e in range(n):
            if all(self.table[e][x] == x and self.table[x][e] == x for x in range(n)):
                return e
        raise ValueError("monoid has no two-sided unit")

    def check(self):
        n = len(self.elements)
        for a, b, c in product(range(n), repeat=3):
            if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]]:
                e = self.elements
                raise ValueError(f"not associative at ({e[a]}, {e[b]}, {e[c]})")

    @property
    def unit(self):
        return self.elements[self.unit_index]

    def mul(self, x, y):
        return self.elements[self.table[self._index[x]][self._index[y]]]

    def power(self, x, m: int):
        out = self.unit
        for _ in range(m):
            out = self.mul(out, x)
        return out

    def __len__(self):
        return len(self.elements)

    @classmethod
    def cyclic(cls, n: int) -> "MonoidM":
        names = ["1"] + [f"a{i}" if i > 1 else "a" for i in range(1, n)]
        return cls(names, [[(i + j) % n for j in range(n)] for i in range(n)])

    @classmethod
    def idempotent(cls) -> "MonoidM":
        """{1, a} with a*a = a."""
        return cls(["1", "a"], [["1", "a"], ["a", "a"]])

    @classmethod
    def trivial(cls) -> "MonoidM":
        return cls(["1"], [["1"]])

    @classmethod
    def from_csv(cls, source) -> "MonoidM":
        """Cayley table CSV: header row ``*,e1,e2,...``, then one row per element."""
        if isinstance(source, Path) or (isinstance(source, str) and "\n" not in source and Path(source).exists()):
            source = Path(source).read_text()
        elif hasattr(source, "read"):
            source = source.read()
        rows = [r for r in csv.reader(io.StringIO(source)) if any(c.strip() for c in r)]
        header = [c.strip() for c in rows[0][1:]]
        body = {r[0].strip(): [c.strip() for c in r[1:]] for r in rows[1:]}
        if set(body) != set(header):
            raise ValueError("row labels must match the header")
        return cls(header, [body[x] for x in header])

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["*"] + list(self.elements))
        for i, x in enumerate(self.elements):
            w.writerow([x] + [self.elements[j] for j in self.table[i]])
        return buf.getvalue()


def r1_compose(M: MonoidM, m: Sequence, xs: Sequence[Sequence]) -> tuple:
    """(m_1..m_k; x_11..x_1i_1, ...) -> (m_1 x_11, ..., m_k x_ki_k)."""
    if len(m) != len(xs):
        raise ValueError("one inner tuple per entry of the outer tuple")
    return tuple(M.mul(mj, x) for mj, block in zip(m, xs) for x in block)


def r1_sigma(m: tuple, g: Perm) -> tuple:
    out = [None] * len(m)
    for i, v in enumerate(m):
        out[g(i)] = v
    return tuple(out)


class R1Operad(PosetOperad):
    """R1 M with the discrete order.  Elements are plain tuples of monoid elements."""

    def __init__(self, M: MonoidM, name: str = "R1(M)"):
        super().__init__()
        self.M = M
        self.name = name

    def arity(self, x):
        return len(x)

    def unit(self):
        return (self.M.unit,)

    def point(self):
        return ()

    def compose(self, x, ys):
        return r1_compose(self.M, x, ys)

    def act(self, x, g):
        return r1_sigma(x, g)

    def degeneracy(self, x, i):
        return x[:i] + x[i + 1:]

    def is_valid(self, x):
        return all(v in self.M._index for v in x)

    def elements(self, k):
        return [tuple(t) for t in product(self.M.elements, repeat=k)]

    def sample(self, k, rng):
        return tuple(rng.choice(self.M.elements) for _ in range(k))


# ---------------------------------------------------------------------------
# 2-truncated operads and R2


@dataclass
class Trunc2Data:
    A1: MonoidM
    swap: Callable          # c -> c tau
    left: Callable          # (a, c) -> a.c
    right: Callable         # (c, (u, v)) -> c.(u, v)
    d: Callable             # c -> (d1(c), d2(c))
    A2: Optional[Sequence] = None
    name: str = "T2"

    def d1(self, c):
        return self.d(c)[0]

    def d2(self, c):
        return self.d(c)[1]

    def validate(self, samples: Optional[Sequence] = None) -> list:
        """Check the structure clauses over A2 (or ``samples``); returns violations."""
        M = self.A1
        A2 = list(self.A2 if samples is None else samples)
        ones = M.elements
        bad = []

        def note(clause, **ctx):
            if len(bad) < 20:
                bad.append({"clause": clause, **{k: repr(v) for k, v in ctx.items()}})

        for c in A2:
            tc = self.swap(c)
            if self.swap(tc) != c:
                note("swap is an involution", c=c)
            if self.left(M.unit, c) != c:
                note("left unit", c=c)
            if self.right(c, (M.unit, M.unit)) != c:
                note("right unit", c=c)
            d1, d2 = self.d(c)
            if self.d(tc) != (d2, d1):
                note("(d1,d2) is Z/2-equivariant", c=c)
            for a in ones:
                ac = self.left(a, c)
                # 1. left action, Z/2-equivariant
                if self.left(a, tc) != self.swap(ac):
                    note("left action commutes with swap", a=a, c=c)
                for b in ones:
                    if self.left(a, self.left(b, c)) != self.left(M.mul(a, b), c):
                        note("left action is associative", a=a, b=b, c=c)
                # 3. d and the left action
                if self.d(ac) != (M.mul(a, d1), M.mul(a, d2)):
                    note("(d1,d2) respects the left action", a=a, c=c)
            for u, v in product(ones, repeat=2):
                cuv = self.right(c, (u, v))
                # 2. right action: commutes with left, Z/2-equivariant
                if self.right(tc, (v, u)) != self.swap(cuv):
                    note("right action commutes with swap", c=c, u=u, v=v)
                for a in ones:
                    if self.left(a, cuv) != self.right(self.left(a, c), (u, v)):
                        note("left and right actions commute", a=a, c=c, u=u, v=v)
                for s, t in product(ones, repeat=2):
                    if self.right(cuv, (s, t)) != self.right(c, (M.mul(u, s), M.mul(v, t))):
                        note("right action is associative", c=c, u=u, v=v)
                # 4. d and the right action
                if self.d(cuv) != (M.mul(d1, u), M.mul(d2, v)):
                    note("(d1,d2) respects the right action", c=c, u=u, v=v)
        return bad

    def d_is_injective(self) -> Optional[bool]:
        if self.A2 is None:
            return None
        images = [self.d(c) for c in self.A2]
        return len(set(images)) == len(images)


def truncate2(op: Operad, name: Optional[str] = None) -> Trunc2Data:
    """T2 of an operad with enumerable arity-1 and arity-2 carriers."""
    ones = op.elements(1)
    idx = {x: i for i, x in enumerate(ones)}
    names = [str(i) for i in range(len(ones))]
    table = [[idx[op.compose(a, [b])] for b in ones] for a in ones]
    M = MonoidM(names, table)
    to_name = {x: names[i] for x, i in idx.items()}
    from_name = {names[i]: x for x, i in idx.items()}
    try:
        A2 = op.elements(2)
    except NotImplementedError:
        A2 = None
    return Trunc2Data(
        A1=M,
        swap=lambda c: op.act(c, SWAP2),
        left=lambda a, c: op.compose(from_name[a], [c]),
        right=lambda c, uv: op.compose(c, [from_name[uv[0]], from_name[uv[1]]]),
        d=lambda c: (to_name[op.degeneracy(c, 1)], to_name[op.degeneracy(c, 0)]),
        A2=A2,
        name=name or f"T2({op.name})",
    )


@dataclass(frozen=True)
class R2Element:
    vertices: tuple     # k labels in A1
    edges: tuple        # labels in A2 for pairs a < b, input 1 = a

    @property
    def k(self) -> int:
        return len(self.vertices)

    def to_json(self) -> dict:
        return {
            "vertices": [_plain(v) for v in self.vertices],
            "edges": [{"a": a + 1, "b": b + 1, "label": _plain(c)} for (a, b), c in zip(pairs(self.k), self.edges)],
        }


def r2_element_validate(t: Trunc2Data, el: R2Element) -> bool:
    """Every edge a<b labelled c restricts to vertex a via d1 and to b via d2."""
    k = len(el.vertices)
    if len(el.edges) != k * (k - 1) // 2:
        return False
    for (a, b), c in zip(pairs(k), el.edges):
        if t.d(c) != (el.vertices[a], el.vertices[b]):
            return False
    return True


def r2_compose(t: Trunc2Data, outer: R2Element, inners: Sequence[R2Element]) -> R2Element:
    if len(inners) != outer.k:
        raise ValueError("arity mismatch")
    M = t.A1
    block, local = [], []
    for i, y in enumerate(inners):
        block.extend([i] * y.k)
        local.extend(range(y.k))
    verts = tuple(M.mul(outer.vertices[p], inners[p].vertices[s]) for p, s in zip(block, local))
    oidx = pair_index(outer.k)
    edges = []
    for u, v in pairs(len(block)):
        p, q = block[u], block[v]
        if p == q:
            y = inners[p]
            edges.append(t.left(outer.vertices[p], y.edges[pair_index(y.k)[local[u], local[v]]]))
        else:
            edges.append(t.right(outer.edges[oidx[p, q]], (inners[p].vertices[local[u]], inners[q].vertices[local[v]])))
    return R2Element(verts, tuple(edges))


def r2_sigma(t: Trunc2Data, x: R2Element, g: Perm) -> R2Element:
    k = x.k
    verts = [None] * k
    for i, v in enumerate(x.vertices):
        verts[g(i)] = v
    idx = pair_index(k)
    edges = [None] * len(x.edges)
    for (a, b), c in zip(pairs(k), x.edges):
        ga, gb = g(a), g(b)
        if ga < gb:
            edges[idx[ga, gb]] = c
        else:
            edges[idx[gb, ga]] = t.swap(c)
    return R2Element(tuple(verts), tuple(edges))


class R2Operad(PosetOperad):
    """R2 of finite 2-truncated data, with the discrete order."""

    def __init__(self, t: Trunc2Data, name: Optional[str] = None):
        super().__init__()
        self.t = t
        self.name = name or f"R2({t.name})"
        self._cache = {}

    def arity(self, x):
        return x.k

    def unit(self):
        return R2Element((self.t.A1.unit,), ())

    def point(self):
        return R2Element((), ())

    def compose(self, x, ys):
        return r2_compose(self.t, x, ys)

    def act(self, x, g):
        return r2_sigma(self.t, x, g)

    def degeneracy(self, x, i):
        edges = tuple(c for (a, b), c in zip(pairs(x.k), x.edges) if a != i and b != i)
        return R2Element(x.vertices[:i] + x.vertices[i + 1:], edges)

    def is_valid(self, x):
        return r2_element_validate(self.t, x)

    def elements(self, k):
        if k not in self._cache:
            if self.t.A2 is None:
                raise NotImplementedError("arity-2 carrier is not finite")
            by_d = {}
            for c in self.t.A2:
                by_d.setdefault(self.t.d(c), []).append(c)
            out = []
            for verts in product(self.t.A1.elements, repeat=k):
                choices = [by_d.get((verts[a], verts[b]), []) for a, b in pairs(k)]
                for edges in product(*choices):
                    out.append(R2Element(tuple(verts), tuple(edges)))
            self._cache[k] = out
        return self._cache[k]


def r2t2_equals_ru_check(op: Operad, max_arity: int = 3) -> dict:
    """Compare R2 T2 B with RU B by forgetting vertex labels.

    When B(1) is trivial every vertex label is the unit, so forgetting them
    should be a bijection of carriers that commutes with composition and the
    action.  Returns a report with the carrier sizes and map checks.
    """
    t = truncate2(op)
    r2 = R2Operad(t)
    ru = ru_operad(op)
    forget = lambda el: REdgeLabelling(el.k, el.edges)
    sizes, ok = {}, True
    for k in range(max_arity + 1):
        a = r2.elements(k)
        b = ru.elements(k)
        image = {forget(el) for el in a}
        same = len(a) == len(b) and image == set(b)
        sizes[k] = {"R2T2": len(a), "RU": len(b), "bijective": same}
        ok &= same
    maps = operad_map_check(r2, ru, forget, max_arity) if ok else []
    ok &= all(r.passed for r in maps)
    return {
        "operad": op.name,
        "arity_one_trivial": len(op.elements(1)) == 1,
        "passed": bool(ok),
        "carriers": sizes,
        "map_checks": [r.to_json() for r in maps],
    }


# ---------------------------------------------------------------------------
# finiteness obstruction


class ObstructionBudgetExceeded(RuntimeError):
    pass


@dataclass
class ObstructionWitness:
    c: Any
    a: Any
    m: int
    r: int
    c_prime: Any
    c_prime_tau: Any
    d_c_prime: tuple
    d_c_prime_tau: tuple
    d_injective: Optional[bool]
    images_equal: bool
    fixed_point: Optional[bool] = field(default=None)

    def to_json(self) -> dict:
        return {
            "c": _plain(self.c),
            "a": _plain(self.a),
            "m": self.m,
            "r": self.r,
            "c_prime": _plain(self.c_prime),
            "c_prime_tau": _plain(self.c_prime_tau),
            "d(c_prime)": _plain(self.d_c_prime),
            "d(c_prime_tau)": _plain(self.d_c_prime_tau),
            "d_injective": self.d_injective,
            "images_equal": self.images_equal,
            "fixed_point": self.fixed_point,
        }


def power_cycle(M: MonoidM, a, bound: Optional[int] = None) -> tuple:
    """Least (m, r) with m, r >= 1 and a^m = a^(m+r)."""
    bound = len(M) + 1 if bound is None else bound
    seen = {}
    p = a
    for m in range(1, bound + 1):
        if p in seen:
            return seen[p], m - seen[p]
        seen[p] = m
        p = M.mul(p, a)
    raise ObstructionBudgetExceeded(f"no repeated power of {a!r} within {bound} steps")


def finiteness_obstruction_witness(t: Trunc2Data, c, bound: Optional[int] = None) -> ObstructionWitness:
    """Build c' = a^m . c . (a^(r-1) d2(c), 1) with a = d1(c) and a^m = a^(m+r).

    Its images under (d1, d2) and under (d1, d2) o tau always agree; when
    (d1, d2) is injective this makes c' a fixed point of the Sigma_2 action.
    """
    M = t.A1
    a = t.d1(c)
    m, r = power_cycle(M, a, bound)
    cp = t.right(t.left(M.power(a, m), c), (M.mul(M.power(a, r - 1), t.d2(c)), M.unit))
    cpt = t.swap(cp)
    dc, dct = t.d(cp), t.d(cpt)
    inj = t.d_is_injective()
    equal = dc == dct
    fixed = (cp == cpt) if inj else None
    return ObstructionWitness(c, a, m, r, cp, cpt, dc, dct, inj, equal, fixed)


def product_trunc2(M: MonoidM, name: Optional[str] = None) -> Trunc2Data:
    """A2 = M x M with the swap, coordinatewise actions and (d1, d2) = identity."""
    return Trunc2Data(
        A1=M,
        swap=lambda c: (c[1], c[0]),
        left=lambda a, c: (M.mul(a, c[0]), M.mul(a, c[1])),
        right=lambda c, uv: (M.mul(c[0], uv[0]), M.mul(c[1], uv[1])),
        d=lambda c: c,
        A2=[(x, y) for x in M.elements for y in M.elements],
        name=name or "MxM",
    )


def fixed_cyclic_labellings(X) -> list:
    """Elements of RX(3) fixed by (1 2 3), as labellings."""
    op = ROperad(X)
    g = Perm.cycle(3, 1, 2, 3)
    return [x for x in op.elements(3) if r_sigma(x, g, X) == x]


def cyclic_witness(X, x) -> REdgeLabelling:
    """f(1,2) = f(2,3) = f(3,1) = x, stored as f(1,2)=x, f(1,3)=bar x, f(2,3)=x."""
    return REdgeLabelling(3, (x, X.bar(x), x))


__all__ = [
    "Z2Set",
    "OperadArity2",
    "REdgeLabelling",
    "ROperad",
    "r_compose",
    "r_sigma",
    "r_unit_map",
    "ru_operad",
    "ru_nonclosure_check",
    "r_unit_map_checks",
    "ru_idempotency_check",
    "MonoidM",
    "R1Operad",
    "r1_compose",
    "Trunc2Data",
    "truncate2",
    "R2Element",
    "R2Operad",
    "r2_element_validate",
    "r2_compose",
    "r2t2_equals_ru_check",
    "finiteness_obstruction_witness",
    "power_cycle",
    "product_trunc2",
    "fixed_cyclic_labellings",
    "cyclic_witness",
    "ObstructionWitness",
]
