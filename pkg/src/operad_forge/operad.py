"""Generic finite (poset) operads and a brute-force axiom checker.

An operad here is any object implementing :class:`Operad`.  Elements must be
hashable values that know nothing about the operad; the operad object supplies
composition, the symmetric group action (pushforward convention, see
:mod:`operad_forge.perm`), degeneracies and, for poset operads, the order.
"""

import random
from dataclasses import dataclass, field
from itertools import product
from typing import Any, Optional

import numpy as np

from .perm import Perm, all_perms, block_perm, block_sum
from .poset import FinPoset

DEFAULT_SEED = 0xC0FFEE
EXHAUSTIVE_LIMIT = 10**6
DEFAULT_SAMPLES = 10**4


class Operad:
    """Interface; subclasses override what they can."""

    name = "operad"

    def unit(self):
        raise NotImplementedError

    def arity(self, x) -> int:
        return x.k

    def compose(self, x, ys):
        raise NotImplementedError

    def act(self, x, g: Perm):
        raise NotImplementedError

    def degeneracy(self, x, i: int):
        """Plug the arity-0 point into input ``i`` (0-based)."""
        raise NotImplementedError

    def leq(self, x, y) -> bool:
        return x == y

    def is_valid(self, x) -> bool:
        return True

    # finite carriers
    def elements(self, k: int) -> list:
        raise NotImplementedError(f"{self.name} has no enumerable carrier in arity {k}")

    def carrier_size(self, k: int) -> Optional[int]:
        try:
            return len(self.elements(k))
        except NotImplementedError:
            return None

    def point(self):
        return self.elements(0)[0]

    # sampling
    def sample(self, k: int, rng: random.Random):
        elems = self.elements(k)
        return elems[rng.randrange(len(elems))]

    def sample_above(self, x, rng: random.Random):
        return x


class PosetOperad(Operad):
    """An operad whose arity-k carriers are finite posets."""

    def __init__(self):
        self._carriers = {}

    def carrier(self, k: int) -> FinPoset:
        if k not in self._carriers:
            self._carriers[k] = FinPoset.from_elements(self.elements(k), self.leq)
        return self._carriers[k]


PosetOperadHandle = PosetOperad


def iterated_degeneracy(op: Operad, x, keep):
    """Delete every input not listed in ``keep`` (0-based indices)."""
    keep = set(keep)
    for i in range(op.arity(x) - 1, -1, -1):
        if i not in keep:
            x = op.degeneracy(x, i)
    return x


# ---------------------------------------------------------------------------
# axiom verification


@dataclass
class CheckResult:
    name: str
    mode: str
    cases: int
    passed: bool
    witness: Any = None

    def to_json(self) -> dict:
        out = {"name": self.name, "mode": self.mode, "cases": self.cases, "status": "pass" if self.passed else "fail"}
        if self.witness is not None:
            out["witness"] = _jsonable(self.witness)
        return out


@dataclass
class VerificationReport:
    operad: str
    max_arity: int
    checks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list:
        return [c for c in self.checks if not c.passed]

    def to_json(self) -> dict:
        return {
            "operad": self.operad,
            "max_arity": self.max_arity,
            "passed": self.passed,
            "checks": [c.to_json() for c in self.checks],
        }


def _jsonable(obj):
    if hasattr(obj, "to_json"):
        return obj.to_json()
    if isinstance(obj, Perm):
        return list(obj.one_based())
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (int, float, str, bool)) or obj is None:
        return obj
    return repr(obj)


def _weak_compositions(total: int, parts: int):
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _weak_compositions(total - first, parts - 1):
            yield (first,) + rest


def _random_weak_composition(total, parts, rng):
    if parts == 0:
        return ()
    cuts = sorted(rng.randint(0, total) for _ in range(parts - 1))
    bounds = [0] + cuts + [total]
    return tuple(bounds[i + 1] - bounds[i] for i in range(parts))


class _Checker:
    """Shared state for one verification pass.

    Exhaustive mode tabulates composition, the action and the order over the
    enumerated carriers (one scalar call per distinct input), then evaluates
    every law over all tuples with array lookups.  Sampled mode calls the
    operad directly on random tuples.
    """

    def __init__(self, op, max_arity, exhaustive_limit, samples, seed):
        self.op = op
        self.max_arity = max_arity
        self.limit = exhaustive_limit
        self.samples = samples
        self.seed = seed
        self._elems = {}
        self._index = {}
        self._tables = {}
        self._acts = {}
        self._leqs = {}
        self.escape = None
        self._tabled = None

    def elems(self, k):
        if k not in self._elems:
            self._elems[k] = self.op.elements(k)
        return self._elems[k]

    def size(self, k):
        try:
            return len(self.elems(k))
        except NotImplementedError:
            return None

    def enumerable(self, hi):
        return all(self.size(k) is not None for k in range(hi + 1))

    def index(self, k):
        if k not in self._index:
            self._index[k] = {x: i for i, x in enumerate(self.elems(k))}
        return self._index[k]

    # shapes: (k, arities) with k <= hi and sum(arities) <= hi
    def shapes(self, hi=None):
        hi = self.max_arity if hi is None else hi
        for k in range(hi + 1):
            for total in range(hi + 1):
                yield from ((k, ms) for ms in _weak_compositions(total, k))

    def count_shape(self, k, ms):
        n = self.size(k)
        for m in ms:
            n *= self.size(m)
        return n

    def tuples(self, k, ms):
        for x in self.elems(k):
            for ys in product(*(self.elems(m) for m in ms)):
                yield x, list(ys)

    @property
    def tabled(self) -> bool:
        if self._tabled is None:
            ok = self.limit >= 0 and self.enumerable(self.max_arity)
            if ok:
                entries = 0
                for k, ms in self.shapes():
                    entries += self.count_shape(k, ms)
                    if entries > self.limit:
                        ok = False
                        break
            self._tabled = ok
        return self._tabled

    def table(self, k, ms):
        """Indices of compose(x; ys) in the carrier of arity sum(ms); -1 outside."""
        key = (k, tuple(ms))
        if key not in self._tables:
            target = self.index(sum(ms))
            dims = (self.size(k),) + tuple(self.size(m) for m in ms)
            out = np.empty(dims, dtype=np.int64)
            flat = out.reshape(-1)
            for pos, (x, ys) in enumerate(self.tuples(k, ms)):
                r = target.get(self.op.compose(x, ys), -1)
                flat[pos] = r
                if r < 0 and self.escape is None:
                    self.escape = {"x": x, "ys": ys, "composite": self.op.compose(x, ys)}
            self._tables[key] = out
        return self._tables[key]

    def act_table(self, k, g):
        key = (k, g)
        if key not in self._acts:
            idx = self.index(k)
            self._acts[key] = np.array([idx.get(self.op.act(x, g), -1) for x in self.elems(k)], dtype=np.int64)
        return self._acts[key]

    def leq_table(self, k):
        if k not in self._leqs:
            if hasattr(self.op, "carrier"):
                self._leqs[k] = self.op.carrier(k).leq
            else:
                self._leqs[k] = np.eye(self.size(k), dtype=bool)
        return self._leqs[k]

    def decode(self, arities, idx):
        return [self.elems(a)[int(i)] for a, i in zip(arities, idx)]

    # sampling
    def sample_shape(self, rng, hi):
        # half of the draws pin the largest arity to hi
        if rng.random() < 0.5:
            k = rng.randint(1, hi)
            total = hi
        else:
            k = hi
            total = rng.randint(0, hi)
        return k, _random_weak_composition(total, k, rng)

    def sample_tuple(self, rng, hi):
        k, ms = self.sample_shape(rng, hi)
        return self.op.sample(k, rng), [self.op.sample(m, rng) for m in ms]

    def run(self, name, exhaustive_iter, count, sampler, check):
        """Scalar driver; ``check`` returns None on success, or a witness."""
        if exhaustive_iter is not None and count is not None and count <= self.limit:
            n = 0
            for case in exhaustive_iter():
                n += 1
                w = check(*case)
                if w is not None:
                    return CheckResult(name, "exhaustive", n, False, w)
            return CheckResult(name, "exhaustive", n, True)
        return self.sampled(name, sampler, check)

    def sampled(self, name, sampler, check):
        rng = random.Random(f"{self.seed}:{name}")
        mode = f"sampled(seed={self.seed})"
        for n in range(1, self.samples + 1):
            w = check(*sampler(rng))
            if w is not None:
                return CheckResult(name, mode, n, False, w)
        return CheckResult(name, mode, self.samples, True)

    def escaped(self, name, cases=0):
        return CheckResult(name, "exhaustive", cases, False, {"composite_outside_carrier": self.escape})


def _grid(sizes):
    """Open-grid index arrays, one per axis."""
    d = len(sizes)
    out = []
    for ax, s in enumerate(sizes):
        shape = [1] * d
        shape[ax] = s
        out.append(np.arange(s, dtype=np.int64).reshape(shape))
    return out


def _first_bad(bad):
    return tuple(int(i) for i in np.argwhere(bad)[0])


def verify_poset_operad(
    op: Operad,
    max_arity: int = 3,
    *,
    exhaustive_limit: int = EXHAUSTIVE_LIMIT,
    samples: int = DEFAULT_SAMPLES,
    seed: int = DEFAULT_SEED,
    sample_arity: Optional[int] = None,
    checks=None,
) -> VerificationReport:
    """Check the operad axioms by brute force.

    Exhaustive mode covers every composable tuple whose arities (inputs and
    composites) stay within ``max_arity``.  It is used when the number of
    distinct compositions to tabulate is at most ``exhaustive_limit``;
    otherwise ``samples`` random tuples are drawn.  ``sample_arity`` adds a
    second, sampled-only pass at that (larger) arity.

    Failures carry the first offending tuple; exhaustive runs scan by
    increasing arity, so that witness is as small as possible.
    """
    report = VerificationReport(op.name, max_arity)
    passes = [(max_arity, exhaustive_limit, "")]
    if sample_arity is not None:
        passes.append((sample_arity, -1, f"@{sample_arity}"))
    for hi, limit, suffix in passes:
        chk = _Checker(op, hi, limit, samples, seed)
        for name, fn in _CHECKS:
            if checks is not None and name not in checks:
                continue
            report.checks.append(fn(chk, hi, name + suffix))
    return report


def _check_arity_zero(chk, hi, name):
    size = chk.size(0)
    if size is None:
        return CheckResult(name, "skipped", 0, True)
    ok = size == 1
    return CheckResult(name, "exhaustive", 1, ok, None if ok else {"arity0_size": size})


def _check_units(chk, hi, name):
    op = chk.op
    u = op.unit()

    def check(x):
        k = op.arity(x)
        left = op.compose(u, [x])
        if left != x:
            return {"x": x, "unit_on_left": left}
        right = op.compose(x, [u] * k)
        if right != x:
            return {"x": x, "unit_on_right": right}
        return None

    def gen():
        for k in range(hi + 1):
            for x in chk.elems(k):
                yield (x,)

    count = sum(chk.size(k) for k in range(hi + 1)) if chk.enumerable(hi) else None
    return chk.run(name, gen, count, lambda rng: (op.sample(rng.randint(0, hi), rng),), check)


def _check_action(chk, hi, name):
    op = chk.op

    def check(x, g, h, y=None):
        k = op.arity(x)
        if op.act(x, Perm.identity(k)) != x:
            return {"x": x, "identity_moves": True}
        lhs = op.act(op.act(x, h), g)
        rhs = op.act(x, g * h)
        if lhs != rhs:
            return {"x": x, "g": g, "h": h, "g(h x)": lhs, "(gh) x": rhs}
        # y is above x; the action has to keep it there
        if y is not None and not op.leq(op.act(x, g), op.act(y, g)):
            return {"x": x, "y": y, "g": g, "problem": "action does not preserve the order"}
        return None

    def gen():
        for k in range(hi + 1):
            perms = list(all_perms(k))
            for x in chk.elems(k):
                for g in perms:
                    for h in perms:
                        yield x, g, h

    def sampler(rng):
        k = rng.randint(0, hi)
        x = op.sample(k, rng)
        return x, _random_perm(k, rng), _random_perm(k, rng), op.sample_above(x, rng)

    if chk.tabled and hasattr(op, "carrier"):
        # order preservation over all pairs, via tables
        cases = 0
        for k in range(hi + 1):
            leq = chk.leq_table(k)
            for g in all_perms(k):
                a = chk.act_table(k, g)
                if np.any(a < 0):
                    x = chk.elems(k)[int(np.flatnonzero(a < 0)[0])]
                    return CheckResult(name, "exhaustive", cases, False, {"x": x, "g": g, "problem": "leaves carrier"})
                bad = leq != leq[np.ix_(a, a)]
                cases += leq.size
                if bad.any():
                    i, j = _first_bad(bad)
                    x, y = chk.elems(k)[i], chk.elems(k)[j]
                    return CheckResult(name, "exhaustive", cases, False,
                                       {"x": x, "y": y, "g": g, "problem": "action does not preserve the order"})
    count = None
    if chk.enumerable(hi):
        count = sum(chk.size(k) * _fact(k) ** 2 for k in range(hi + 1))
    return chk.run(name, gen, count, sampler, check)


def _check_equivariance(chk, hi, name):
    op = chk.op

    def check(x, ys, g, hs):
        k = op.arity(x)
        sizes = [op.arity(y) for y in ys]
        base = op.compose(x, ys)
        ginv = g.inverse()
        lhs = op.compose(op.act(x, g), [ys[ginv(j)] for j in range(k)])
        rhs = op.act(base, block_perm(g, sizes))
        if lhs != rhs:
            return {"x": x, "ys": ys, "g": g, "compose(gx; ys*)": lhs, "g<m>.compose(x; ys)": rhs}
        lhs = op.compose(x, [op.act(y, h) for y, h in zip(ys, hs)])
        rhs = op.act(base, block_sum(hs))
        if lhs != rhs:
            return {"x": x, "ys": ys, "hs": hs, "compose(x; h ys)": lhs, "(+h).compose(x; ys)": rhs}
        return None

    def sampler(rng):
        x, ys = chk.sample_tuple(rng, hi)
        return x, ys, _random_perm(op.arity(x), rng), [_random_perm(op.arity(y), rng) for y in ys]

    if not chk.tabled:
        return chk.sampled(name, sampler, check)
    cases = 0
    for k, ms in chk.shapes():
        base_t = chk.table(k, ms)
        if chk.escape:
            return chk.escaped(name, cases)
        N = sum(ms)
        axes = _grid(base_t.shape)
        base = base_t[tuple(axes)]
        for g in all_perms(k):
            ginv = g.inverse()
            msp = tuple(ms[ginv(j)] for j in range(k))
            t2 = chk.table(k, msp)
            if chk.escape:
                return chk.escaped(name, cases)
            lhs = t2[(chk.act_table(k, g)[axes[0]],) + tuple(axes[1 + ginv(j)] for j in range(k))]
            rhs = chk.act_table(N, block_perm(g, ms))[base]
            cases += base.size
            bad = lhs != rhs
            if bad.any():
                pos = _first_bad(bad)
                x, *ys = chk.decode((k,) + ms, pos)
                return CheckResult(name, "exhaustive", cases, False, check(x, ys, g, [Perm.identity(m) for m in ms]))
        for hs in product(*(list(all_perms(m)) for m in ms)):
            lhs = base_t[(axes[0],) + tuple(chk.act_table(m, h)[axes[1 + i]] for i, (m, h) in enumerate(zip(ms, hs)))]
            rhs = chk.act_table(N, block_sum(hs))[base]
            cases += base.size
            bad = lhs != rhs
            if bad.any():
                pos = _first_bad(bad)
                x, *ys = chk.decode((k,) + ms, pos)
                return CheckResult(name, "exhaustive", cases, False, check(x, ys, Perm.identity(k), list(hs)))
    return CheckResult(name, "exhaustive", cases, True)


def _check_associativity(chk, hi, name):
    op = chk.op

    def check(x, ys, zs):
        inner = []
        pos = 0
        for y in ys:
            m = op.arity(y)
            inner.append(op.compose(y, zs[pos:pos + m]))
            pos += m
        lhs = op.compose(op.compose(x, ys), zs)
        rhs = op.compose(x, inner)
        if lhs != rhs:
            return {"x": x, "ys": ys, "zs": zs, "(x.ys).zs": lhs, "x.(ys.zs)": rhs}
        return None

    def sampler(rng):
        x, ys = chk.sample_tuple(rng, hi)
        total = sum(op.arity(y) for y in ys)
        ps = _random_weak_composition(rng.randint(0, hi), total, rng)
        return x, ys, [op.sample(p, rng) for p in ps]

    if not chk.tabled:
        return chk.sampled(name, sampler, check)
    cases = 0
    for k, ms in chk.shapes():
        T = sum(ms)
        for t in range(hi + 1):
            for ps in _weak_compositions(t, T):
                arities = (k,) + ms + ps
                axes = _grid(tuple(chk.size(a) for a in arities))
                X, Y, Z = axes[0], axes[1:1 + k], axes[1 + k:]
                t1 = chk.table(k, ms)
                t2 = chk.table(T, ps)
                blocks, sums, pos = [], [], 0
                for m in ms:
                    blocks.append(chk.table(m, ps[pos:pos + m]))
                    sums.append(sum(ps[pos:pos + m]))
                    pos += m
                t3 = chk.table(k, tuple(sums))
                if chk.escape:
                    return chk.escaped(name, cases)
                lhs = t2[(t1[(X,) + tuple(Y)],) + tuple(Z)]
                inner, pos = [], 0
                for i, m in enumerate(ms):
                    inner.append(blocks[i][(Y[i],) + tuple(Z[pos:pos + m])])
                    pos += m
                rhs = t3[(X,) + tuple(inner)]
                lhs, rhs = np.broadcast_arrays(lhs, rhs)
                cases += lhs.size
                bad = lhs != rhs
                if bad.any():
                    els = chk.decode(arities, _first_bad(bad))
                    x, ys, zs = els[0], els[1:1 + k], els[1 + k:]
                    return CheckResult(name, "exhaustive", cases, False, check(x, ys, zs))
    return CheckResult(name, "exhaustive", cases, True)


def _check_degeneracies(chk, hi, name):
    op = chk.op
    try:
        point = op.point()
    except NotImplementedError:
        return CheckResult(name, "skipped", 0, True)
    u = op.unit()

    def check(x, i):
        k = op.arity(x)
        direct = op.degeneracy(x, i)
        via = op.compose(x, [u] * i + [point] + [u] * (k - i - 1))
        if direct != via:
            return {"x": x, "i": i + 1, "degeneracy": direct, "compose_with_point": via}
        return None

    def gen():
        for k in range(1, hi + 1):
            for x in chk.elems(k):
                for i in range(k):
                    yield x, i

    def sampler(rng):
        k = rng.randint(1, hi)
        return op.sample(k, rng), rng.randrange(k)

    count = sum(chk.size(k) * k for k in range(1, hi + 1)) if chk.enumerable(hi) else None
    return chk.run(name, gen, count, sampler, check)


def _check_monotonicity(chk, hi, name):
    op = chk.op

    def check(x, ys, slot, bigger):
        if slot < 0:
            x2, ys2 = bigger, ys
        else:
            x2, ys2 = x, ys[:slot] + [bigger] + ys[slot + 1:]
        a = op.compose(x, ys)
        b = op.compose(x2, ys2)
        if not op.leq(a, b):
            return {"x": x, "ys": ys, "raised_slot": slot + 1 if slot >= 0 else "outer", "raised_to": bigger,
                    "before": a, "after": b}
        return None

    def sampler(rng):
        x, ys = chk.sample_tuple(rng, hi)
        slot = rng.randint(-1, len(ys) - 1)
        target = x if slot < 0 else ys[slot]
        return x, ys, slot, op.sample_above(target, rng)

    if not chk.tabled:
        return chk.sampled(name, sampler, check)
    cases = 0
    for k, ms in chk.shapes():
        tab = chk.table(k, ms)
        if chk.escape:
            return chk.escaped(name, cases)
        leq_out = chk.leq_table(sum(ms))
        arities = (k,) + ms
        for slot in range(-1, k):
            ax = slot + 1
            strict = chk.leq_table(arities[ax]) & ~np.eye(chk.size(arities[ax]), dtype=bool)
            lo, up = np.nonzero(strict)
            if lo.size == 0:
                continue
            sizes = list(tab.shape)
            sizes[ax] = lo.size
            axes = _grid(sizes)
            low_axes = list(axes)
            high_axes = list(axes)
            low_axes[ax] = lo[axes[ax]]
            high_axes[ax] = up[axes[ax]]
            a = tab[tuple(low_axes)]
            b = tab[tuple(high_axes)]
            ok = leq_out[a, b]
            cases += ok.size
            if not ok.all():
                pos = list(_first_bad(~ok))
                p = pos[ax]
                pos[ax] = lo[p]
                els = chk.decode(arities, pos)
                bigger = chk.elems(arities[ax])[int(up[p])]
                return CheckResult(name, "exhaustive", cases, False, check(els[0], els[1:], slot, bigger))
    return CheckResult(name, "exhaustive", cases, True)


def _check_closure(chk, hi, name):
    op = chk.op

    def check(x, ys):
        out = op.compose(x, ys)
        if not op.is_valid(out):
            return {"x": x, "ys": ys, "invalid_output": out}
        return None

    if not chk.tabled:
        return chk.sampled(name, lambda rng: chk.sample_tuple(rng, hi), check)
    cases = 0
    for k, ms in chk.shapes():
        chk.table(k, ms)
        cases += chk.count_shape(k, ms)
        if chk.escape:
            return chk.escaped(name, cases)
    return CheckResult(name, "exhaustive", cases, True)


def _fact(k):
    out = 1
    for i in range(2, k + 1):
        out *= i
    return out


def _random_perm(k, rng):
    imgs = list(range(k))
    rng.shuffle(imgs)
    return Perm(tuple(imgs))


_CHECKS = [
    ("arity0", _check_arity_zero),
    ("unit", _check_units),
    ("action", _check_action),
    ("equivariance", _check_equivariance),
    ("associativity", _check_associativity),
    ("degeneracy", _check_degeneracies),
    ("monotonicity", _check_monotonicity),
    ("closure", _check_closure),
]


class MutatedOperad(Operad):
    """Wraps an operad, overriding the composite of one chosen tuple.

    Used to confirm that the checker actually catches broken tables.
    """

    def __init__(self, base: Operad, x, ys, replacement):
        self.base = base
        self.name = f"mutated({base.name})"
        self._key = (x, tuple(ys))
        self._replacement = replacement

    def __getattr__(self, attr):
        return getattr(self.base, attr)

    def unit(self):
        return self.base.unit()

    def arity(self, x):
        return self.base.arity(x)

    def act(self, x, g):
        return self.base.act(x, g)

    def degeneracy(self, x, i):
        return self.base.degeneracy(x, i)

    def leq(self, x, y):
        return self.base.leq(x, y)

    def is_valid(self, x):
        return self.base.is_valid(x)

    def elements(self, k):
        return self.base.elements(k)

    def sample(self, k, rng):
        return self.base.sample(k, rng)

    def sample_above(self, x, rng):
        return self.base.sample_above(x, rng)

    def point(self):
        return self.base.point()

    def compose(self, x, ys):
        if (x, tuple(ys)) == self._key:
            return self._replacement
        return self.base.compose(x, ys)


def operad_map_check(source: Operad, target: Operad, f, max_arity: int = 3, samples: int = DEFAULT_SAMPLES,
                     seed: int = DEFAULT_SEED, exhaustive_limit: int = EXHAUSTIVE_LIMIT):
    """Check that ``f`` commutes with composition, the action and degeneracies.

    Returns a list of :class:`CheckResult`.
    """
    chk = _Checker(source, max_arity, exhaustive_limit, samples, seed)
    results = []

    def check_compose(x, ys):
        lhs = f(source.compose(x, ys))
        rhs = target.compose(f(x), [f(y) for y in ys])
        if lhs != rhs:
            return {"x": x, "ys": ys, "f(compose)": lhs, "compose(f)": rhs}
        return None

    count = sum(chk.count_shape(k, ms) for k, ms in chk.shapes(max_arity)) if chk.enumerable(max_arity) else None

    def gen():
        for k, ms in chk.shapes(max_arity):
            yield from chk.tuples(k, ms)

    results.append(chk.run("map_composition", gen, count, lambda rng: chk.sample_tuple(rng, max_arity),
                           check_compose))

    def check_pre(x, g, i):
        if f(source.act(x, g)) != target.act(f(x), g):
            return {"x": x, "g": g, "problem": "action"}
        if i is not None and f(source.degeneracy(x, i)) != target.degeneracy(f(x), i):
            return {"x": x, "i": i + 1, "problem": "degeneracy"}
        return None

    def gen_pre():
        for k in range(max_arity + 1):
            for x in chk.elems(k):
                for g in all_perms(k):
                    for i in (range(k) if k else [None]):
                        yield x, g, i

    def sampler_pre(rng):
        k = rng.randint(0, max_arity)
        return source.sample(k, rng), _random_perm(k, rng), (rng.randrange(k) if k else None)

    count_p = None
    if chk.enumerable(max_arity):
        count_p = sum(chk.size(k) * _fact(k) * max(k, 1) for k in range(max_arity + 1))
    results.append(chk.run("map_preoperad", gen_pre, count_p, sampler_pre, check_pre))
    return results


__all__ = [
    "Operad",
    "PosetOperad",
    "PosetOperadHandle",
    "CheckResult",
    "VerificationReport",
    "verify_poset_operad",
    "operad_map_check",
    "iterated_degeneracy",
    "MutatedOperad",
    "DEFAULT_SEED",
]
