"""Little n-cubes with exact rational coordinates.

Axes are 1-based in every public result (separation axes, colours) so that
they line up with edge colours of the complete-graph operads.
"""

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Optional, Sequence

import numpy as np

from .adjoint import R2Element, Trunc2Data, REdgeLabelling, SWAP2, r2_element_validate
from .graphs import (
    KHatOperad,
    PartialGraphLabel,
    is_acyclic,
    khat_compose,
    khat_leq,
    khat_poset,
    khat_sigma,
    pairs,
)
from .operad import Operad
from .perm import Perm

Rat = Fraction
GRID = 64


def rat(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class NotDisjointError(ValueError):
    pass


class NoLeastCellError(ValueError):
    """The containing cells of a configuration have no least element."""


@dataclass(frozen=True)
class CubeN:
    intervals: tuple    # ((a_1, b_1), ..., (a_n, b_n)) with 0 <= a < b <= 1

    def __post_init__(self):
        ivs = tuple((rat(a), rat(b)) for a, b in self.intervals)
        for a, b in ivs:
            if not (0 <= a < b <= 1):
                raise ValueError(f"bad interval [{a}, {b}]")
        object.__setattr__(self, "intervals", ivs)

    @classmethod
    def unit(cls, n: int) -> "CubeN":
        return cls(((0, 1),) * n)

    @classmethod
    def parse(cls, *intervals) -> "CubeN":
        """``CubeN.parse("1/2", "1", "0", "1")`` or pairs of strings."""
        flat = []
        for iv in intervals:
            if isinstance(iv, (tuple, list)):
                flat.extend(iv)
            else:
                flat.append(iv)
        vals = [Fraction(v) for v in flat]
        return cls(tuple(zip(vals[0::2], vals[1::2])))

    @property
    def n(self) -> int:
        return len(self.intervals)

    def lo(self, j: int) -> Fraction:
        return self.intervals[j][0]

    def hi(self, j: int) -> Fraction:
        return self.intervals[j][1]

    def apply(self, inner: "CubeN") -> "CubeN":
        """Image of ``inner`` under the affine map of [0,1]^n onto this cube."""
        out = []
        for (a, b), (c, d) in zip(self.intervals, inner.intervals):
            w = b - a
            out.append((a + w * c, a + w * d))
        return CubeN(tuple(out))

    def product(self, other: "CubeN") -> "CubeN":
        return CubeN(self.intervals + other.intervals)

    def project(self, axes) -> "CubeN":
        return CubeN(tuple(self.intervals[j] for j in axes))

    def to_json(self) -> dict:
        return {"n": self.n, "intervals": [[str(a), str(b)] for a, b in self.intervals]}

    @classmethod
    def from_json(cls, data) -> "CubeN":
        if isinstance(data, str):
            data = json.loads(data)
        cube = cls(tuple((Fraction(a), Fraction(b)) for a, b in data["intervals"]))
        if "n" in data and int(data["n"]) != cube.n:
            raise ValueError("dimension field disagrees with the intervals")
        return cube

    def __str__(self):
        return "x".join(f"[{a},{b}]" for a, b in self.intervals)


def interiors_meet(c1: CubeN, c2: CubeN) -> bool:
    if c1.n != c2.n:
        raise ValueError("cubes of different dimension")
    return all(max(a1, a2) < min(b1, b2) for (a1, b1), (a2, b2) in zip(c1.intervals, c2.intervals))


def disjoint_interiors(c1: CubeN, c2: CubeN) -> bool:
    return not interiors_meet(c1, c2)


def separation_axes(c1: CubeN, c2: CubeN) -> list:
    """All (axis, negative) with a hyperplane normal to ``axis`` (1-based)
    separating the interiors; ``negative`` is 1 or 2, the cube on the
    negative side."""
    out = []
    for j, ((a1, b1), (a2, b2)) in enumerate(zip(c1.intervals, c2.intervals), start=1):
        if b1 <= a2:
            out.append((j, 1))
        elif b2 <= a1:
            out.append((j, 2))
    return out


@dataclass(frozen=True)
class CubeConfig:
    n: int
    cubes: tuple

    def __post_init__(self):
        cubes = tuple(self.cubes)
        for c in cubes:
            if c.n != self.n:
                raise ValueError("cube of the wrong dimension")
        object.__setattr__(self, "cubes", cubes)

    @property
    def k(self) -> int:
        return len(self.cubes)

    def is_disjoint(self) -> bool:
        return all(disjoint_interiors(self.cubes[a], self.cubes[b]) for a, b in pairs(self.k))

    def first_overlap(self) -> Optional[tuple]:
        for a, b in pairs(self.k):
            if interiors_meet(self.cubes[a], self.cubes[b]):
                return a, b
        return None

    def to_json(self) -> list:
        return [c.to_json() for c in self.cubes]

    @classmethod
    def from_json(cls, data, n: Optional[int] = None) -> "CubeConfig":
        if isinstance(data, str):
            data = json.loads(data)
        cubes = tuple(CubeN.from_json(c) for c in data)
        if n is None:
            if not cubes:
                raise ValueError("empty configuration needs an explicit n")
            n = cubes[0].n
        return cls(n, cubes)

    def __str__(self):
        return "(" + ", ".join(str(c) for c in self.cubes) + ")"


def config(*cubes: CubeN) -> CubeConfig:
    return CubeConfig(cubes[0].n, cubes)


def cube_compose(outer: CubeConfig, inners: Sequence[CubeConfig], check: bool = True) -> CubeConfig:
    """Substitute each inner configuration into its outer cube.

    With ``check`` the inputs and the result must have disjoint interiors;
    without it this is the composition of the tuple operad R1(C_n(1)).
    """
    if len(inners) != outer.k:
        raise ValueError(f"outer has {outer.k} cubes but {len(inners)} inputs were given")
    if check:
        for cfg in (outer, *inners):
            if not cfg.is_disjoint():
                raise NotDisjointError(f"input {cfg} has overlapping cubes")
    out = CubeConfig(outer.n, tuple(o.apply(c) for o, y in zip(outer.cubes, inners) for c in y.cubes))
    if check and not out.is_disjoint():
        raise AssertionError("composite lost disjointness")
    return out


def cube_sigma(cfg: CubeConfig, g: Perm) -> CubeConfig:
    out = [None] * cfg.k
    for i, c in enumerate(cfg.cubes):
        out[g(i)] = c
    return CubeConfig(cfg.n, tuple(out))


def cube_degeneracy(cfg: CubeConfig, i: int) -> CubeConfig:
    return CubeConfig(cfg.n, cfg.cubes[:i] + cfg.cubes[i + 1:])


# ---------------------------------------------------------------------------
# random configurations


def random_box(region: CubeN, rng: random.Random, grid: int = GRID) -> CubeN:
    """A grid-aligned box inside ``region`` (region corners on the grid)."""
    ivs = []
    for a, b in region.intervals:
        lo, hi = int(a * grid), int(b * grid)
        x, y = sorted(rng.sample(range(lo, hi + 1), 2))
        ivs.append((Fraction(x, grid), Fraction(y, grid)))
    return CubeN(tuple(ivs))


def random_config(n: int, k: int, rng: random.Random, grid: int = GRID, shrink: float = 0.5) -> CubeConfig:
    """Disjoint configuration from random guillotine cuts on a 1/grid lattice,
    each piece shrunk to a random sub-box with probability ``shrink``."""
    regions = [CubeN.unit(n)]
    while len(regions) < k:
        splittable = [r for r in regions if any((b - a) * grid >= 2 for a, b in r.intervals)]
        if not splittable:
            raise ValueError(f"grid 1/{grid} too coarse for {k} cubes")
        r = rng.choice(splittable)
        axes = [j for j, (a, b) in enumerate(r.intervals) if (b - a) * grid >= 2]
        j = rng.choice(axes)
        a, b = r.intervals[j]
        cut = Fraction(rng.randint(int(a * grid) + 1, int(b * grid) - 1), grid)
        left = list(r.intervals)
        right = list(r.intervals)
        left[j] = (a, cut)
        right[j] = (cut, b)
        regions.remove(r)
        regions += [CubeN(tuple(left)), CubeN(tuple(right))]
    rng.shuffle(regions)
    cubes = tuple(random_box(r, rng, grid) if rng.random() < shrink else r for r in regions[:k])
    return CubeConfig(n, cubes)


def random_tuple(n: int, k: int, rng: random.Random, grid: int = GRID) -> CubeConfig:
    """k independent grid boxes; interiors may meet."""
    return CubeConfig(n, tuple(random_box(CubeN.unit(n), rng, grid) for _ in range(k)))


# ---------------------------------------------------------------------------
# the operad


class CubesOperad(Operad):
    """C_n with exact coordinates.  Carriers are infinite, so only sampling applies."""

    def __init__(self, n: int, grid: int = GRID):
        self.n = n
        self.grid = grid
        self.name = f"C_{n}"

    def unit(self):
        return CubeConfig(self.n, (CubeN.unit(self.n),))

    def point(self):
        return CubeConfig(self.n, ())

    def compose(self, x, ys):
        return cube_compose(x, ys)

    def act(self, x, g):
        return cube_sigma(x, g)

    def degeneracy(self, x, i):
        return cube_degeneracy(x, i)

    def is_valid(self, x):
        return x.n == self.n and x.is_disjoint()

    def sample(self, k, rng):
        return random_config(self.n, k, rng, self.grid)


class CubeMonoid:
    """C_n(1) as a monoid (infinite; enough of the MonoidM interface for R2)."""

    def __init__(self, n: int):
        self.n = n
        self.unit = CubeConfig(n, (CubeN.unit(n),))

    def mul(self, x, y):
        return CubeConfig(self.n, (x.cubes[0].apply(y.cubes[0]),))

    def power(self, x, m):
        out = self.unit
        for _ in range(m):
            out = self.mul(out, x)
        return out

    def __len__(self):
        raise TypeError("C_n(1) is infinite")


def cubes_trunc2(n: int) -> Trunc2Data:
    op = CubesOperad(n)
    one = lambda c: CubeConfig(n, (c,))
    return Trunc2Data(
        A1=CubeMonoid(n),
        swap=lambda c: cube_sigma(c, SWAP2),
        left=lambda a, c: cube_compose(a, [c]),
        right=lambda c, uv: cube_compose(c, list(uv)),
        d=lambda c: (one(c.cubes[0]), one(c.cubes[1])),
        A2=None,
        name=f"T2({op.name})",
    )


def decompose(cfg: CubeConfig) -> R2Element:
    """Vertex i gets cube i, edge {a, b} gets the pair (cube a, cube b)."""
    verts = tuple(CubeConfig(cfg.n, (c,)) for c in cfg.cubes)
    edges = tuple(CubeConfig(cfg.n, (cfg.cubes[a], cfg.cubes[b])) for a, b in pairs(cfg.k))
    return R2Element(verts, edges)


def reconstruct(el: R2Element, n: Optional[int] = None) -> Optional[CubeConfig]:
    """The configuration of vertex cubes, or None when some edge is not in C_n(2)."""
    if n is None:
        if not el.vertices:
            raise ValueError("empty element needs an explicit n")
        n = el.vertices[0].n
    if not r2_element_validate(cubes_trunc2(n), el):
        return None
    if not all(e.is_disjoint() for e in el.edges):
        return None
    return CubeConfig(n, tuple(v.cubes[0] for v in el.vertices))


# ---------------------------------------------------------------------------
# cells over the augmented complete-graph operad


def edge_allowed(c_src: CubeN, c_dst: CubeN, colour: int) -> bool:
    """May the edge src -> dst carry ``colour``?  Separation along some axis
    j < colour (either side), or along j = colour with src on the negative side."""
    for j, neg in separation_axes(c_src, c_dst):
        if j < colour or (j == colour and neg == 1):
            return True
    return False


def cell_contains(lam: PartialGraphLabel, cfg: CubeConfig) -> bool:
    if lam.k != cfg.k:
        raise ValueError("arity mismatch")
    return all(edge_allowed(cfg.cubes[s], cfg.cubes[t], c) for s, t, c in lam.edges())


def allowed_codes(cfg: CubeConfig, a: int, b: int, n: int) -> list:
    """Edge codes of pair a<b admissible for ``cfg`` (0 always is)."""
    out = [0]
    for c in range(1, n + 1):
        if edge_allowed(cfg.cubes[a], cfg.cubes[b], c):
            out.append(c)
        if edge_allowed(cfg.cubes[b], cfg.cubes[a], c):
            out.append(-c)
    return out


def min_edge_labels(cfg: CubeConfig) -> tuple:
    """Per pair a<b the code of the least admissible label: smallest separating
    axis, pointing from the negative to the positive side.  May be cyclic."""
    codes = []
    for a, b in pairs(cfg.k):
        seps = separation_axes(cfg.cubes[a], cfg.cubes[b])
        if not seps:
            raise NotDisjointError(f"cubes {a + 1} and {b + 1} have overlapping interiors")
        j, neg = min(seps)
        codes.append(j if neg == 1 else -j)
    return tuple(codes)


def min_cell(cfg: CubeConfig, n: Optional[int] = None) -> PartialGraphLabel:
    """Least element of K^(n)(k) whose cell contains ``cfg``.

    When the edgewise least labels form no directed cycle they are the answer
    (and that element is then least among all containing cells of the
    augmented operad too).  Otherwise every containing total labelling lies
    above the cheapest labelling of some vertex order; the least of those, if
    it exists, is returned, else :class:`NoLeastCellError` is raised.
    """
    n = cfg.n if n is None else n
    base = min_edge_labels(cfg)
    if is_acyclic(cfg.k, base):
        return PartialGraphLabel(cfg.k, n, base)
    cands = []
    for order in permutations(range(cfg.k)):
        rank = {v: r for r, v in enumerate(order)}
        codes = []
        for (a, b), c in zip(pairs(cfg.k), base):
            forward = rank[a] < rank[b]
            if (c > 0) == forward:
                codes.append(c)
            else:
                j = abs(c) + 1
                if j > n:
                    break
                codes.append(j if forward else -j)
        else:
            cands.append(PartialGraphLabel(cfg.k, n, tuple(codes)))
    for x in cands:
        if all(khat_leq(x, y) for y in cands):
            return x
    raise NoLeastCellError(f"no least containing cell for {cfg}")


def random_cell_for(cfg: CubeConfig, n: int, rng: random.Random, tries: int = 50) -> PartialGraphLabel:
    """A random element of K-hat^(n)(k) whose cell contains ``cfg``."""
    choices = [allowed_codes(cfg, a, b, n) for a, b in pairs(cfg.k)]
    for _ in range(tries):
        codes = [rng.choice(opts) for opts in choices]
        if is_acyclic(cfg.k, codes):
            return PartialGraphLabel(cfg.k, n, tuple(codes))
    return PartialGraphLabel.unlabelled(cfg.k, n)


# ---------------------------------------------------------------------------
# configuration spaces of points


@dataclass(frozen=True)
class PointConfig:
    n: int
    points: tuple

    def __post_init__(self):
        pts = tuple(tuple(rat(v) for v in p) for p in self.points)
        if any(len(p) != self.n for p in pts):
            raise ValueError("point of the wrong dimension")
        object.__setattr__(self, "points", pts)

    @property
    def k(self) -> int:
        return len(self.points)

    def is_valid(self) -> bool:
        return len(set(self.points)) == len(self.points)

    def delete(self, i: int) -> "PointConfig":
        return PointConfig(self.n, self.points[:i] + self.points[i + 1:])

    def act(self, g: Perm) -> "PointConfig":
        out = [None] * self.k
        for i, p in enumerate(self.points):
            out[g(i)] = p
        return PointConfig(self.n, tuple(out))


class PairSwap:
    """F(R^n, 2) as a Z/2-set: swap the two points."""

    @staticmethod
    def bar(x: PointConfig) -> PointConfig:
        return x.act(SWAP2)


def point_unit_map(p: PointConfig) -> REdgeLabelling:
    """F(R^n, k) -> R(F(R^n, 2)): edge {i, j} gets the pair (p_i, p_j)."""
    return REdgeLabelling(p.k, tuple(PointConfig(p.n, (p.points[a], p.points[b])) for a, b in pairs(p.k)))


def random_points(n: int, k: int, rng: random.Random, grid: int = GRID) -> PointConfig:
    seen = set()
    while len(seen) < k:
        seen.add(tuple(Fraction(rng.randint(-grid, grid), grid) for _ in range(n)))
    pts = list(seen)
    pts.sort()
    rng.shuffle(pts)
    return PointConfig(n, tuple(pts))


def config_preoperad_check(n: int = 2, max_k: int = 4, samples: int = 200, seed: int = 0xC0FFEE) -> dict:
    """Degeneracies, the action and the unit map into R(F(R^n, 2)) on random
    configurations of points."""
    from .adjoint import r_degeneracy, r_sigma

    rng = random.Random(seed)
    failures = []
    counts = {"distinct": 0, "degeneracy": 0, "action": 0, "unit_map": 0}
    for _ in range(samples):
        k = rng.randint(0, max_k)
        p = random_points(n, k, rng)
        counts["distinct"] += 1
        if not p.is_valid():
            failures.append({"check": "distinct", "points": str(p)})
        u = point_unit_map(p)
        for (a, b), lab in zip(pairs(k), u.labels):
            if lab.points != (p.points[a], p.points[b]):
                failures.append({"check": "unit_map_labels", "points": str(p)})
        counts["unit_map"] += 1
        for i in range(k):
            q = p.delete(i)
            counts["degeneracy"] += 1
            if not q.is_valid() or point_unit_map(q) != r_degeneracy(u, i):
                failures.append({"check": "degeneracy", "points": str(p), "i": i + 1})
        g = Perm(tuple(rng.sample(range(k), k)))
        h = Perm(tuple(rng.sample(range(k), k)))
        counts["action"] += 1
        if p.act(g * h) != p.act(h).act(g) or not p.act(g).is_valid():
            failures.append({"check": "action", "points": str(p)})
        if point_unit_map(p.act(g)) != r_sigma(u, g, PairSwap):
            failures.append({"check": "unit_map_equivariance", "points": str(p), "g": g.one_based()})
    return {"passed": not failures, "counts": counts, "failures": failures[:5]}


# ---------------------------------------------------------------------------
# fixed examples and the cell suite


def counterexample_c2():
    """The (alpha; beta, gamma) tuple whose unit-map chases disagree."""
    a = config(CubeN.parse("1/2", "1", "0", "1"), CubeN.parse("0", "1/2", "0", "1"))
    b = config(CubeN.parse("0", "1", "0", "1/2"), CubeN.parse("0", "1", "1/2", "1"))
    g = config(CubeN.parse("0", "1", "1/2", "1"))
    return a, b, g


def cells_suite(n: int, k: int, samples: int, seed: int, compat_samples: int = 1000) -> list:
    """(name, passed, witness, info) tuples for the cell predicates."""
    rng = random.Random(seed)
    out = []
    khat = KHatOperad(n).elements(k)
    P = khat_poset(khat)
    strict = P.strict()
    bad = None
    for _ in range(samples):
        cfg = random_tuple(n, k, rng)
        inside = np.array([cell_contains(x, cfg) for x in khat])
        viol = strict & inside[:, None] & ~inside[None, :]
        if viol.any() and bad is None:
            i, j = (int(v) for v in np.argwhere(viol)[0])
            bad = {"config": cfg.to_json(), "lower": khat[i].to_json(), "upper": khat[j].to_json()}
    out.append(("monotonicity", bad is None, bad, {"cells": len(khat), "configs": samples}))

    bad = None
    for _ in range(compat_samples):
        kk = rng.randint(1, 3)
        outer = random_tuple(n, kk, rng)
        lam = random_cell_for(outer, n, rng)
        inners = [random_tuple(n, rng.randint(0, 2), rng) for _ in range(kk)]
        lams = [random_cell_for(c, n, rng) for c in inners]
        comp = cube_compose(outer, inners, check=False)
        cell = khat_compose(lam, lams)
        if not cell_contains(cell, comp) and bad is None:
            bad = {"outer": outer.to_json(), "cell": lam.to_json()}
    out.append(("composition_compatibility", bad is None, bad, {"samples": compat_samples}))

    total = KHatOperad(n, total=True).elements(k)
    bad, no_least, checked = None, 0, 0
    for _ in range(samples):
        cfg = random_config(n, k, rng) if rng.random() < 0.5 else _random_disjoint(n, k, rng)
        containing = [x for x in total if cell_contains(x, cfg)]
        least = [x for x in containing if all(khat_leq(x, y) for y in containing)]
        try:
            m = min_cell(cfg, n)
        except NoLeastCellError:
            no_least += 1
            if least and bad is None:
                bad = {"config": cfg.to_json(), "missed": least[0].to_json()}
            continue
        checked += 1
        if (not least or m != least[0]) and bad is None:
            bad = {"config": cfg.to_json(), "min_cell": m.to_json()}
        g = Perm(tuple(rng.sample(range(k), k)))
        if min_cell(cube_sigma(cfg, g), n) != khat_sigma(m, g) and bad is None:
            bad = {"config": cfg.to_json(), "perm": list(g.one_based()), "problem": "equivariance"}
    out.append(("min_cell_least", bad is None, bad, {"configs": samples, "with_least": checked,
                                                     "without_least": no_least}))
    return out


def _random_disjoint(n, k, rng, tries=200):
    for _ in range(tries):
        c = random_tuple(n, k, rng)
        if c.is_disjoint():
            return c
    return random_config(n, k, rng)


__all__ = [
    "Rat",
    "CubeN",
    "CubeConfig",
    "CubesOperad",
    "config",
    "cube_compose",
    "cube_sigma",
    "cube_degeneracy",
    "disjoint_interiors",
    "interiors_meet",
    "separation_axes",
    "cell_contains",
    "allowed_codes",
    "min_edge_labels",
    "min_cell",
    "random_cell_for",
    "decompose",
    "reconstruct",
    "cubes_trunc2",
    "random_config",
    "random_tuple",
    "PointConfig",
    "point_unit_map",
    "config_preoperad_check",
    "NoLeastCellError",
    "NotDisjointError",
    "counterexample_c2",
    "cells_suite",
]
