"""Interchange of operad maps and generalized tensor products of cube operads."""

import random
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from .adjoint import REdgeLabelling, r_compose
from .cubes import (
    CubeConfig,
    CubeN,
    cube_compose,
    cube_sigma,
    disjoint_interiors,
    random_config,
    random_tuple,
)
from .graphs import PartialGraphLabel, join_colours, pairs, pair_index, split_colours
from .perm import Perm


def tau_perm(k: int, l: int) -> Perm:
    """Sends the lexicographic position of (i, j) in [k] x [l] to its reverse
    lexicographic position."""
    if k < 1 or l < 1:
        raise ValueError("k and l must be positive")
    return Perm(tuple(j * k + i for i in range(k) for j in range(l)))


@dataclass
class InterchangeResult:
    lhs: object
    rhs: object
    equal: bool

    def to_json(self) -> dict:
        conv = lambda v: v.to_json() if hasattr(v, "to_json") else str(v)
        return {"lhs": conv(self.lhs), "rhs": conv(self.rhs), "equal": self.equal}


def interchange_check(alpha, beta, compose: Callable, act: Callable, arity: Callable) -> InterchangeResult:
    """The interchange square for alpha in A(k), beta in B(l), both already mapped into C.

    lhs = alpha(beta, ..., beta); rhs = beta(alpha, ..., alpha) with its
    inputs moved from reverse-lexicographic to lexicographic position.
    """
    k, l = arity(alpha), arity(beta)
    lhs = compose(alpha, [beta] * k)
    rhs = act(compose(beta, [alpha] * l), tau_perm(k, l).inverse())
    return InterchangeResult(lhs, rhs, lhs == rhs)


def x_split(c: CubeConfig) -> CubeConfig:
    """C_1 into C_2 along the first axis."""
    return CubeConfig(2, tuple(CubeN((iv.intervals[0], (0, 1))) for iv in c.cubes))


def y_split(c: CubeConfig) -> CubeConfig:
    """C_1 into C_2 along the second axis."""
    return CubeConfig(2, tuple(CubeN(((0, 1), iv.intervals[0])) for iv in c.cubes))


def _cube_interchange(alpha, beta):
    return interchange_check(alpha, beta, cube_compose, cube_sigma, lambda c: c.k)


def axis_split_interchange_suite(samples: int = 1000, seed: int = 0xC0FFEE, max_k: int = 3) -> dict:
    """Random alpha, beta in C_1 pushed into C_2 along different axes."""
    rng = random.Random(seed)
    for s in range(samples):
        k, l = rng.randint(1, max_k), rng.randint(1, max_k)
        a = x_split(random_config(1, k, rng))
        b = y_split(random_config(1, l, rng))
        res = _cube_interchange(a, b)
        if not res.equal:
            return {"passed": False, "samples": s + 1, "witness": {"alpha": a.to_json(), "beta": b.to_json(),
                                                                   **res.to_json()}}
    return {"passed": True, "samples": samples}


def c2_interchange_failure(seed: int = 0xC0FFEE, tries: int = 1000) -> Optional[dict]:
    """A pair alpha, beta in C_2(2) for which interchange fails inside the single operad C_2."""
    rng = random.Random(seed)
    for t in range(tries):
        a = random_config(2, 2, rng)
        b = random_config(2, 2, rng)
        res = _cube_interchange(a, b)
        if not res.equal:
            return {"tries": t + 1, "alpha": a.to_json(), "beta": b.to_json(), **res.to_json()}
    return None


# ---------------------------------------------------------------------------
# the generalized tensor product of C_m and C_n


@dataclass(frozen=True)
class GTensorCubesEl:
    m: int
    n: int
    a: tuple      # cubes in C_m(1)
    b: tuple      # cubes in C_n(1)

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(self.a))
        object.__setattr__(self, "b", tuple(self.b))
        if len(self.a) != len(self.b):
            raise ValueError("one a-label and one b-label per input")
        if any(c.n != self.m for c in self.a) or any(c.n != self.n for c in self.b):
            raise ValueError("label of the wrong dimension")

    @property
    def k(self) -> int:
        return len(self.a)

    @classmethod
    def unit(cls, m: int, n: int) -> "GTensorCubesEl":
        return cls(m, n, (CubeN.unit(m),), (CubeN.unit(n),))

    def to_json(self) -> dict:
        return {"m": self.m, "n": self.n, "a": [c.to_json() for c in self.a], "b": [c.to_json() for c in self.b]}


def gtensor_validate(el: GTensorCubesEl) -> bool:
    """For every pair, the a-cubes or the b-cubes have disjoint interiors."""
    return all(disjoint_interiors(el.a[i], el.a[j]) or disjoint_interiors(el.b[i], el.b[j]) for i, j in pairs(el.k))


def gtensor_compose(outer: GTensorCubesEl, inners: Sequence[GTensorCubesEl]) -> GTensorCubesEl:
    """Componentwise atomic-operad composition in R1 C_m(1) x R1 C_n(1)."""
    if len(inners) != outer.k:
        raise ValueError("arity mismatch")
    a = tuple(outer.a[p].apply(c) for p, y in enumerate(inners) for c in y.a)
    b = tuple(outer.b[p].apply(c) for p, y in enumerate(inners) for c in y.b)
    return GTensorCubesEl(outer.m, outer.n, a, b)


def product_embed(el: GTensorCubesEl) -> CubeConfig:
    return CubeConfig(el.m + el.n, tuple(x.product(y) for x, y in zip(el.a, el.b)))


def split_projection(cfg: CubeConfig, m: int) -> GTensorCubesEl:
    n = cfg.n - m
    a = tuple(c.project(range(m)) for c in cfg.cubes)
    b = tuple(c.project(range(m, cfg.n)) for c in cfg.cubes)
    return GTensorCubesEl(m, n, a, b)


def random_gtensor(m: int, n: int, k: int, rng: random.Random) -> GTensorCubesEl:
    """Valid element from one of three sources: disjoint a-labels, disjoint
    b-labels, or the split of a random (m+n)-cube configuration."""
    kind = rng.randrange(3)
    if kind == 0:
        return GTensorCubesEl(m, n, random_config(m, k, rng).cubes, random_tuple(n, k, rng).cubes)
    if kind == 1:
        return GTensorCubesEl(m, n, random_tuple(m, k, rng).cubes, random_config(n, k, rng).cubes)
    return split_projection(random_config(m + n, k, rng), m)


def gtensor_suite(m: int, n: int, max_k: int = 3, samples: int = 10_000, seed: int = 0xC0FFEE) -> dict:
    """Closure, homomorphism, injectivity and splitting on seeded samples."""
    rng = random.Random(seed)
    report = {"m": m, "n": n, "max_k": max_k, "samples": samples, "seed": seed}
    checks = {"closure": 0, "homomorphism": 0, "injective": 0, "splits_back": 0}
    seen = {}
    failure = None
    for s in range(samples):
        k = rng.randint(0, max_k)
        outer = random_gtensor(m, n, k, rng)
        inners = [random_gtensor(m, n, rng.randint(0, max_k), rng) for _ in range(k)]
        out = gtensor_compose(outer, inners)
        if not gtensor_validate(out):
            failure = failure or {"check": "closure", "outer": outer.to_json(), "inners": [y.to_json() for y in inners]}
            continue
        checks["closure"] += 1
        emb = product_embed(out)
        if emb != cube_compose(product_embed(outer), [product_embed(y) for y in inners]) or not emb.is_disjoint():
            failure = failure or {"check": "homomorphism", "outer": outer.to_json()}
        else:
            checks["homomorphism"] += 1
        prev = seen.setdefault(emb, out)
        if prev != out or split_projection(emb, m) != out:
            failure = failure or {"check": "injective", "element": out.to_json()}
        else:
            checks["injective"] += 1
        cfg = random_config(m + n, rng.randint(0, max_k), rng)
        back = split_projection(cfg, m)
        if not gtensor_validate(back) or product_embed(back) != cfg:
            failure = failure or {"check": "splits_back", "config": cfg.to_json()}
        else:
            checks["splits_back"] += 1
    report["checks"] = checks
    report["passed"] = failure is None
    report["first_failure"] = failure
    return report


def cell_index_split(lam: PartialGraphLabel, m: int) -> tuple:
    """Split a K-hat^(m+n) index into its K-hat^(m) and K-hat^(n) parts
    (colours above m shifted down by m)."""
    return split_colours(lam, m)


def cell_index_join(low: PartialGraphLabel, high: PartialGraphLabel) -> PartialGraphLabel:
    return join_colours(low, high)


# ---------------------------------------------------------------------------
# A (x) R_K X with A a cube operad and X a Z/2-set


@dataclass(frozen=True)
class CubeLabelledEl:
    """Vertex cubes plus X-labels on exactly the edges whose cubes overlap.

    ``edges`` maps each pair a<b (0-based) to a label or None.
    """

    vertices: tuple
    edges: tuple

    @property
    def k(self) -> int:
        return len(self.vertices)

    def to_json(self) -> dict:
        return {
            "vertices": [c.to_json() for c in self.vertices],
            "edges": [{"a": a + 1, "b": b + 1, "label": e} for (a, b), e in zip(pairs(self.k), self.edges)
                      if e is not None],
        }


def cl_normalize(vertices: Sequence[CubeN], labels: Sequence) -> CubeLabelledEl:
    """Forget the labels of edges whose vertex cubes are already disjoint."""
    vertices = tuple(vertices)
    k = len(vertices)
    edges = tuple(None if disjoint_interiors(vertices[a], vertices[b]) else f
                  for (a, b), f in zip(pairs(k), labels))
    return CubeLabelledEl(vertices, edges)


def cl_representative(el: CubeLabelledEl, X, rng: Optional[random.Random] = None) -> REdgeLabelling:
    """A total labelling in the class of ``el``: blanks filled arbitrarily."""
    elems = X.elements()
    fill = (lambda: elems[0]) if rng is None else (lambda: rng.choice(elems))
    return REdgeLabelling(el.k, tuple(fill() if e is None else e for e in el.edges))


def cl_compose(outer: CubeLabelledEl, inners: Sequence[CubeLabelledEl], X, rng: Optional[random.Random] = None) -> CubeLabelledEl:
    if len(inners) != outer.k:
        raise ValueError("arity mismatch")
    verts = tuple(outer.vertices[p].apply(c) for p, y in enumerate(inners) for c in y.vertices)
    labels = r_compose(cl_representative(outer, X, rng), [cl_representative(y, X, rng) for y in inners])
    return cl_normalize(verts, labels.labels)


def cl_sigma(el: CubeLabelledEl, g: Perm, X) -> CubeLabelledEl:
    verts = [None] * el.k
    for i, c in enumerate(el.vertices):
        verts[g(i)] = c
    idx = pair_index(el.k)
    edges = [None] * len(el.edges)
    for (a, b), e in zip(pairs(el.k), el.edges):
        ga, gb = g(a), g(b)
        if ga < gb:
            edges[idx[ga, gb]] = e
        else:
            edges[idx[gb, ga]] = None if e is None else X.bar(e)
    return CubeLabelledEl(tuple(verts), tuple(edges))


def cl_from_cubes(alpha: CubeConfig) -> CubeLabelledEl:
    """The suboperad A: disjoint vertex cubes, hence no edge labels."""
    return cl_normalize(alpha.cubes, [None] * (alpha.k * (alpha.k - 1) // 2))


def cl_from_labels(beta: REdgeLabelling, m: int) -> CubeLabelledEl:
    """The suboperad R_K X: every vertex the full cube, every edge kept."""
    return cl_normalize((CubeN.unit(m),) * beta.k, beta.labels)


def random_cl(m: int, k: int, X, rng: random.Random) -> CubeLabelledEl:
    verts = random_tuple(m, k, rng).cubes if rng.random() < 0.5 else random_config(m, k, rng).cubes
    return cl_normalize(verts, [rng.choice(X.elements()) for _ in pairs(k)])


def cl_representative_suite(m: int, X, samples: int = 1000, seed: int = 0xC0FFEE, max_k: int = 3) -> dict:
    """Composites computed from different representatives agree."""
    rng = random.Random(seed)
    for s in range(samples):
        k = rng.randint(0, max_k)
        outer = random_cl(m, k, X, rng)
        inners = [random_cl(m, rng.randint(0, max_k), X, rng) for _ in range(k)]
        base = cl_compose(outer, inners, X)
        other = cl_compose(outer, inners, X, rng=random.Random(rng.random()))
        if base != other:
            return {"passed": False, "samples": s + 1, "outer": outer.to_json(), "first": base.to_json(),
                    "second": other.to_json()}
    return {"passed": True, "samples": samples}


def cl_interchange_check(alpha: CubeConfig, beta: REdgeLabelling, X) -> dict:
    """The interchange square for the two suboperads; also checks that vertex (i, j)
    carries alpha_i on both sides."""
    a = cl_from_cubes(alpha)
    b = cl_from_labels(beta, alpha.n)
    res = interchange_check(
        a, b,
        compose=lambda x, ys: cl_compose(x, ys, X),
        act=lambda x, g: cl_sigma(x, g, X),
        arity=lambda x: x.k,
    )
    k, l = alpha.k, beta.k
    vertex_rule = all(res.lhs.vertices[i * l + j] == alpha.cubes[i] and res.rhs.vertices[i * l + j] == alpha.cubes[i]
                      for i in range(k) for j in range(l))
    return {"equal": res.equal, "vertex_rule": vertex_rule, "lhs": res.lhs, "rhs": res.rhs}


def cl_interchange_suite(m: int, X, samples: int = 1000, seed: int = 0xC0FFEE, max_k: int = 3) -> dict:
    rng = random.Random(seed)
    for s in range(samples):
        alpha = random_config(m, rng.randint(1, max_k), rng)
        l = rng.randint(1, max_k)
        beta = REdgeLabelling(l, tuple(rng.choice(X.elements()) for _ in pairs(l)))
        out = cl_interchange_check(alpha, beta, X)
        if not (out["equal"] and out["vertex_rule"]):
            return {"passed": False, "samples": s + 1, "alpha": alpha.to_json(), "beta": beta.to_json(),
                    "lhs": out["lhs"].to_json(), "rhs": out["rhs"].to_json()}
    return {"passed": True, "samples": samples}


__all__ = [
    "tau_perm",
    "interchange_check",
    "InterchangeResult",
    "x_split",
    "y_split",
    "axis_split_interchange_suite",
    "c2_interchange_failure",
    "GTensorCubesEl",
    "gtensor_validate",
    "gtensor_compose",
    "product_embed",
    "split_projection",
    "random_gtensor",
    "gtensor_suite",
    "cell_index_split",
    "cell_index_join",
    "CubeLabelledEl",
    "cl_normalize",
    "cl_compose",
    "cl_sigma",
    "cl_from_cubes",
    "cl_from_labels",
    "cl_representative_suite",
    "cl_interchange_check",
    "cl_interchange_suite",
]
