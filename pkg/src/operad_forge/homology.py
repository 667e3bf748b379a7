"""Integer homology of chain complexes and of poset nerves."""

import json
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .complex import (
    DEFAULT_SIMPLEX_BUDGET,
    BudgetExceeded,
    ChainComplexZ,
    SparseIntMatrix,
    count_chains,
    order_complex,
)
from .poset import FinPoset, beat_point_core
from .smith import smith_invariants


@dataclass(frozen=True)
class HomologyResult:
    betti: tuple
    torsion: tuple = ()
    route: str = field(default="", compare=False)

    def __post_init__(self):
        betti = [int(b) for b in self.betti]
        torsion = [tuple(int(t) for t in ts) for ts in self.torsion]
        width = max(len(betti), len(torsion))
        betti += [0] * (width - len(betti))
        torsion += [()] * (width - len(torsion))
        while width > 1 and betti[-1] == 0 and not torsion[-1]:
            betti.pop()
            torsion.pop()
            width -= 1
        object.__setattr__(self, "betti", tuple(betti))
        object.__setattr__(self, "torsion", tuple(torsion))

    @property
    def euler_characteristic(self) -> int:
        return sum((-1) ** d * b for d, b in enumerate(self.betti))

    @property
    def has_torsion(self) -> bool:
        return any(self.torsion)

    def reduced_betti(self) -> tuple:
        if not self.betti or self.betti == (0,):
            return (0,)
        return (self.betti[0] - 1,) + self.betti[1:]

    def is_acyclic(self) -> bool:
        """Trivial reduced homology (the homology of a point)."""
        return self.betti == (1,) and not self.has_torsion

    def is_sphere(self, dim: int) -> bool:
        if dim == 0:
            return self.betti == (2,) and not self.has_torsion
        return self.betti == (1,) + (0,) * (dim - 1) + (1,) and not self.has_torsion

    def to_json(self) -> dict:
        return {"betti": list(self.betti), "torsion": [list(t) for t in self.torsion]}

    @classmethod
    def from_json(cls, data) -> "HomologyResult":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(tuple(data["betti"]), tuple(tuple(t) for t in data.get("torsion", ())))


def _rank_and_torsion(mat: SparseIntMatrix, skip=None):
    """Rank, torsion coefficients (> 1) and pivot rows of one boundary map.

    ``pivot_rows`` is None when the exact Smith form had to be used.
    """
    if mat.shape[0] == 0 or mat.shape[1] == 0 or mat.nnz == 0:
        return 0, (), np.zeros(0, dtype=np.int64), "empty"
    rank, lows, status = kernels.reduce_columns(mat.indptr, mat.indices, mat.data, mat.shape[0], skip)
    if status == kernels.REDUCE_OK:
        return rank, (), lows, kernels.BACKEND
    factors = smith_invariants(mat)
    return len(factors), tuple(f for f in factors if f > 1), None, "smith"


def homology(c: ChainComplexZ) -> HomologyResult:
    """Betti numbers and torsion of an integer chain complex.

    Each boundary map is first column-reduced with unit pivots (fast kernel);
    any map on which that fails is handed to the exact Smith normal form.
    Reduction runs from the top degree down so that columns already known to
    reduce to zero are skipped.
    """
    top = len(c.boundaries)
    ranks = [0] * (top + 2)
    torsion = [()] * (top + 1)
    routes = set()
    skip_next = None
    for d in range(top, 0, -1):
        mat = c.boundaries[d - 1]
        rank, tors, lows, route = _rank_and_torsion(mat, skip_next)
        routes.add(route)
        ranks[d] = rank
        torsion[d - 1] = tors
        if lows is not None and lows.size:
            skip_next = np.zeros(mat.shape[0], dtype=bool)
            skip_next[lows] = True
        else:
            skip_next = None
    betti = [c.dims[d] - ranks[d] - ranks[d + 1] for d in range(top + 1)]
    result = HomologyResult(tuple(betti), tuple(torsion), route="+".join(sorted(routes - {"empty"})) or "trivial")
    chi = sum((-1) ** d * n for d, n in enumerate(c.dims))
    if result.euler_characteristic != chi:
        raise AssertionError(f"Euler characteristic mismatch: {result.euler_characteristic} != {chi}")
    return result


def nerve_homology(p: FinPoset, budget: int = DEFAULT_SIMPLEX_BUDGET, core: str = "auto") -> HomologyResult:
    """Homology of the order complex of ``p``.

    ``core``: ``"never"`` always builds the full nerve; ``"always"`` first
    shrinks ``p`` to a beat-point core (same homotopy type); ``"auto"`` does so
    only when the full nerve would exceed ``budget``.
    """
    if p.size == 0:
        return HomologyResult((0,), route="empty")
    work = p
    route = "nerve"
    if core == "always" or (core == "auto" and int(count_chains(p).sum()) > budget):
        keep = beat_point_core(p)
        work = p.subposet(keep)
        route = f"core {p.size}->{work.size}, nerve"
    elif core not in ("auto", "never"):
        raise ValueError(f"unknown core mode {core!r}")
    cx = order_complex(work, budget=budget)
    res = homology(cx.chain_complex())
    return HomologyResult(res.betti, res.torsion, route=f"{route} ({sum(cx.counts())} simplices, {res.route})")


__all__ = [
    "HomologyResult",
    "homology",
    "nerve_homology",
    "BudgetExceeded",
]
