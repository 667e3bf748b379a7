import random

import pytest
from hypothesis import given, settings, strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form

from operad_forge.complex import BudgetExceeded, SimplicialComplexFin, order_complex
from operad_forge.homology import HomologyResult, homology, nerve_homology
from operad_forge.poset import FinPoset, ordinal_join
from operad_forge.smith import smith_invariants


def sympy_invariants(rows):
    m = Matrix(rows)
    if m.rows == 0 or m.cols == 0:
        return []
    d = smith_normal_form(m, domain=ZZ)
    return sorted(abs(int(d[i, i])) for i in range(min(d.shape)) if d[i, i] != 0)


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 6).flatmap(
    lambda r: st.integers(1, 6).flatmap(
        lambda c: st.lists(st.lists(st.integers(-6, 6), min_size=c, max_size=c), min_size=r, max_size=r))))
def test_smith_matches_sympy(rows):
    assert smith_invariants(rows) == sympy_invariants(rows)


def test_smith_known():
    assert smith_invariants([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]) == [2, 6, 12]


def sphere(n):
    """Boundary of the (n+1)-simplex."""
    return SimplicialComplexFin.from_facets([tuple(v for v in range(n + 2) if v != d) for d in range(n + 2)])


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_simplex_boundary_is_sphere(n):
    assert homology(sphere(n).chain_complex()).is_sphere(n)


def rp2():
    facets = ["123", "134", "145", "156", "162", "235", "346", "452", "563", "624"]
    return SimplicialComplexFin.from_facets([tuple(sorted(int(v) - 1 for v in f)) for f in facets])


def test_projective_plane_torsion():
    h = homology(rp2().chain_complex())
    assert h.betti == (1, 0)
    assert h.torsion == ((), (2,))


def test_nerve_of_suspension():
    # ordinal join of two 2-antichains is the nerve of a circle
    p = ordinal_join(FinPoset.antichain(2), FinPoset.antichain(2))
    assert nerve_homology(p).is_sphere(1)
    p = ordinal_join(p, FinPoset.antichain(2))
    assert nerve_homology(p).is_sphere(2)


def test_core_route_agrees_with_full_nerve():
    rng = random.Random(3)
    for _ in range(20):
        n = 9
        rel = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < 0.3]
        p = FinPoset.from_relation(n, rel)
        assert nerve_homology(p, core="never") == nerve_homology(p, core="always")


def test_budget_raises():
    p = ordinal_join(FinPoset.antichain(3), FinPoset.antichain(3))
    with pytest.raises(BudgetExceeded):
        order_complex(p, budget=5)


def test_homology_json_round_trip():
    h = HomologyResult((1, 0), ((), (2,)))
    assert HomologyResult.from_json(h.to_json()) == h
