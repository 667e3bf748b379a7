"""Acceptance criteria, one test per criterion.

Each test records a one-line verdict in ``RESULTS``; ``conftest.py`` prints
them at the end of the run, and ``python3 tests/test_acceptance.py`` prints
them directly.
"""

import random
import time
from math import comb, factorial


from operad_forge.adjoint import (
    MonoidM,
    R1Operad,
    Z2Set,
    cyclic_witness,
    finiteness_obstruction_witness,
    fixed_cyclic_labellings,
    product_trunc2,
    r2t2_equals_ru_check,
    ru_nonclosure_check,
    truncate2,
)
from operad_forge.cli import cells_suite, counterexample_c2
from operad_forge.cubes import CubeN, CubesOperad, config, decompose, random_config, random_tuple, reconstruct
from operad_forge.graphs import KHatOperad, k_enumerate_by_orders
from operad_forge.homology import nerve_homology
from operad_forge.operad import verify_poset_operad
from operad_forge.recognize import config_space_poincare, freeness_scan, recognize
from operad_forge.tensor import (
    c2_interchange_failure,
    axis_split_interchange_suite,
    gtensor_suite,
    cl_interchange_suite,
    cl_representative_suite,
)

SEED = 0xC0FFEE
RESULTS = {}


def criterion(num, title):
    def wrap(fn):
        def run():
            t0 = time.perf_counter()
            try:
                detail = fn()
            except BaseException as exc:
                RESULTS[num] = f"AC{num:<2} FAIL  {title}: {type(exc).__name__}: {str(exc)[:200]}"
                raise
            RESULTS[num] = f"AC{num:<2} PASS  {title} ({detail}; {time.perf_counter() - t0:.1f}s)"
        run.__name__ = fn.__name__
        run.__doc__ = fn.__doc__
        return run
    return wrap


@criterion(1, "operad axioms for Khat^(2) and K^(2)")
def test_ac01_axioms():
    t0 = time.perf_counter()
    parts = []
    for op in (KHatOperad(2), KHatOperad(2, total=True)):
        rep = verify_poset_operad(op, 3, samples=10_000, seed=SEED, sample_arity=4)
        assert rep.passed, [c.to_json() for c in rep.failures()]
        exhaustive = [c for c in rep.checks if c.name in ("unit", "associativity", "equivariance", "degeneracy",
                                                          "monotonicity")]
        assert all(c.mode == "exhaustive" for c in exhaustive)
        at4 = {c.name[:-2]: c for c in rep.checks if c.name.endswith("@4")}
        for law in ("associativity", "equivariance", "monotonicity", "degeneracy"):
            assert at4[law].mode.startswith("sampled") and at4[law].cases >= 10_000
        parts.append(f"{op.name}: {sum(c.cases for c in rep.checks)} cases")
    assert time.perf_counter() - t0 <= 300
    return ", ".join(parts)


@criterion(2, "carrier counts")
def test_ac02_counts():
    for n in range(1, 5):
        assert len(KHatOperad(n, total=True).elements(2)) == 2 * n
        assert len(KHatOperad(n).elements(2)) == 2 * n + 1
    direct = KHatOperad(2, total=True).elements(3)
    assert len(direct) == 48 == factorial(3) * 2 ** comb(3, 2)
    assert sorted(direct, key=lambda x: x.codes) == sorted(k_enumerate_by_orders(2, 3), key=lambda x: x.codes)
    return "2n, 2n+1 for n<=4; |K^(2)(3)| = 48"


@criterion(3, "K^(n)(2) has the homology of S^(n-1)")
def test_ac03_spheres():
    t0 = time.perf_counter()
    for n in range(1, 5):
        h = nerve_homology(KHatOperad(n, total=True).carrier(2))
        assert h.is_sphere(n - 1), (n, h)
    assert time.perf_counter() - t0 <= 10
    return "n = 1..4"


@criterion(4, "homology of K^(2)(3) and K^(3)(3) against the configuration-space series")
def test_ac04_config_space():
    t0 = time.perf_counter()
    h2 = nerve_homology(KHatOperad(2, total=True).carrier(3))
    h3 = nerve_homology(KHatOperad(3, total=True).carrier(3))
    assert h2.betti == config_space_poincare(2, 3) == (1, 3, 2)
    assert h3.betti == config_space_poincare(3, 3) == (1, 0, 3, 0, 2)
    assert not h2.has_torsion and not h3.has_torsion
    assert time.perf_counter() - t0 <= 120
    return f"{h2.betti}, {h3.betti}"


@criterion(5, "E_1 evidence for K^(1)")
def test_ac05_e1():
    for k in range(1, 5):
        ev = recognize("k", 1, k)
        assert ev["components"] == factorial(k)
        assert ev["component_homology"]["all_acyclic"]
        assert ev["sigma_on_components"]["transitive"] and ev["sigma_on_components"]["free"]
    return "k! acyclic components, free transitive action, k <= 4"


@criterion(6, "Khat^(n)(k) contractible with a Sigma_k-fixed top element")
def test_ac06_khat():
    routes = []
    for n in range(1, 4):
        for k in range(1, 4):
            ev = recognize("khat", n, k)
            top = ev["greatest_element"]
            assert top == {"k": k, "n": n, "edges": []}
            assert ev["homology"]["betti"] == [1] and ev["component_homology"]["all_acyclic"]
            assert ev["greatest_element_fixed_by_sigma"] is True
            if k >= 2:
                assert not ev["free_on_elements"]["free"] and "not E_n" in ev["verdict"]
            if "core" in ev["homology_route"]:
                routes.append(f"Khat^({n})({k}) via core")
    return "n, k <= 3" + (f"; {', '.join(routes)}" if routes else "")


@criterion(7, "free action on K^(n)(k); cyclic fixed point in RX(3)")
def test_ac07_freeness():
    for n in range(1, 4):
        for k in range(1, 5):
            assert freeness_scan(KHatOperad(n, total=True), k)["free"], (n, k)
    sets = [Z2Set.s0(), Z2Set.free_on(["x", "y"]), Z2Set.free_on(["p", "q", "r"]),
            Z2Set.from_operad(KHatOperad(2, total=True))]
    for X in sets:
        assert X.is_free()
        fixed = fixed_cyclic_labellings(X)
        for x in X.elements():
            assert cyclic_witness(X, x) in fixed
    return f"n <= 3, k <= 4; {len(sets)} free Z/2-sets"


@criterion(8, "C_2 -> RUC_2 does not commute")
def test_ac08_counterexample():
    a, b, g = counterexample_c2()
    res = ru_nonclosure_check(CubesOperad(2), a, [b, g])
    assert not res.equal
    C = CubeN.parse
    quarters = config(C("1/2", "1", "0", "1/2"), C("1/2", "1", "1/2", "1"))
    halves = config(C("0", "1", "0", "1/2"), C("0", "1", "1/2", "1"))
    assert res.lhs.labels[0] == quarters
    assert res.rhs.labels[0] == halves == b
    assert quarters != halves
    assert (0, 1) in res.differing_edges
    return f"edge {{1,2}}: quarter squares vs half squares; differing edges {len(res.differing_edges)}"


@criterion(9, "2-cogeneration round trip")
def test_ac09_roundtrip():
    rng = random.Random(SEED)
    in_domain = 0
    for n, k in ((1, 3), (2, 3), (2, 4), (3, 3)):
        for _ in range(1000):
            cfg = random_config(n, k, rng)
            assert reconstruct(decompose(cfg), n) == cfg
        for _ in range(1000):
            el = decompose(random_tuple(n, k, rng))
            back = reconstruct(el, n)
            if back is not None:
                in_domain += 1
                assert decompose(back) == el
    return f"4 x 1000 configs; {in_domain} in-domain labellings"


@criterion(10, "cellular decomposition properties over Khat^(2)(3)")
def test_ac10_cells():
    out = cells_suite(2, 3, samples=100, seed=SEED, compat_samples=1000)
    for name, ok, witness, _ in out:
        assert ok, (name, witness)
    info = {name: i for name, _, _, i in out}
    return f"{info['monotonicity']['cells']} cells x 100 configs; 1000 composites; min_cell vs scan"


@criterion(11, "atomic operads R1 M")
def test_ac11_r1():
    for M in (MonoidM.cyclic(2), MonoidM.cyclic(3), MonoidM.idempotent()):
        rep = verify_poset_operad(R1Operad(M), 3, seed=SEED)
        assert rep.passed, (M.elements, [c.to_json() for c in rep.failures()])
        assert all(c.mode == "exhaustive" for c in rep.checks)
    return "Z/2, Z/3, idempotent"


@criterion(12, "R2 T2 B = RU B for B = K^(2)")
def test_ac12_r2t2():
    res = r2t2_equals_ru_check(KHatOperad(2, total=True), 3)
    assert res["passed"], res
    return "carriers " + ", ".join(f"{k}:{v['RU']}" for k, v in res["carriers"].items())


@criterion(13, "generalized tensor product of cube operads")
def test_ac13_gtensor():
    for m, n in ((1, 1), (1, 2)):
        r = gtensor_suite(m, n, 3, samples=10_000, seed=SEED)
        assert r["samples"] == 10_000
        assert all(v == r["samples"] for v in r["checks"].values()), r
    return "(1,1), (1,2); 10^4 samples each"


@criterion(14, "interchange")
def test_ac14_interchange():
    r = axis_split_interchange_suite(1000, SEED)
    assert r["passed"] and r["samples"] == 1000
    w = c2_interchange_failure(SEED)
    assert w is not None and w["lhs"] != w["rhs"]
    X = Z2Set.s0()
    assert cl_representative_suite(1, X, 1000, SEED)["passed"]
    assert cl_interchange_suite(1, X, 1000, SEED)["passed"]
    return "axis-split 1000 samples, C_2 failure, suboperad chase"


@criterion(15, "finiteness obstruction")
def test_ac15_obstruction():
    M = MonoidM.idempotent()
    w = finiteness_obstruction_witness(product_trunc2(M), ("a", "1"))
    assert w.c_prime == ("a", "a") and w.c_prime_tau == w.c_prime and w.fixed_point
    instances = [product_trunc2(N) for N in (M, MonoidM.cyclic(2), MonoidM.cyclic(3), MonoidM.cyclic(4))]
    instances += [truncate2(KHatOperad(2)), truncate2(KHatOperad(2, total=True))]
    tested = 0
    for t in instances:
        for c in t.A2:
            w = finiteness_obstruction_witness(t, c)
            assert w.images_equal
            if w.d_injective:
                assert w.fixed_point
            tested += 1
    return f"c' = (a, a); images equal on {tested} instances"


def summary_lines():
    return [RESULTS[k] for k in sorted(RESULTS)]


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_ac"):
            try:
                fn()
            except BaseException:
                pass
    print("\n".join(summary_lines()))
