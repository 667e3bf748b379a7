import io
import json

import pytest

from operad_forge.adjoint import (
    MonoidM,
    R1Operad,
    R2Element,
    R2Operad,
    REdgeLabelling,
    ROperad,
    Z2Set,
    cyclic_witness,
    finiteness_obstruction_witness,
    fixed_cyclic_labellings,
    power_cycle,
    product_trunc2,
    r1_compose,
    r2_element_validate,
    r2t2_equals_ru_check,
    r_compose,
    r_sigma,
    r_unit_map,
    ru_idempotency_check,
    ru_operad,
    truncate2,
)
from operad_forge.graphs import KHatOperad, PartialGraphLabel
from operad_forge.operad import verify_poset_operad
from operad_forge.perm import Perm

S0 = Z2Set.s0()


def test_s0_swap():
    assert S0.bar("+") == "-"
    assert r_sigma(REdgeLabelling(2, ("+",)), Perm.cycle(2, 1, 2), S0).labels == ("-",)


def test_block_rule():
    outer = REdgeLabelling(2, ("+",))
    out = r_compose(outer, [REdgeLabelling(2, ("-",)), REdgeLabelling(1, ())])
    assert out.labels == ("-", "+", "+")
    assert r_compose(REdgeLabelling(1, ()), [out]) == out


def test_cyclic_fixed_point():
    for X in (S0, Z2Set.free_on(["x", "y"])):
        fixed = fixed_cyclic_labellings(X)
        assert fixed
        for x in X.elements():
            assert cyclic_witness(X, x) in fixed
        assert len(fixed) == len(X.elements())


def test_z2set_json():
    X = Z2Set.free_on(["p"])
    data = json.loads(json.dumps(X.to_json()))
    assert data == {"elements": ["p", "p'"], "swap": [1, 0]}
    Y = Z2Set.from_json(data)
    assert Y.elements() == X.elements() and Y.swap == X.swap


def test_rx_axioms():
    rep = verify_poset_operad(ROperad(Z2Set.free_on(["x", "y"])), 3)
    assert rep.passed, rep.failures()


def test_ru_axioms_and_unit_map():
    op = KHatOperad(2, total=True)
    ru = ru_operad(op)
    rep = verify_poset_operad(ru, 3)
    assert rep.passed
    x = PartialGraphLabel.from_edges(3, 2, [(1, 2, 1), (1, 3, 2), (2, 3, 1)])
    f = r_unit_map(op, x)
    assert f.labels == (PartialGraphLabel.from_edges(2, 2, [(1, 2, 1)]),
                        PartialGraphLabel.from_edges(2, 2, [(1, 2, 2)]),
                        PartialGraphLabel.from_edges(2, 2, [(1, 2, 1)]))


def test_ru_idempotent():
    assert ru_idempotency_check(KHatOperad(1, total=True))["passed"]


def test_monoid_csv_round_trip():
    M = MonoidM.cyclic(3)
    again = MonoidM.from_csv(io.StringIO(M.to_csv()))
    assert again.elements == M.elements and again.mul("a", "a2") == "1"


def test_monoid_rejects_non_associative():
    with pytest.raises(ValueError):
        MonoidM(("1", "a", "b"), {("1", x): x for x in "1ab"} | {(x, "1"): x for x in "1ab"}
                | {("a", "a"): "b", ("a", "b"): "a", ("b", "a"): "a", ("b", "b"): "a"})


def test_r1_example():
    M = MonoidM.cyclic(2)
    assert r1_compose(M, ("a",), [("a", "1")]) == ("1", "a")
    assert r1_compose(M, ("1", "1"), [("a",), ("1", "a")]) == ("a", "1", "a")


@pytest.mark.parametrize("M", [MonoidM.cyclic(2), MonoidM.cyclic(3), MonoidM.idempotent()], ids=str)
def test_r1_axioms(M):
    assert verify_poset_operad(R1Operad(M), 3).passed


def test_r2_vertex_condition():
    t = product_trunc2(MonoidM.cyclic(2))
    assert r2_element_validate(t, R2Element(("a", "1"), (("a", "1"),)))
    assert not r2_element_validate(t, R2Element(("1", "1"), (("a", "1"),)))


def test_r2t2_on_graph_operads():
    for op in (KHatOperad(2, total=True), KHatOperad(2)):
        res = r2t2_equals_ru_check(op, 3)
        assert res["passed"], res


def test_r2t2_fails_with_big_arity_one():
    res = r2t2_equals_ru_check(R1Operad(MonoidM.cyclic(2)), 2)
    assert not res["passed"]
    assert not res["arity_one_trivial"]


def test_r2_operad_axioms():
    t = truncate2(KHatOperad(1, total=True))
    assert verify_poset_operad(R2Operad(t), 3).passed


def test_power_cycle():
    assert power_cycle(MonoidM.idempotent(), "a") == (1, 1)
    assert power_cycle(MonoidM.cyclic(3), "a") == (1, 3)


def test_obstruction_idempotent():
    M = MonoidM.idempotent()
    w = finiteness_obstruction_witness(product_trunc2(M), ("a", "1"))
    assert (w.m, w.r) == (1, 1)
    assert w.c_prime == ("a", "a") and w.c_prime_tau == w.c_prime
    assert w.images_equal and w.fixed_point


def test_obstruction_noninjective_draws_no_conclusion():
    M = MonoidM.cyclic(2)
    base = product_trunc2(M)
    t = type(base)(A1=M, swap=base.swap, left=base.left, right=base.right, d=lambda c: ("1", "1"),
                   A2=base.A2, name="collapsed")
    w = finiteness_obstruction_witness(t, ("a", "1"))
    assert w.images_equal and w.d_injective is False and w.fixed_point is None
