from operad_forge.adjoint import MonoidM, R1Operad
from operad_forge.graphs import KHatOperad, PartialGraphLabel
from operad_forge.operad import MutatedOperad, operad_map_check, verify_poset_operad

E = PartialGraphLabel.from_edges


def test_small_operad_passes_exhaustively():
    rep = verify_poset_operad(KHatOperad(1), 3)
    assert rep.passed
    assert {c.mode for c in rep.checks} == {"exhaustive"}


def test_sampling_mode_is_reported():
    rep = verify_poset_operad(KHatOperad(2), 2, exhaustive_limit=10, samples=300)
    assert rep.passed
    assert any(c.mode.startswith("sampled") for c in rep.checks)


def test_mutation_is_caught():
    base = KHatOperad(2)
    x = E(2, 2, [(1, 2, 1)])
    ys = [E(1, 2, []), E(2, 2, [(1, 2, 2)])]
    wrong = E(3, 2, [(1, 2, 1), (1, 3, 1), (2, 3, 1)])
    assert base.compose(x, ys) != wrong
    rep = verify_poset_operad(MutatedOperad(base, x, ys, wrong), 3)
    assert not rep.passed
    bad = rep.failures()
    assert bad and all(c.witness is not None for c in bad)
    names = {c.name for c in bad}
    assert names & {"associativity", "equivariance", "monotonicity"}


def test_report_json_shape():
    rep = verify_poset_operad(R1Operad(MonoidM.cyclic(2)), 2)
    data = rep.to_json()
    assert data["checks"][0]["status"] in ("pass", "fail")


def test_identity_map_is_operad_map():
    op = KHatOperad(1)
    res = operad_map_check(op, op, lambda x: x, 3)
    assert all(r.passed for r in res)


def test_forgetting_colours_is_not_a_map_into_k1_with_wrong_orientation():
    src, dst = KHatOperad(1, total=True), KHatOperad(1, total=True)
    flip = lambda x: PartialGraphLabel(x.k, x.n, tuple(-c for c in x.codes))
    res = operad_map_check(src, dst, flip, 3)
    # reversing every edge is a map of operads: composition and action commute with it
    assert all(r.passed for r in res)
    shift = lambda x: PartialGraphLabel(x.k, x.n, tuple(abs(c) for c in x.codes))
    assert not all(r.passed for r in operad_map_check(src, dst, shift, 3))
