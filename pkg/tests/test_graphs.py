import json
import random
from math import comb, factorial

import pytest
from hypothesis import given, settings, strategies as st

from operad_forge.complex import BudgetExceeded
from operad_forge.graphs import (
    KHatOperad,
    PartialGraphLabel,
    is_acyclic,
    join_colours,
    k_enumerate,
    k_enumerate_by_orders,
    k_validate,
    khat_compose,
    khat_degeneracy,
    khat_enumerate,
    khat_leq,
    khat_sigma,
    khat_unit,
    khat_validate,
    linear_order,
    random_label,
    split_colours,
)
from operad_forge.perm import Perm, block_perm, block_sum

E = PartialGraphLabel.from_edges


def test_example_validation():
    assert khat_validate(E(3, 2, [(1, 2, 1), (1, 3, 2), (2, 3, 1)]))
    cyclic = PartialGraphLabel(3, 2, (1, -1, 1))   # 1->2, 3->1, 2->3
    assert not is_acyclic(3, cyclic.codes)
    assert not khat_validate(cyclic)
    assert not khat_validate(E(2, 1, [(1, 2, 2)]))   # colour out of range


def test_partial_labels_are_not_total():
    x = E(3, 2, [(1, 2, 1)])
    assert khat_validate(x) and not k_validate(x)
    assert linear_order(E(3, 1, [(2, 1, 1), (2, 3, 1), (1, 3, 1)])) == (1, 0, 2)


def test_sigma_pushforward():
    t = E(3, 1, [(1, 2, 1), (1, 3, 1), (2, 3, 1)])
    out = khat_sigma(t, Perm.cycle(3, 1, 2, 3))
    assert linear_order(out)[0] == 1   # the source moved from vertex 1 to vertex 2


def test_order_on_edges():
    top = PartialGraphLabel.unlabelled(2, 2)
    for c in (1, 2):
        assert khat_leq(E(2, 2, [(1, 2, c)]), top)
    assert khat_leq(E(2, 2, [(1, 2, 1)]), E(2, 2, [(2, 1, 2)]))
    assert not khat_leq(E(2, 2, [(1, 2, 1)]), E(2, 2, [(2, 1, 1)]))
    assert khat_leq(E(2, 2, [(1, 2, 1)]), E(2, 2, [(1, 2, 2)]))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_arity_two_counts(n):
    assert len(k_enumerate(n, 2)) == 2 * n
    assert len(khat_enumerate(n, 2)) == 2 * n + 1


@pytest.mark.parametrize("n,k", [(1, 3), (2, 3), (3, 3), (1, 4), (2, 4)])
def test_total_count_against_orders(n, k):
    direct = k_enumerate(n, k)
    assert len(direct) == factorial(k) * n ** comb(k, 2)
    assert direct == k_enumerate_by_orders(n, k)


def test_enumeration_budget():
    with pytest.raises(BudgetExceeded):
        khat_enumerate(3, 4, budget=100)


def test_compose_unit():
    x = E(3, 2, [(1, 2, 1), (3, 1, 2)])
    u = khat_unit(2)
    assert khat_compose(u, [x]) == x
    assert khat_compose(x, [u, u, u]) == x


def test_compose_blocks():
    x = E(2, 2, [(2, 1, 2)])
    y = E(2, 2, [(1, 2, 1)])
    z = E(1, 2, [])
    out = khat_compose(x, [y, z])
    assert out == E(3, 2, [(1, 2, 1), (3, 1, 2), (3, 2, 2)])


def test_degeneracy_drops_vertex():
    x = E(3, 2, [(1, 2, 1), (1, 3, 2), (2, 3, 1)])
    assert khat_degeneracy(x, 0) == E(2, 2, [(1, 2, 1)])
    assert khat_degeneracy(x, 1) == E(2, 2, [(1, 2, 2)])


def test_json_round_trip():
    x = E(3, 2, [(1, 2, 1), (3, 1, 2)])
    data = json.loads(json.dumps(x.to_json()))
    assert data["edges"][1] == {"a": 1, "b": 3, "dir": "ba", "color": 2}
    assert PartialGraphLabel.from_json(data) == x


def test_colour_split_round_trip(rng):
    for _ in range(200):
        x = random_label(4, 3, rng)
        low, high = split_colours(x, 1)
        assert join_colours(low, high) == x


labels = st.tuples(st.integers(1, 4), st.integers(1, 3), st.integers(0, 10 ** 6)).map(
    lambda t: random_label(t[0], t[1], random.Random(t[2])))


@settings(max_examples=200, deadline=None)
@given(labels, st.data())
def test_action_is_group_action(x, data):
    g = Perm(data.draw(st.permutations(range(x.k))))
    h = Perm(data.draw(st.permutations(range(x.k))))
    assert khat_validate(khat_sigma(x, g))
    assert khat_sigma(khat_sigma(x, h), g) == khat_sigma(x, g * h)


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 3), st.integers(1, 3), st.integers(0, 10 ** 6), st.data())
def test_equivariance_property(k, n, seed, data):
    rng = random.Random(seed)
    x = random_label(k, n, rng)
    ys = [random_label(rng.randint(0, 2), n, rng) for _ in range(k)]
    g = Perm(data.draw(st.permutations(range(k))))
    hs = [Perm(data.draw(st.permutations(range(y.k)))) for y in ys]
    sizes = [y.k for y in ys]
    lhs = khat_compose(khat_sigma(x, g), [ys[g.inverse()(j)] for j in range(k)])
    assert lhs == khat_sigma(khat_compose(x, ys), block_perm(g, sizes))
    lhs = khat_compose(x, [khat_sigma(y, h) for y, h in zip(ys, hs)])
    assert lhs == khat_sigma(khat_compose(x, ys), block_sum(hs))


def test_carrier_is_poset_with_top():
    op = KHatOperad(2)
    P = op.carrier(3)
    assert P.size == 109
    top = [i for i in range(P.size) if P.leq[:, i].all()]
    assert [P.label(i) for i in top] == [PartialGraphLabel.unlabelled(3, 2)]
