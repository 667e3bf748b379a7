import numpy as np
import pytest

from operad_forge.poset import (
    FinPoset,
    PosetError,
    beat_point_core,
    has_greatest_element,
    has_least_element,
    ordinal_join,
)


def divisors(n):
    return FinPoset.from_elements([d for d in range(1, n + 1) if n % d == 0], lambda a, b: b % a == 0)


def test_rejects_non_antisymmetric():
    with pytest.raises(PosetError):
        FinPoset.from_relation(2, [(0, 1), (1, 0)])


def test_linear_extension_respects_order():
    p = divisors(60)
    order = list(p.linear_extension())
    pos = {v: i for i, v in enumerate(order)}
    for a, b in zip(*np.nonzero(p.strict())):
        assert pos[a] < pos[b]


def test_height_and_extrema():
    p = divisors(12)   # 1 | 2 | 4 | 12 is a longest chain
    assert p.height() == 4
    assert p.label(has_greatest_element(p)) == 12
    assert p.label(has_least_element(p)) == 1
    assert has_greatest_element(FinPoset.antichain(2)) is None


def test_components():
    p = ordinal_join(FinPoset.antichain(2), FinPoset.antichain(1))
    assert len(p.components()) == 1
    assert len(FinPoset.antichain(3).components()) == 3


def test_beat_point_core_of_cone_is_point():
    assert len(beat_point_core(divisors(30))) == 1


def test_json_round_trip():
    p = divisors(18)
    q = FinPoset.from_json(p.to_json())
    assert np.array_equal(p.leq, q.leq)
