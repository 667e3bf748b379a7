
from hypothesis import given, strategies as st

from operad_forge.perm import Perm, all_perms, block_perm, block_sum

perms = st.integers(1, 6).flatmap(lambda k: st.permutations(range(k)).map(Perm))


def test_cycle_and_one_based():
    g = Perm.cycle(3, 1, 2, 3)
    assert g.one_based() == (2, 3, 1)
    assert Perm.from_one_based((2, 3, 1)) == g
    assert (g * g * g).is_identity()


def test_product_applies_right_factor_first():
    g = Perm.cycle(3, 1, 2)
    h = Perm.cycle(3, 2, 3)
    gh = g * h
    for i in range(3):
        assert gh(i) == g(h(i))


@given(perms)
def test_inverse(g):
    assert (g * g.inverse()).is_identity()
    assert (g.inverse() * g).is_identity()


def test_all_perms_count():
    assert len(list(all_perms(4))) == 24
    assert len(set(all_perms(4))) == 24


def test_block_perm_moves_blocks():
    g = Perm.cycle(2, 1, 2)
    b = block_perm(g, [2, 1])
    # block 0 (positions 0,1) lands after block 1 (position 0 in the output)
    assert b.one_based() == (2, 3, 1)


def test_block_sum():
    s = block_sum([Perm.cycle(2, 1, 2), Perm.identity(1), Perm.cycle(2, 1, 2)])
    assert s.one_based() == (2, 1, 3, 5, 4)


@given(st.lists(st.integers(0, 3), min_size=1, max_size=4), st.data())
def test_block_perm_is_homomorphism(sizes, data):
    k = len(sizes)
    g = Perm(data.draw(st.permutations(range(k))))
    h = Perm(data.draw(st.permutations(range(k))))
    hs = [sizes[h.inverse()(j)] for j in range(k)]
    assert block_perm(g * h, sizes) == block_perm(g, hs) * block_perm(h, sizes)


def test_rejects_non_permutation():
    import pytest
    with pytest.raises(ValueError):
        Perm((0, 0, 1))
