import json
import random
from fractions import Fraction

import pytest

from operad_forge.cubes import (
    CubeConfig,
    CubeN,
    CubesOperad,
    NoLeastCellError,
    cell_contains,
    config,
    config_preoperad_check,
    cube_compose,
    cube_degeneracy,
    cube_sigma,
    decompose,
    disjoint_interiors,
    min_cell,
    min_edge_labels,
    random_config,
    random_points,
    random_tuple,
    reconstruct,
    separation_axes,
)
from operad_forge.graphs import KHatOperad, PartialGraphLabel, khat_leq, k_validate
from operad_forge.perm import Perm

C = CubeN.parse
LEFT, RIGHT = C("0", "1/2", "0", "1"), C("1/2", "1", "0", "1")
BOTTOM, TOP = C("0", "1", "0", "1/2"), C("0", "1", "1/2", "1")
E = PartialGraphLabel.from_edges


def test_parse_and_json():
    c = C("1/3", "2/3", "0", "1")
    assert c.intervals[0] == (Fraction(1, 3), Fraction(2, 3))
    data = json.loads(json.dumps(c.to_json()))
    assert data == {"n": 2, "intervals": [["1/3", "2/3"], ["0", "1"]]}
    assert CubeN.from_json(data) == c
    cfg = config(LEFT, RIGHT)
    assert CubeConfig.from_json(cfg.to_json()) == cfg


def test_counterexample_composition():
    alpha = config(RIGHT, LEFT)
    out = cube_compose(alpha, [config(BOTTOM, TOP), config(TOP)])
    assert out == config(C("1/2", "1", "0", "1/2"), C("1/2", "1", "1/2", "1"), C("0", "1/2", "1/2", "1"))


def test_unit_and_associativity(rng):
    op = CubesOperad(2)
    for _ in range(200):
        x = random_config(2, rng.randint(0, 3), rng)
        assert cube_compose(op.unit(), [x]) == x
        ys = [random_config(2, rng.randint(0, 2), rng) for _ in range(x.k)]
        zs = [random_config(2, rng.randint(0, 2), rng) for _ in range(sum(y.k for y in ys))]
        it = iter(zs)
        left = cube_compose(cube_compose(x, ys), zs)
        right = cube_compose(x, [cube_compose(y, [next(it) for _ in range(y.k)]) for y in ys])
        assert left == right


def test_interiors():
    assert not disjoint_interiors(LEFT, LEFT)
    assert disjoint_interiors(LEFT, RIGHT)
    assert separation_axes(RIGHT, LEFT) == [(1, 2)]
    assert separation_axes(BOTTOM, TOP) == [(2, 1)]
    assert separation_axes(LEFT, C("1/4", "3/4", "0", "1")) == []


def test_cell_examples():
    cfg = config(RIGHT, LEFT)
    assert cell_contains(PartialGraphLabel.unlabelled(2, 2), config(LEFT, LEFT))
    assert cell_contains(E(2, 2, [(2, 1, 1)]), cfg)
    assert not cell_contains(E(2, 2, [(1, 2, 1)]), cfg)


def test_min_cell_examples():
    assert min_cell(config(RIGHT, LEFT), 2) == E(2, 2, [(2, 1, 1)])
    assert min_cell(config(BOTTOM, TOP), 2) == E(2, 2, [(1, 2, 2)])
    composite = config(C("1/2", "1", "0", "1/2"), C("1/2", "1", "1/2", "1"), C("0", "1/2", "1/2", "1"))
    assert min_cell(composite, 2) == E(3, 2, [(1, 2, 2), (3, 1, 1), (3, 2, 1)])


def test_min_cell_when_edge_minima_are_cyclic():
    cfg = config(C("1/2", "3/5", "4/5", "1"), C("7/10", "1", "0", "1/5"), C("2/5", "4/5", "2/5", "3/5"))
    assert min_edge_labels(cfg) == (1, -2, 2)   # 1->2 on axis 1, 3->1 and 2->3 on axis 2: a cycle
    lam = min_cell(cfg, 2)
    assert k_validate(lam) and cell_contains(lam, cfg)
    for x in KHatOperad(2, total=True).elements(3):
        if cell_contains(x, cfg):
            assert khat_leq(lam, x)


def test_min_cell_is_least_by_scan(rng):
    total = KHatOperad(2, total=True).elements(3)
    for _ in range(100):
        cfg = random_config(2, 3, rng)
        containing = [x for x in total if cell_contains(x, cfg)]
        least = [x for x in containing if all(khat_leq(x, y) for y in containing)]
        try:
            m = min_cell(cfg, 2)
        except NoLeastCellError:
            assert not least
            continue
        assert least == [m]


def test_min_cell_equivariant(rng):
    for _ in range(100):
        cfg = random_config(2, 3, rng)
        g = Perm(tuple(rng.sample(range(3), 3)))
        from operad_forge.graphs import khat_sigma
        assert min_cell(cube_sigma(cfg, g), 2) == khat_sigma(min_cell(cfg, 2), g)


@pytest.mark.parametrize("n,k", [(1, 3), (2, 3), (2, 4), (3, 3)])
def test_round_trip(n, k):
    rng = random.Random(0xC0FFEE)
    for _ in range(300):
        cfg = random_config(n, k, rng)
        assert reconstruct(decompose(cfg), n) == cfg


def test_reconstruct_rejects_overlap():
    assert reconstruct(decompose(config(LEFT, LEFT)), 2) is None
    assert reconstruct(decompose(config(LEFT)), 2) == config(LEFT)


def test_degeneracy_and_sigma():
    cfg = config(LEFT, RIGHT)
    assert cube_degeneracy(cfg, 0) == config(RIGHT)
    assert cube_sigma(cfg, Perm.cycle(2, 1, 2)) == config(RIGHT, LEFT)


def test_point_configs(rng):
    p = random_points(2, 3, rng)
    assert p.is_valid() and p.delete(0).k == 2
    assert config_preoperad_check(2, 3, samples=50)["passed"]


def test_random_tuple_may_overlap(rng):
    assert any(not random_tuple(2, 3, rng).is_disjoint() for _ in range(50))
