import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nchull import BudgetError, Partition, build_lattice, is_noncrossing, join, meet, parse_shape, realize
from nchull.configuration import HullConfig, enumerate_shapes
from nchull.lattice import (
    blocks_cross,
    embedding_check,
    enumerate_noncrossing,
    is_graded,
    is_rank_symmetric,
    join_partitions,
    rank_polynomial,
    refinement_covers,
)
from nchull.oracle import nc_lattice_oracle


def P(text):
    return Partition.parse(text)


def test_partition_wire_format():
    p = P("3,4,5|0,1|2")
    assert str(p) == "0,1|2|3,4,5"
    assert P(str(p)) == p
    assert p.rank == 3 and p.n == 6
    with pytest.raises(ValueError):
        P("0,,1")
    with pytest.raises(ValueError):
        P("0,1|1,2").validate(3)


def test_blocks_cross_examples():
    tri = parse_shape("[1;1;1]")
    assert blocks_cross(tri, [0, 3], [1, 4])
    assert blocks_cross(tri, [0, 2], [1])  # 1 sits between 0 and 2
    assert not blocks_cross(tri, [0, 1], [2, 3])
    with pytest.raises(ValueError):
        blocks_cross(tri, [], [1])
    with pytest.raises(ValueError):
        blocks_cross(tri, [0, 1], [1, 2])


def test_is_noncrossing_examples():
    tri = parse_shape("[1;1;1]")
    assert not is_noncrossing(tri, P("0,2,4|1|3|5"))
    assert is_noncrossing(tri, Partition.singletons(6))
    assert is_noncrossing(parse_shape("[0;0;0;0]"), P("0,1|2,3"))
    assert not is_noncrossing(parse_shape("[0;0;0;0]"), P("0,2|1,3"))


@pytest.mark.parametrize(
    "text,size,ranks",
    [
        ("segment:5", 16, [1, 4, 6, 4, 1]),
        ("[0;0;0;0;0]", 42, [1, 10, 20, 10, 1]),
        ("[1;1;1]", 95, [1, 12, 34, 35, 12, 1]),
        ("[0;0;0;0]", 14, [1, 6, 6, 1]),
    ],
)
def test_sizes_and_ranks(text, size, ranks):
    lat = build_lattice(parse_shape(text))
    assert len(lat) == size
    assert rank_polynomial(lat) == ranks
    assert is_graded(lat)
    assert is_rank_symmetric(lat) == (ranks == ranks[::-1])


def test_bottom_top_and_order():
    lat = build_lattice(parse_shape("[0;1;1]"))
    assert lat.elements[lat.bottom] == Partition.singletons(lat.n)
    assert lat.elements[lat.top] == Partition.single_block(lat.n)
    assert all(lat.ranks[i] <= lat.ranks[i + 1] for i in range(len(lat) - 1))


@pytest.mark.parametrize("cfg", [c for n in range(2, 7) for c in enumerate_shapes(n, dedupe=True)], ids=str)
def test_lattice_matches_oracle(cfg):
    lat = build_lattice(cfg)
    truth = {Partition.of(p) for p in nc_lattice_oracle(realize(cfg))}
    assert set(lat.elements) == truth
    assert lat.covers == refinement_covers(lat)


def test_filter_and_recursive_agree_on_overlap():
    for cfg in enumerate_shapes(9, dedupe=True)[:12]:
        assert enumerate_noncrossing(cfg, "filter") == enumerate_noncrossing(cfg, "recursive")
    with pytest.raises(ValueError):
        enumerate_noncrossing(parse_shape("[0;0;0]"), "magic")


def test_large_shape_uses_recursive_generator():
    assert len(build_lattice(parse_shape("[0;3;2;1;2]"), max_n=13)) == 289911


def test_budget_is_loud():
    with pytest.raises(BudgetError):
        build_lattice(parse_shape("[0;3;2;1;2]"))
    with pytest.raises(BudgetError):
        build_lattice(parse_shape("[1;1;1]"), max_partitions=50)


def test_join_examples():
    seg = build_lattice(HullConfig.segment(4))
    assert seg.elements[join(seg, seg.index_of(P("0,1|2|3")), seg.index_of(P("0|1,2|3")))] == P("0,1,2|3")
    tri = build_lattice(parse_shape("[1;1;1]"))
    a, b = tri.index_of(P("0,3|1|2|4|5")), tri.index_of(P("0|1,4|2|3|5"))
    # the merged block {0,1,3,4} has point 5 on its edge 4-0
    assert tri.elements[join(tri, a, b)] == P("0,1,3,4,5|2")
    for x in range(len(tri)):
        assert meet(tri, x, tri.bottom) == tri.bottom
        assert join(tri, x, tri.top) == tri.top


def test_join_partitions_without_lattice():
    tri = parse_shape("[1;1;1]")
    assert join_partitions(tri, [P("0,3|1|2|4|5"), P("0|1,4|2|3|5")]) == P("0,1,3,4,5|2")
    assert join_partitions(tri, []) == Partition.singletons(6)


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_lattice_laws(data):
    lat = build_lattice(parse_shape("[1;0;2]"))
    a, b, c = (data.draw(st.integers(0, len(lat) - 1)) for _ in range(3))
    assert join(lat, a, b) == join(lat, b, a)
    assert meet(lat, a, b) == meet(lat, b, a)
    assert join(lat, a, join(lat, b, c)) == join(lat, join(lat, a, b), c)
    assert meet(lat, a, meet(lat, b, c)) == meet(lat, meet(lat, a, b), c)
    assert join(lat, a, a) == a == meet(lat, a, a)
    assert join(lat, a, meet(lat, a, b)) == a == meet(lat, a, join(lat, a, b))
    j = join(lat, a, b)
    assert lat.leq(a, j) and lat.leq(b, j)


def test_embedding_examples():
    assert embedding_check(HullConfig.segment(3), parse_shape("[0;0;0]"))
    assert embedding_check(parse_shape("[1;1;1]"), parse_shape("[0;0;0;0;0;0]"))
    assert embedding_check(parse_shape("[1;1;1]"), parse_shape("[1;1;1]"))
    with pytest.raises(ValueError):
        embedding_check(parse_shape("[0;0;0;0;0;0]"), parse_shape("[1;1;1]"))


def test_json_and_dot_are_deterministic():
    lat = build_lattice(parse_shape("[0;1;1]"))
    d = lat.to_json()
    assert d["elements"][0] == "0|1|2|3|4" and d["shape"] == "[0;1;1]"
    assert lat.to_dot() == build_lattice(parse_shape("[0;1;1]")).to_dot()
    assert lat.to_dot().count("->") == len(lat.covers)


def test_pure_python_backend_matches(monkeypatch):
    import nchull.lattice as L
    from nchull import _pykernels

    monkeypatch.setattr(L, "backend_for", lambda n: _pykernels)
    slow = L.build_lattice(parse_shape("[1;1;1]"))
    monkeypatch.undo()
    fast = L.build_lattice(parse_shape("[1;1;1]"))
    assert slow.masks == fast.masks and slow.covers == fast.covers
