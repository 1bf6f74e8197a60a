import pytest

from nchull import Partition, build_lattice, parse_shape
from nchull.configuration import HullConfig, enumerate_shapes
from nchull.lattice import rank_polynomial
from nchull.scd import (
    ChainDecomposition,
    NoBlankSideError,
    alpha,
    beta,
    bool_scd,
    decompose,
    interval_indices,
    interval_product_iso,
    product_scd,
    scd,
    verify_scd,
)


def test_bool_scd_sizes():
    assert sorted(len(c) for c in bool_scd(2)) == [1, 3]
    assert sorted((len(c) for c in bool_scd(3)), reverse=True) == [4, 2, 2]
    chains = bool_scd(4)
    assert len(chains) == 6
    assert sorted(s for c in chains for s in c) == sorted(
        frozenset(i for i in range(4) if b >> i & 1) for b in range(16)
    ) or len({s for c in chains for s in c}) == 16


def _chain(length):
    return [list(range(length))]


def test_product_scd_hooks():
    ident = lambda x: x  # noqa: E731
    assert [len(c) for c in product_scd(_chain(1), 0, _chain(4), 3, ident, ident)] == [4]
    assert sorted(len(c) for c in product_scd(_chain(3), 2, _chain(3), 2, ident, ident)) == [1, 3, 5]
    b1 = [[False, True]]
    sizes = sorted(len(c) for c in product_scd(b1, 1, b1, 1, int, int))
    assert sizes == sorted(len(c) for c in bool_scd(2))


def test_product_scd_rejects_bad_chains():
    ident = lambda x: x  # noqa: E731
    with pytest.raises(ValueError):
        product_scd([[0, 2]], 2, _chain(1), 0, ident, ident)
    with pytest.raises(ValueError):
        product_scd([[0, 1]], 3, _chain(1), 0, ident, ident)


def test_alpha_beta_on_example():
    c = parse_shape("[0;3;2;1;2]")
    assert (0, 7) in alpha(c, 3, 2).blocks
    assert beta(c, 3, 2) == Partition.of([range(0, 8), range(8, 13)])
    assert (0, 1) in alpha(c, 2, 0).blocks
    with pytest.raises(IndexError):
        alpha(c, 1, 0)
    with pytest.raises(ValueError):
        alpha(parse_shape("[1;0;0]"), 2, 0)


@pytest.mark.parametrize("text", ["[0;0;0]", "[0;1;1]", "[0;2;0;1]", "[0;0;2;1]", "[0;1;1;1;0]"])
def test_decompose_partitions_lattice(text):
    cfg = parse_shape(text)
    lat = build_lattice(cfg)
    parts = decompose(cfg, lat)
    seen = list(parts["X"])
    for i, j, elems in parts["intervals"]:
        lo, hi = lat.index_of(alpha(cfg, i, j)), lat.index_of(beta(cfg, i, j))
        assert sorted(elems) == sorted(x for x in range(len(lat)) if lat.leq(lo, x) and lat.leq(x, hi))
        seen += elems
    assert sorted(seen) == list(range(len(lat)))
    if text == "[0;0;0]":
        assert len(parts["X"]) == 4 and [len(e) for *_, e in parts["intervals"]] == [1]


def test_decompose_needs_blank_side_first():
    with pytest.raises(NoBlankSideError):
        decompose(parse_shape("[1;0;0]"))


def _arc_lattice(cfg, pts):
    from nchull.configuration import subconfig

    sub, old = subconfig(cfg, pts)
    if sub is None:
        return [Partition(((pts[0],),))]
    return [e.relabel(old) for e in build_lattice(sub).elements]


@pytest.mark.parametrize("text", ["[0;1;1]", "[0;2;1]", "[0;0;1;2]", "[0;1;0;1;0]"])
def test_interval_product_iso_is_order_isomorphism(text):
    cfg = parse_shape(text)
    lat = build_lattice(cfg)
    for i, j in interval_indices(cfg):
        from nchull.configuration import point_index

        z = point_index(cfg, i, j)
        la = _arc_lattice(cfg, list(range(1, z + 1)))
        lb = _arc_lattice(cfg, list(range(z + 1, cfg.n)))
        lo, hi = lat.index_of(alpha(cfg, i, j)), lat.index_of(beta(cfg, i, j))
        image = {}
        for s in la:
            for r in lb:
                x = lat.index_of(interval_product_iso(cfg, i, j, s, r))
                assert lat.leq(lo, x) and lat.leq(x, hi)
                assert lat.ranks[x] == s.rank + r.rank + 1
                image[(s, r)] = x
        assert len(set(image.values())) == len(image)
        assert len(image) == sum(1 for x in range(len(lat)) if lat.leq(lo, x) and lat.leq(x, hi))
        for (s1, r1), x in image.items():
            for (s2, r2), y in image.items():
                assert lat.leq(x, y) == (s1.leq(s2) and r1.leq(r2))


def test_interval_product_iso_rejects_bad_input():
    cfg = parse_shape("[0;0;0;0]")
    with pytest.raises(ValueError):
        interval_product_iso(cfg, 2, 0, Partition.of([[1]]), Partition.of([[2]]))
    with pytest.raises(ValueError):
        interval_product_iso(parse_shape("[0;0;0;0;0;0]"), 2, 0, Partition.of([[1]]), Partition.of([[2, 4], [3, 5]]))


def test_big_interval_size():
    cfg = parse_shape("[0;3;2;1;2]")
    a_size = len(build_lattice(parse_shape("[3;1;0]")))
    from nchull.configuration import subconfig

    sub_b, _ = subconfig(cfg, list(range(8, 13)))
    lat = build_lattice(cfg, max_n=13)
    lo, hi = lat.index_of(alpha(cfg, 3, 2)), lat.index_of(beta(cfg, 3, 2))
    size = sum(1 for x in range(len(lat)) if lat.leq(lo, x) and lat.leq(x, hi))
    assert size == a_size * len(build_lattice(sub_b))


@pytest.mark.parametrize(
    "cfg",
    [c for n in range(2, 8) for c in enumerate_shapes(n, blank=True)] + [HullConfig.segment(n) for n in range(2, 9)],
    ids=str,
)
def test_scd_verifies(cfg):
    lat = build_lattice(cfg)
    dec = scd(cfg, lat)
    rep = verify_scd(lat, dec)
    assert rep.ok, rep.as_dict()
    assert sum(dec.sizes()) == len(lat)
    assert len(dec.chains) == max(rank_polynomial(lat))


def test_scd_small_examples():
    assert scd(HullConfig.segment(3)).sizes() == [3, 1]
    assert scd(parse_shape("[0;0;0]")).sizes() == [3, 1, 1]


def test_scd_other_blank_side():
    cfg = parse_shape("[0;1;0;2]")
    lat = build_lattice(cfg)
    for side in (1, 3):
        assert verify_scd(lat, scd(cfg, lat, blank_side=side)).ok
    with pytest.raises(NoBlankSideError):
        scd(cfg, lat, blank_side=2)
    with pytest.raises(NoBlankSideError):
        scd(parse_shape("[1;1;1]"))


def test_verifier_reports_witnesses():
    lat = build_lattice(HullConfig.segment(3))
    good = scd(HullConfig.segment(3), lat)
    missing = ChainDecomposition([c for c in good.chains if len(c) > 1])
    rep = verify_scd(lat, missing)
    assert not rep.covering and "covering" in rep.witness
    jump = ChainDecomposition([[lat.bottom, lat.top]] + [[x] for x in range(1, len(lat) - 1)])
    rep = verify_scd(lat, jump)
    assert not rep.saturated and rep.witness["saturated"]["pair"] == [lat.bottom, lat.top]
    assert rep.centered  # ranks 0 and 2 still sit symmetrically
    lopsided = ChainDecomposition([[lat.bottom, 1], [2], [lat.top]])
    assert not verify_scd(lat, lopsided).centered
    dup = ChainDecomposition(good.chains + [[lat.bottom]])
    assert not verify_scd(lat, dup).disjoint


def test_json_references_lattice_order():
    import json

    cfg = parse_shape("[0;1;1]")
    d = json.loads(scd(cfg).to_json(cfg))
    assert d["shape"] == "[0;1;1]"
    assert sorted(x for c in d["chains"] for x in c) == list(range(len(build_lattice(cfg))))
