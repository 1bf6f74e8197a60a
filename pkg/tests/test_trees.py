import itertools

import pytest

from nchull import Partition, build_lattice, parse_shape, realize
from nchull.configuration import HullConfig
from nchull.oracle import cg_all_subtrees, cg_pairwise, edges_noncrossing
from nchull.trees import (
    Forest,
    SlideError,
    SlideLeavesClassError,
    atom_edge,
    atoms_generate_boolean,
    bool_subposet,
    boolean_union_check,
    collapse_repair,
    enumerate_cg_trees,
    has_convex_geodesics,
    in_bool,
    is_noncrossing_tree,
    leaves_on_corners,
    maximal_boolean_atom_sets,
    part_of,
    slide,
    slide_criterion,
    slide_membership,
)

TRI = parse_shape("[1;1;1]")
SQ = parse_shape("[0;0;0;0]")


def T(n, text):
    return Forest.parse(n, text)


def P(text):
    return Partition.parse(text)


def test_wire_format():
    t = Forest.of(4, [(2, 3), (1, 0), (2, 1)])
    assert str(t) == "0-1;1-2;2-3"
    assert T(4, str(t)) == t
    assert str(Forest.parse(3, "")) == ""
    for bad in ["0-0", "0-1;0-1", "0-1-2", "0;1", "0-9"]:
        with pytest.raises(ValueError):
            T(4, bad)


def test_noncrossing_tree_examples():
    seg = HullConfig.segment(4)
    assert is_noncrossing_tree(seg, T(4, "0-1;1-2;2-3"))
    assert not is_noncrossing_tree(seg, T(4, "0-2;1-2;2-3"))
    assert not is_noncrossing_tree(SQ, T(4, "0-2;1-3"))
    assert not is_noncrossing_tree(SQ, T(4, "0-2;1-3;0-1"))
    assert not is_noncrossing_tree(SQ, T(4, "0-1;1-2;0-2"))


def test_convex_geodesic_examples():
    assert has_convex_geodesics(HullConfig.segment(5), T(5, "0-1;1-2;2-3;3-4"))
    assert not has_convex_geodesics(TRI, T(6, "0-1;1-2;2-3;3-4;4-5"))
    # the path 0-1-2-3-4 spans a hull that contains point 5 on the segment 4-0
    t = T(6, "0-1;1-2;2-3;3-4;0-5")
    assert not has_convex_geodesics(TRI, t)
    pts = realize(TRI)
    assert not cg_pairwise(pts, t.edges) and not cg_all_subtrees(pts, t.edges)
    with pytest.raises(ValueError):
        has_convex_geodesics(SQ, T(4, "0-2;1-3"))


def test_leaf_diagnostic_is_consistent_on_triangle():
    # leaves on corners <=> convex geodesics, for every cg candidate on [1;1;1]
    for t in enumerate_cg_trees(TRI):
        assert leaves_on_corners(TRI, t)
    assert not leaves_on_corners(TRI, T(6, "0-1;1-2;2-3;3-4;0-5"))


def test_part_of_examples():
    assert part_of(SQ, Forest.parse(4, "")) == Partition.singletons(4)
    assert part_of(SQ, T(4, "0-1;1-2;2-3")) == Partition.single_block(4)
    assert part_of(SQ, T(4, "0-1;2-3")) == P("0,1|2,3")


def test_enumeration_counts():
    for n in range(2, 8):
        assert [str(t) for t in enumerate_cg_trees(HullConfig.segment(n))] == [
            ";".join(f"{i}-{i + 1}" for i in range(n - 1))
        ]
    assert len(enumerate_cg_trees(SQ)) == 12
    assert len(enumerate_cg_trees(parse_shape("[0;0;0;0;0]"))) == 55


def test_enumeration_matches_brute_force():
    for cfg in [TRI, parse_shape("[0;1;2]"), parse_shape("[0;0;1;0]")]:
        pts = realize(cfg)
        n = cfg.n
        pairs = list(itertools.combinations(range(n), 2))
        truth = set()
        for edges in itertools.combinations(pairs, n - 1):
            if edges_noncrossing(pts, edges) and cg_pairwise(pts, edges):
                truth.add(frozenset(edges))
        assert {t.edges for t in enumerate_cg_trees(cfg)} == truth


def test_bool_subposet_examples():
    seg = HullConfig.segment(3)
    b = bool_subposet(seg, T(3, "0-1;1-2"))
    assert b.partitions() == set(build_lattice(seg).elements)
    b = bool_subposet(SQ, T(4, "0-1;1-2;2-3"))
    assert len(b.partitions()) == 8
    assert Partition.singletons(4) in b.partitions() and Partition.single_block(4) in b.partitions()
    for mu, p in b.elements.items():
        for nu, q in b.elements.items():
            assert (mu <= nu) == p.leq(q)
    with pytest.raises(ValueError):
        bool_subposet(TRI, T(6, "0-1;1-2;2-3;3-4;0-5"))


def _atoms(lat, edges):
    by_edge = {atom_edge(lat, a): a for a in lat.atoms()}
    return [by_edge[e] for e in edges]


def test_atoms_generate_boolean_examples():
    seg = build_lattice(HullConfig.segment(3))
    assert atoms_generate_boolean(seg, _atoms(seg, [(0, 1), (1, 2)]))
    tri = build_lattice(TRI)
    assert not atoms_generate_boolean(tri, _atoms(tri, [(0, 1), (1, 2), (2, 3), (3, 4)]))
    sq = build_lattice(SQ)
    assert atoms_generate_boolean(sq, _atoms(sq, [(0, 1), (1, 2), (2, 3)]))
    with pytest.raises(ValueError):
        atom_edge(sq, sq.top)


def test_maximal_atom_sets_match_trees():
    assert len(maximal_boolean_atom_sets(build_lattice(HullConfig.segment(5)))) == 1
    for cfg in [SQ, TRI]:
        lat = build_lattice(cfg)
        sets = maximal_boolean_atom_sets(lat)
        found = enumerate_cg_trees(cfg)
        assert len(sets) == len(found)
        assert {frozenset(atom_edge(lat, a) for a in s) for s in sets} == {t.edges for t in found}
    assert len(enumerate_cg_trees(TRI)) == 27


def test_slide_examples():
    tri = parse_shape("[0;0;0]")
    t = T(3, "0-1;1-2")
    t2 = slide(tri, t, (0, 1), (1, 2))
    assert str(t2) == "0-2;1-2"
    assert slide(tri, t2, (0, 2), (1, 2)) == t
    with pytest.raises(SlideError):
        slide(SQ, T(4, "0-1;2-3;1-2"), (0, 1), (2, 3))
    with pytest.raises(SlideError):
        slide(tri, t, (0, 2), (1, 2))


def test_slide_adjacency_and_class_errors():
    sq = SQ
    star = T(4, "0-1;0-2;0-3")
    # around 0 the edges go to 1, 2, 3 in angular order, so 1 and 3 are not adjacent
    # (with three edges every pair is cyclically adjacent, so use a larger star)
    big = parse_shape("[0;0;0;0;0]")
    star5 = T(5, "0-1;0-2;0-3;0-4")
    with pytest.raises(SlideError) as exc:
        slide(big, star5, (0, 1), (0, 3))
    assert not isinstance(exc.value, SlideLeavesClassError)
    # sliding 0-1 along 1-2 on a segment would put an edge through point 1
    seg = HullConfig.segment(3)
    with pytest.raises(SlideLeavesClassError):
        slide(seg, T(3, "0-1;1-2"), (0, 1), (1, 2))
    assert slide(sq, star, (0, 1), (0, 2)).edges == T(4, "0-2;0-3;1-2").edges


def test_slide_membership_examples():
    tri = parse_shape("[0;0;0]")
    t, t2 = T(3, "0-1;1-2"), T(3, "0-2;1-2")
    assert slide_membership(tri, t, t2, P("0,1,2"))
    assert not slide_membership(tri, t, t2, P("0,1|2"))
    assert slide_membership(tri, t, t2, P("0|1,2"))
    for part in [P("0,1,2"), P("0,1|2"), P("0|1,2"), P("0|1|2")]:
        assert slide_membership(tri, t, t2, part) == slide_criterion(part, 0, 1, 2)
    with pytest.raises(ValueError):
        slide_membership(tri, t, t2, P("0,2|1"))


def test_union_examples():
    for cfg in [SQ, TRI, HullConfig.segment(5)]:
        lat = build_lattice(cfg)
        rep = boolean_union_check(lat, enumerate_cg_trees(cfg))
        assert rep.covered and not rep.missing
        assert sorted(rep.witness) == list(range(len(lat)))
    seg = build_lattice(HullConfig.segment(4))
    assert boolean_union_check(seg, [T(4, "0-1;1-2;2-3")]).covered


def test_collapse_repair_identity_case():
    # the path 1-2, 2-3, 3-0, 0-1 minus one edge stays valid when corner 2 is demoted
    t = T(4, "0-1;1-2;2-3")
    rep = collapse_repair(SQ, t, 1, Partition.single_block(4))
    assert str(rep.config) == "[1;0;0]"
    assert rep.slides == [] or in_bool(rep.tree, Partition.single_block(4))
    assert is_noncrossing_tree(rep.config, rep.tree) and has_convex_geodesics(rep.config, rep.tree)


def test_collapse_repair_needs_slides():
    cfg = parse_shape("[1;0;0;0]")
    t = T(5, "0-4;1-2;1-4;3-4")
    rho = P("0|1|2|3|4")
    rep = collapse_repair(cfg, t, 2, rho)
    assert rep.slides and not rep.used_fallback
    to_p = {lab: i for i, lab in enumerate(rep.labels)}
    assert in_bool(rep.tree, rho.relabel(to_p))
    assert has_convex_geodesics(rep.config, rep.tree)


def test_collapse_repair_preconditions():
    t = T(4, "0-1;1-2;2-3")
    with pytest.raises(ValueError):
        collapse_repair(SQ, t, 1, P("0,2|1|3"))
    with pytest.raises(ValueError):
        collapse_repair(SQ, T(4, "0-2;1-2;2-3"), 5, Partition.single_block(4))
    # {0,2} is noncrossing on Q but crosses point 1 once 1 is demoted
    with pytest.raises(ValueError):
        collapse_repair(SQ, T(4, "0-2;1-2;2-3"), 1, P("0,2|1|3"))


def test_collapse_repair_sweep_small():
    from nchull.checks import check_collapse_repair

    res = check_collapse_repair(4)
    assert res.ok, res.counterexample
    assert res.cases > 0


@pytest.mark.slow
def test_collapse_repair_sweep_n5():
    from nchull.checks import check_collapse_repair

    res = check_collapse_repair(5)
    assert res.ok, res.counterexample
