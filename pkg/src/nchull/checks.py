"""Invariant suite behind ``nchull check`` and the acceptance tests.

Every check returns a ``CheckResult``; ``counterexample`` holds the first
failing input as a string.  Sizes are capped per check because some
invariants are only affordable at smaller n than others.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction

from . import hullposet, oracle, scd, trees
from .configuration import HullConfig, enumerate_shapes, realize
from .lattice import (
    Partition,
    build_lattice,
    embedding_check,
    is_graded,
    is_noncrossing,
    is_rank_symmetric,
    join,
    meet,
    rank_polynomial,
)


@dataclass
class CheckResult:
    name: str
    ok: bool = True
    cases: int = 0
    counterexample: str | None = None
    data: dict = field(default_factory=dict)
    elapsed: float = 0.0

    def fail(self, text: str) -> None:
        if self.ok:
            self.ok = False
            self.counterexample = text

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "ok": self.ok,
            "cases": self.cases,
            "counterexample": self.counterexample,
            "data": self.data,
        }


def _timed(fn):
    def wrapper(*args, **kwargs):
        t0 = time.perf_counter()
        res = fn(*args, **kwargs)
        res.elapsed = time.perf_counter() - t0
        return res

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


def shapes_upto(max_n: int, min_n: int = 3, **kw) -> list[HullConfig]:
    kw.setdefault("dedupe", True)
    return [c for n in range(min_n, max_n + 1) for c in enumerate_shapes(n, **kw)]


def catalan(n: int) -> int:
    return math.comb(2 * n, n) // (n + 1)


def fuss_catalan(n: int) -> int:
    return math.comb(3 * n - 3, n - 1) // (2 * n - 1)


def alt_realization(config: HullConfig):
    """A second, unevenly spaced representative of the same class."""
    if config.is_segment:
        return [(Fraction(x * x + x), Fraction(0)) for x in range(config.n)]
    params = [Fraction(3 * i - config.k, 4) + Fraction(1, 7 * (i + 2)) for i in range(config.k)]
    return realize(config, params=params, weights=lambda j, c: Fraction(j * j, (c + 1) ** 2))


# lattice


@_timed
def check_stats(shape: HullConfig, expected_ranks=None) -> CheckResult:
    res = CheckResult(f"stats {shape}")
    lat = build_lattice(shape)
    ranks = rank_polynomial(lat)
    res.data = {
        "elements": len(lat),
        "ranks": ranks,
        "graded": is_graded(lat),
        "rank_symmetric": is_rank_symmetric(lat),
    }
    res.cases = 1
    if expected_ranks is not None and ranks != list(expected_ranks):
        res.fail(f"{shape}: ranks {ranks} != {list(expected_ranks)}")
    if not res.data["graded"]:
        res.fail(f"{shape}: not graded")
    return res


@_timed
def check_segments(max_n: int = 10) -> CheckResult:
    """segment:n is Bool(n-1) via blocks <-> gap subsets."""
    res = CheckResult("segment lattices are Boolean")
    for n in range(2, max_n + 1):
        lat = build_lattice(HullConfig.segment(n), max_n=max_n)
        res.cases += 1
        if len(lat) != 2 ** (n - 1):
            res.fail(f"segment:{n}: {len(lat)} elements")
            continue
        gaps = []
        for e in lat.elements:
            gaps.append(frozenset(p for b in e.blocks for p in b[:-1]))
            if any(b != tuple(range(b[0], b[-1] + 1)) for b in e.blocks):
                res.fail(f"segment:{n}: {e} is not an interval partition")
        if len(set(gaps)) != len(gaps):
            res.fail(f"segment:{n}: gap map not injective")
        for a, b in itertools.product(range(len(lat)), repeat=2):
            if lat.leq(a, b) != (gaps[a] <= gaps[b]):
                res.fail(f"segment:{n}: order mismatch at {lat.elements[a]} vs {lat.elements[b]}")
                break
    return res


@_timed
def check_catalan(max_n: int = 9) -> CheckResult:
    res = CheckResult("all-blank shapes give Catalan numbers")
    for n in range(3, max_n + 1):
        size = len(build_lattice(HullConfig.polygon([0] * n), max_n=max_n))
        res.data[n] = size
        res.cases += 1
        if size != catalan(n):
            res.fail(f"[{';'.join('0' * n)}]: {size} != {catalan(n)}")
    return res


@_timed
def check_oracle_partitions(max_n: int = 7) -> CheckResult:
    """is_noncrossing agrees with hull disjointness on two realizations, for every set partition."""
    res = CheckResult("noncrossing predicate vs exact geometry")
    for cfg in shapes_upto(max_n, min_n=2):
        reals = [realize(cfg), alt_realization(cfg)]
        for part in oracle.set_partitions(cfg.n):
            p = Partition.of(part)
            fast = is_noncrossing(cfg, p)
            res.cases += 1
            for pts in reals:
                if oracle.nc_oracle(pts, part) != fast:
                    res.fail(f"{cfg} {p}: combinatorial {fast}")
    return res


@_timed
def check_graded(max_n: int = 8) -> CheckResult:
    res = CheckResult("every hull lattice is graded")
    for cfg in shapes_upto(max_n, min_n=2):
        res.cases += 1
        if not is_graded(build_lattice(cfg, max_n=max_n)):
            res.fail(str(cfg))
    return res


@_timed
def check_lattice_laws(max_n: int = 6) -> CheckResult:
    """meet and join are the greatest lower and least upper bounds."""
    res = CheckResult("meet/join are glb/lub")
    for cfg in shapes_upto(max_n, min_n=2):
        lat = build_lattice(cfg)
        from .kernels import backend_for

        ups = backend_for(cfg.n).upsets(lat.masks, cfg.n)
        downs = [0] * len(lat)
        for i, u in enumerate(ups):
            m = u
            while m:
                low = m & -m
                downs[low.bit_length() - 1] |= 1 << i
                m ^= low
        for a in range(len(lat)):
            for b in range(a, len(lat)):
                res.cases += 1
                common_up = ups[a] & ups[b]
                j = join(lat, a, b)
                # lub: j is an upper bound and below every upper bound
                if not common_up >> j & 1 or common_up & ~ups[j]:
                    res.fail(f"{cfg}: join({lat.elements[a]}, {lat.elements[b]}) = {lat.elements[j]}")
                common_down = downs[a] & downs[b]
                m = meet(lat, a, b)
                if not common_down >> m & 1 or common_down & ~downs[m]:
                    res.fail(f"{cfg}: meet({lat.elements[a]}, {lat.elements[b]}) = {lat.elements[m]}")
    return res


@_timed
def check_embeddings(max_n: int = 6) -> CheckResult:
    """NC(P) sits inside NC(Q) for every cover P < Q of H(n).

    H(n) is symmetric under relabelling, so it is enough to take Q with the
    identity cyclic order and every corner set.
    """
    res = CheckResult("NC(P) embeds in NC(Q) along covers of H(n)")
    for n in range(3, max_n + 1):
        for k in range(3, n + 1):
            for corners in itertools.combinations(range(n), k):
                q = hullposet.HullElement.cyclic(range(n), corners)
                for p in hullposet.elementary_collapses(q):
                    res.cases += 1
                    lp, _ = hullposet.labeled_lattice(p)
                    lq, _ = hullposet.labeled_lattice(q)
                    if not embedding_check(p, q) or not len(lp) < len(lq):
                        res.fail(f"{p} < {q}")
    return res


# chains


@_timed
def check_scd(max_n: int = 8, max_segment: int = 10) -> CheckResult:
    res = CheckResult("symmetric chain decompositions verify")
    configs = shapes_upto(max_n, blank=True, segments=False)
    configs += [HullConfig.segment(n) for n in range(2, max_segment + 1)]
    for cfg in configs:
        lat = build_lattice(cfg, max_n=max(max_n, max_segment))
        rep = scd.verify_scd(lat, scd.scd(cfg, lat))
        res.cases += 1
        if not rep.ok:
            res.fail(f"{cfg}: {rep.as_dict()}")
    return res


@_timed
def scan_no_blank(max_n: int = 8) -> CheckResult:
    """Rank vectors of shapes without a blank side (data only)."""
    res = CheckResult("no-blank-side rank scan")
    rows = {}
    for cfg in shapes_upto(max_n, blank=False, segments=False):
        lat = build_lattice(cfg, max_n=max_n)
        rows[str(cfg)] = {"ranks": rank_polynomial(lat), "rank_symmetric": is_rank_symmetric(lat)}
        res.cases += 1
    res.data = rows
    if rows.get("[1;1;1]", {}).get("rank_symmetric", True):
        res.fail("[1;1;1] should not be rank-symmetric")
    return res


# trees


@_timed
def check_fuss_catalan(max_n: int = 6) -> CheckResult:
    res = CheckResult("cg trees on all-blank shapes are Fuss-Catalan")
    for n in range(2, max_n + 1):
        cfg = HullConfig.segment(2) if n == 2 else HullConfig.polygon([0] * n)
        count = len(trees.enumerate_cg_trees(cfg))
        res.data[n] = count
        res.cases += 1
        if count != fuss_catalan(n):
            res.fail(f"n={n}: {count} != {fuss_catalan(n)}")
    return res


@_timed
def check_boolean(max_n: int = 7) -> CheckResult:
    """Maximal Boolean atom sets <-> cg trees, and the Bool(tree) cover the lattice."""
    res = CheckResult("Boolean subposets: bijection and union")
    for cfg in shapes_upto(max_n, min_n=2):
        lat = build_lattice(cfg)
        ts = trees.enumerate_cg_trees(cfg, max_n=max_n)
        atom_sets = trees.maximal_boolean_atom_sets(lat, max_n=max_n)
        res.cases += 1
        by_edges = {trees.atom_set_edges(lat, s) for s in atom_sets}
        if len(by_edges) != len(atom_sets) or by_edges != {t.edges for t in ts}:
            res.fail(f"{cfg}: {len(atom_sets)} atom sets vs {len(ts)} trees")
            continue
        union = trees.boolean_union_check(lat, ts)
        if not union.covered:
            res.fail(f"{cfg}: {lat.elements[union.missing[0]]} in no Bool(tree)")
    return res


def _spanning_trees(n):
    """All labelled spanning trees on range(n) via Pruefer codes."""
    if n == 1:
        yield ()
        return
    if n == 2:
        yield ((0, 1),)
        return
    for code in itertools.product(range(n), repeat=n - 2):
        degree = [1] * n
        for v in code:
            degree[v] += 1
        edges = []
        for v in code:
            leaf = min(u for u in range(n) if degree[u] == 1)
            edges.append((min(leaf, v), max(leaf, v)))
            degree[leaf] -= 1
            degree[v] -= 1
        u, w = [x for x in range(n) if degree[x] == 1]
        edges.append((u, w))
        yield tuple(sorted(edges))


@_timed
def check_oracle_trees(max_n: int = 7) -> CheckResult:
    """Tree predicates vs exact geometry on every labelled spanning tree."""
    res = CheckResult("tree predicates vs exact geometry")
    for cfg in shapes_upto(max_n, min_n=2):
        pts = realize(cfg)
        for edges in _spanning_trees(cfg.n):
            res.cases += 1
            nc = trees.is_noncrossing_tree(cfg, edges)
            if oracle.edges_noncrossing(pts, edges) != nc:
                res.fail(f"{cfg} {edges}: noncrossing {nc}")
                continue
            if not nc:
                continue
            cg = trees.has_convex_geodesics(cfg, edges)
            truth = oracle.tree_oracle(pts, edges)["convex_geodesics"] if cfg.n <= 6 else oracle.cg_pairwise(pts, edges)
            if truth != cg:
                res.fail(f"{cfg} {edges}: convex geodesics {cg}")
    return res


@_timed
def check_subforests(max_n: int = 7) -> CheckResult:
    """Components of every subforest of a cg tree form a noncrossing partition."""
    res = CheckResult("subforests of cg trees give noncrossing partitions")
    for cfg in shapes_upto(max_n, min_n=2):
        for t in trees.enumerate_cg_trees(cfg, max_n=max_n):
            for p in trees.bool_subposet(cfg, t).partitions():
                res.cases += 1
                if not is_noncrossing(cfg, p):
                    res.fail(f"{cfg} {t}: {p}")
    return res


@_timed
def check_rank_convexity(max_n: int = 6) -> CheckResult:
    """For noncrossing forests: rank of the join of the edge atoms is the edge count iff
    each component's hull meets the configuration only in its vertices (exact geometry)."""
    res = CheckResult("rank of atom joins vs hull of forest components")
    from .lattice import join_partitions

    for cfg in shapes_upto(max_n, min_n=2):
        pts = realize(cfg)
        n = cfg.n
        cand = [(a, b) for a in range(n) for b in range(a + 1, n) if trees.edge_clear(cfg, a, b)]
        for r in range(1, n):
            for edges in itertools.combinations(cand, r):
                if not trees.is_noncrossing_forest(cfg, edges):
                    continue
                res.cases += 1
                atoms = [Partition.of([e] + [(p,) for p in range(n) if p not in e]) for e in edges]
                additive = join_partitions(cfg, atoms).rank == r
                comps = [c for c in trees.components(trees.Forest.of(n, edges)) if len(c) > 1]
                clean = all(
                    not any(oracle.point_in_hull_of(pts, c, p) for p in range(n) if p not in c) for c in comps
                )
                if additive != clean:
                    res.fail(f"{cfg} {edges}: additive {additive}, clean hulls {clean}")
    return res


@_timed
def check_slides(max_n: int = 6) -> CheckResult:
    """Membership after a slide matches the block-of-p criterion."""
    res = CheckResult("slide membership criterion")
    for cfg in shapes_upto(max_n, min_n=3):
        cg = {t.edges for t in trees.enumerate_cg_trees(cfg)}
        for t in trees.enumerate_cg_trees(cfg):
            parts = trees.bool_subposet(cfg, t).partitions()
            for (e, f) in itertools.permutations(t.sorted_edges(), 2):
                shared = set(e) & set(f)
                if len(shared) != 1:
                    continue
                try:
                    t2 = trees.slide(cfg, t, e, f)
                except trees.SlideError:
                    continue
                if t2.edges not in cg:
                    continue
                (q,) = shared
                (p,) = set(e) - shared
                (r,) = set(f) - shared
                for part in parts:
                    res.cases += 1
                    if trees.slide_membership(cfg, t, t2, part) != trees.slide_criterion(part, p, q, r):
                        res.fail(f"{cfg} {t} slide {e} along {f}: {part}")
    return res


@_timed
def check_collapse_repair(max_n: int = 5) -> CheckResult:
    """Repair every cg tree and Boolean element along every collapse of every shape."""
    res = CheckResult("collapse repair")
    for cfg in shapes_upto(max_n, dedupe=False, segments=False):
        q = hullposet.as_element(cfg)
        ts = trees.enumerate_cg_trees(cfg)
        for c in cfg.corner_indices:
            if q.rank >= 4:
                targets = [trees.collapse_target(cfg, c)]
            else:
                targets = [x for x in hullposet.elementary_collapses(q) if c not in (x.order[0], x.order[-1])]
            for target in targets:
                config_p, labels = hullposet.element_config(target)
                to_p = {lab: i for i, lab in enumerate(labels)}
                for t in ts:
                    for rho in sorted(trees.bool_subposet(cfg, t).partitions(), key=str):
                        if not is_noncrossing(config_p, rho.relabel(to_p)):
                            continue
                        res.cases += 1
                        try:
                            rep = trees.collapse_repair(cfg, t, c, rho, target=target)
                        except AssertionError as exc:
                            res.fail(f"{cfg} corner {c} {t} {rho}: {exc}")
                            continue
                        ok = (
                            trees.is_noncrossing_tree(config_p, rep.tree)
                            and trees.has_convex_geodesics(config_p, rep.tree)
                            and trees.in_bool(rep.tree, rho.relabel(to_p))
                        )
                        if not ok:
                            res.fail(f"{cfg} corner {c} {t} {rho}: bad repair {rep.tree}")
    return res


# H(n)


@_timed
def check_hullposet(max_n: int = 7, interval_n: int = 6) -> CheckResult:
    res = CheckResult("H(n) counts and Boolean intervals")
    # every comparable pair is tested, which covers the small rank gaps
    for n in range(3, max_n + 1):
        counts = hullposet.rank_counts(n)
        res.data[n] = counts
        for k, c in counts.items():
            res.cases += 1
            if c != hullposet.predicted_rank_count(n, k):
                res.fail(f"H({n}) rank {k}: {c}")
        # one maximal and one minimal stand for all of them up to relabelling
        top = hullposet.HullElement.cyclic(range(n), range(n))
        bottom = hullposet.HullElement.linear(range(n))
        res.cases += 2
        below = hullposet.count_extremes(top)
        if below != n * 2 ** (n - 3):
            res.fail(f"H({n}): {below} minimals below a maximal")
        above = hullposet.count_extremes(bottom)
        if above != 2 ** (n - 2):
            res.fail(f"H({n}): {above} maximals above a minimal")
    for n in range(3, interval_n + 1):
        for k in range(3, n + 1):
            for corners in itertools.combinations(range(n), k):
                b = hullposet.HullElement.cyclic(range(n), corners)
                for a in sorted(hullposet.lower_set(b), key=str):
                    res.cases += 1
                    if not hullposet.interval_is_boolean(a, b):
                        res.fail(f"[{a}, {b}] is not Boolean")
    return res


@_timed
def check_hull_leq(max_n: int = 5) -> CheckResult:
    """Collapse reachability agrees with the closed-form comparison."""
    res = CheckResult("H(n) order: search vs closed form")
    for n in range(3, max_n + 1):
        elems = hullposet.all_elements(n)
        tops = [hullposet.HullElement.cyclic(range(n), c) for k in range(3, n + 1) for c in itertools.combinations(range(n), k)]
        for b in tops:
            for a in elems:
                res.cases += 1
                if hullposet.leq(a, b) != hullposet.leq_closed_form(a, b):
                    res.fail(f"{a} vs {b}")
    return res


def default_suite(max_n: int = 7) -> list:
    """(name, thunk) pairs in running order, sized from ``max_n``."""
    m = max_n
    return [
        ("segments", lambda: check_segments(min(m + 3, 10))),
        ("catalan", lambda: check_catalan(min(m + 2, 9))),
        ("oracle_partitions", lambda: check_oracle_partitions(min(m, 7))),
        ("graded", lambda: check_graded(min(m + 1, 8))),
        ("lattice_laws", lambda: check_lattice_laws(min(m, 6))),
        ("embeddings", lambda: check_embeddings(min(m, 6))),
        ("scd", lambda: check_scd(min(m + 1, 8), min(m + 3, 10))),
        ("fuss_catalan", lambda: check_fuss_catalan(min(m, 6))),
        ("boolean", lambda: check_boolean(min(m, 7))),
        ("oracle_trees", lambda: check_oracle_trees(min(m, 6))),
        ("subforests", lambda: check_subforests(min(m, 7))),
        ("rank_convexity", lambda: check_rank_convexity(min(m, 6))),
        ("slides", lambda: check_slides(min(m, 6))),
        ("collapse_repair", lambda: check_collapse_repair(min(m, 5))),
        ("hullposet", lambda: check_hullposet(min(m, 7), min(m, 6))),
        ("hull_leq", lambda: check_hull_leq(min(m, 5))),
    ]


@_timed
def scan_leaf_criterion(max_n: int = 7) -> CheckResult:
    """Compare 'every leaf is a corner' with convex geodesics on all noncrossing trees (data only)."""
    res = CheckResult("leaf criterion vs convex geodesics")
    rows = {}
    for cfg in shapes_upto(max_n, min_n=3):
        n = cfg.n
        cand = [(a, b) for a in range(n) for b in range(a + 1, n) if trees.edge_clear(cfg, a, b)]
        only_leaf, only_cg = 0, 0
        example = None
        for edges in itertools.combinations(cand, n - 1):
            if not trees.is_noncrossing_tree(cfg, edges):
                continue
            res.cases += 1
            leaf = trees.leaves_on_corners(cfg, edges)
            cg = trees.has_convex_geodesics(cfg, edges)
            if leaf and not cg:
                only_leaf += 1
            elif cg and not leaf:
                only_cg += 1
            if leaf != cg and example is None:
                example = str(trees.Forest.of(n, edges))
        if only_leaf or only_cg:
            rows[str(cfg)] = {"leaf_not_cg": only_leaf, "cg_not_leaf": only_cg, "example": example}
    res.data = rows
    return res
