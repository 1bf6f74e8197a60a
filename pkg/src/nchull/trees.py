"""Noncrossing trees with convex geodesics and their Boolean subposets."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .configuration import HullConfig, realize
from .kernels import backend_for
from .lattice import NCLattice, Partition, _coarsen, is_noncrossing
from .oracle import BudgetError

DEFAULT_MAX_N = 10


class SlideError(ValueError):
    """Slide preconditions fail."""


class SlideLeavesClassError(SlideError):
    """The slid edge passes through a point or crosses another edge."""


def _edge(a, b):
    if a == b:
        raise ValueError(f"self-loop at {a}")
    return (a, b) if a < b else (b, a)


@dataclass(frozen=True)
class Forest:
    n: int
    edges: frozenset

    @classmethod
    def of(cls, n: int, edges) -> Forest:
        edges = list(edges)
        norm = [_edge(*e) for e in edges]
        if len(set(norm)) != len(norm):
            raise ValueError("duplicate edge")
        if any(not 0 <= v < n for e in norm for v in e):
            raise ValueError("edge endpoint out of range")
        return cls(n, frozenset(norm))

    @classmethod
    def parse(cls, n: int, text: str) -> Forest:
        """Inverse of ``str``: ``0-1;1-2;2-3`` (empty string = no edges)."""
        if not text:
            return cls(n, frozenset())
        try:
            pairs = [tuple(int(v) for v in part.split("-")) for part in text.split(";")]
        except ValueError as exc:
            raise ValueError(f"malformed tree string {text!r}") from exc
        if any(len(p) != 2 for p in pairs):
            raise ValueError(f"malformed tree string {text!r}")
        return cls.of(n, pairs)

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def __str__(self):
        return ";".join(f"{a}-{b}" for a, b in self.sorted_edges())

    def adjacency(self) -> dict[int, list[int]]:
        adj = {v: [] for v in range(self.n)}
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        return adj

    def replace(self, old, new) -> Forest:
        return Forest(self.n, (self.edges - {_edge(*old)}) | {_edge(*new)})

    def relabel(self, n: int, mapping) -> Forest:
        return Forest.of(n, ((mapping[a], mapping[b]) for a, b in self.edges))


def _as_forest(config: HullConfig, edges) -> Forest:
    if isinstance(edges, Forest):
        return edges
    return Forest.of(config.n, edges)


def edge_clear(config: HullConfig, a: int, b: int) -> bool:
    """No configuration point lies strictly inside the segment ab."""
    return config.between[a * config.n + b] == 0


def edges_cross(config: HullConfig, e, f) -> bool:
    """Two clear edges cross iff their four distinct endpoints interleave around the boundary."""
    (a, b), (c, d) = _edge(*e), _edge(*f)
    if {a, b} & {c, d}:
        return False
    return (a < c < b) != (a < d < b)


def _is_acyclic(n, edges) -> bool:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra == rb:
            return False
        parent[ra] = rb
    return True


def is_noncrossing_forest(config: HullConfig, edges) -> bool:
    forest = _as_forest(config, edges)
    if not _is_acyclic(config.n, forest.edges):
        return False
    if any(not edge_clear(config, a, b) for a, b in forest.edges):
        return False
    return not any(edges_cross(config, e, f) for e, f in itertools.combinations(forest.edges, 2))


def is_noncrossing_tree(config: HullConfig, edges) -> bool:
    """Spanning, connected, acyclic, no edge through a point, no two edges crossing."""
    forest = _as_forest(config, edges)
    if len(forest.edges) != config.n - 1:
        return False
    return is_noncrossing_forest(config, forest)


def components(forest: Forest) -> list[list[int]]:
    adj = forest.adjacency()
    seen, out = set(), []
    for v in range(forest.n):
        if v in seen:
            continue
        comp, stack = [], [v]
        seen.add(v)
        while stack:
            u = stack.pop()
            comp.append(u)
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        out.append(sorted(comp))
    return out


def _path_masks_from(adj, root):
    """Bitmask of the tree path from root to every reachable vertex."""
    masks = {root: 1 << root}
    stack = [root]
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if w not in masks:
                masks[w] = masks[u] | (1 << w)
                stack.append(w)
    return masks


def tree_path(forest: Forest, x: int, y: int) -> list[int] | None:
    adj = forest.adjacency()
    prev, stack = {x: None}, [x]
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if w not in prev:
                prev[w] = u
                stack.append(w)
    if y not in prev:
        return None
    out = [y]
    while out[-1] != x:
        out.append(prev[out[-1]])
    return out[::-1]


def has_convex_geodesics(config: HullConfig, forest) -> bool:
    """Every tree path's hull contains no configuration point off the path."""
    forest = _as_forest(config, forest)
    if not is_noncrossing_forest(config, forest):
        raise ValueError(f"{forest} is not a noncrossing forest on {config}")
    kern = backend_for(config.n)
    adj = forest.adjacency()
    for v in range(config.n):
        for w, mask in _path_masks_from(adj, v).items():
            if w > v and kern.hull_mask(mask, config.between, config.n) != mask:
                return False
    return True


def leaves_on_corners(config: HullConfig, tree) -> bool:
    """Diagnostic: every leaf sits on a hull corner."""
    tree = _as_forest(config, tree)
    corners = set(config.corner_indices)
    deg = {v: len(ws) for v, ws in tree.adjacency().items()}
    return all(v in corners for v, d in deg.items() if d == 1)


def part_of(config: HullConfig, forest) -> Partition:
    """Connected components as a partition."""
    forest = _as_forest(config, forest)
    if not has_convex_geodesics(config, forest):
        raise ValueError(f"{forest} lacks convex geodesics")
    return Partition.of(components(forest))


def _part_unchecked(forest: Forest) -> Partition:
    return Partition.of(components(forest))


def enumerate_cg_trees(config: HullConfig, max_n: int = DEFAULT_MAX_N) -> list[Forest]:
    """All spanning noncrossing trees with convex geodesics, sorted by wire string."""
    n = config.n
    if n > max_n:
        raise BudgetError(f"n={n} exceeds tree budget max_n={max_n}")
    cand = [(a, b) for a in range(n) for b in range(a + 1, n) if edge_clear(config, a, b)]
    out = []
    chosen = []
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    def rec(start):
        if len(chosen) == n - 1:
            forest = Forest(n, frozenset(chosen))
            if has_convex_geodesics(config, forest):
                out.append(forest)
            return
        if len(cand) - start < n - 1 - len(chosen):
            return
        for t in range(start, len(cand)):
            e = cand[t]
            ra, rb = find(e[0]), find(e[1])
            if ra == rb or any(edges_cross(config, e, f) for f in chosen):
                continue
            parent[ra] = rb
            chosen.append(e)
            rec(t + 1)
            chosen.pop()
            parent[ra] = ra

    rec(0)
    return sorted(out, key=str)


@dataclass
class BoolSubposet:
    tree: Forest
    elements: dict = field(default_factory=dict)  # subforest edges (frozenset) -> Partition

    def partitions(self) -> set:
        return set(self.elements.values())


def bool_subposet(config: HullConfig, tree) -> BoolSubposet:
    """Partitions of all 2^(n-1) subforests, checked distinct and order-isomorphic to subsets."""
    tree = _as_forest(config, tree)
    if not is_noncrossing_tree(config, tree) or not has_convex_geodesics(config, tree):
        raise ValueError(f"{tree} is not a noncrossing tree with convex geodesics on {config}")
    edges = tree.sorted_edges()
    out = BoolSubposet(tree)
    for r in range(len(edges) + 1):
        for sub in itertools.combinations(edges, r):
            out.elements[frozenset(sub)] = _part_unchecked(Forest(config.n, frozenset(sub)))
    if len(set(out.elements.values())) != 2 ** len(edges):
        raise AssertionError(f"subforests of {tree} give repeated partitions")
    return out


def in_bool(tree: Forest, partition: Partition) -> bool:
    """partition == Part(mu) for the subforest mu of tree lying inside its blocks."""
    where = {p: i for i, b in enumerate(partition.blocks) for p in b}
    inside = frozenset(e for e in tree.edges if where[e[0]] == where[e[1]])
    return _part_unchecked(Forest(tree.n, inside)) == partition


def atom_edge(lattice: NCLattice, atom: int) -> tuple[int, int]:
    if lattice.ranks[atom] != 1:
        raise ValueError(f"element {atom} is not an atom")
    (blk,) = [b for b in lattice.elements[atom].blocks if len(b) == 2]
    return blk


def _join_with_edge(config, kern, masks, edge):
    return kern.hull_merge(_coarsen(masks, [(1 << edge[0]) | (1 << edge[1])]), config.between, config.n)


def atoms_generate_boolean(lattice: NCLattice, atom_set) -> bool:
    """Every subset S of the atoms has a join of rank |S|."""
    atoms = list(atom_set)
    edges = [atom_edge(lattice, a) for a in atoms]
    cfg = lattice.config
    kern = backend_for(cfg.n)
    bottom = tuple(1 << p for p in range(cfg.n))
    joins = [(0, bottom)]
    for e in edges:
        new = []
        for size, masks in joins:
            j = _join_with_edge(cfg, kern, masks, e)
            if cfg.n - len(j) != size + 1:
                return False
            new.append((size + 1, j))
        joins += new
    return True


def maximal_boolean_atom_sets(lattice: NCLattice, max_n: int = DEFAULT_MAX_N) -> list[frozenset]:
    """All (n-1)-sets of atoms generating a Boolean lattice with top 1-hat.

    Boolean generation is inherited by subsets, so the search extends sets one
    atom at a time and keeps the joins of every subset.
    """
    cfg = lattice.config
    n = cfg.n
    if n > max_n:
        raise BudgetError(f"n={n} exceeds budget max_n={max_n}")
    kern = backend_for(n)
    atoms = lattice.atoms()
    edges = [atom_edge(lattice, a) for a in atoms]
    bottom = tuple(1 << p for p in range(n))
    out = []

    def rec(start, chosen, joins):
        if len(chosen) == n - 1:
            out.append(frozenset(chosen))
            return
        for t in range(start, len(atoms)):
            new = []
            for size, masks in joins:
                j = _join_with_edge(cfg, kern, masks, edges[t])
                if n - len(j) != size + 1:
                    break
                new.append((size + 1, j))
            else:
                rec(t + 1, chosen + [atoms[t]], joins + new)

    rec(0, [], [(0, bottom)])
    return out


def atom_set_edges(lattice: NCLattice, atom_set) -> frozenset:
    return frozenset(atom_edge(lattice, a) for a in atom_set)


def _angle_key(origin, point):
    """Sort key for the direction origin->point, counterclockwise from the positive x axis."""
    dx, dy = point[0] - origin[0], point[1] - origin[1]
    half = 0 if (dy > 0 or (dy == 0 and dx > 0)) else 1
    return half, dx, dy


def _ccw_neighbors(coords, q, nbrs):
    import functools

    def cmp(u, v):
        hu, dxu, dyu = _angle_key(coords[q], coords[u])
        hv, dxv, dyv = _angle_key(coords[q], coords[v])
        if hu != hv:
            return hu - hv
        cross = dxu * dyv - dyu * dxv
        if cross:
            return -1 if cross > 0 else 1
        # same direction: nearer first (collinear same-side triples)
        du, dv = dxu * dxu + dyu * dyu, dxv * dxv + dyv * dyv
        return (du > dv) - (du < dv)

    return sorted(nbrs, key=functools.cmp_to_key(cmp))


def angularly_adjacent(config: HullConfig, tree: Forest, q: int, u: int, w: int, coords=None) -> bool:
    coords = coords or realize(config)
    order = _ccw_neighbors(coords, q, tree.adjacency()[q])
    i, j = order.index(u), order.index(w)
    d = (i - j) % len(order)
    return d in (1, len(order) - 1)


def slide(config: HullConfig, tree, e, f) -> Forest:
    """Replace e = {p, q} by {p, r} where f = {q, r} is angularly next to e at q."""
    tree = _as_forest(config, tree)
    e, f = _edge(*e), _edge(*f)
    if e not in tree.edges or f not in tree.edges:
        raise SlideError("both edges must belong to the tree")
    shared = set(e) & set(f)
    if len(shared) != 1:
        raise SlideError(f"edges {e} and {f} do not share exactly one vertex")
    (q,) = shared
    (p,) = set(e) - {q}
    (r,) = set(f) - {q}
    if not angularly_adjacent(config, tree, q, p, r):
        raise SlideError(f"edges {e} and {f} are not adjacent around {q}")
    new = tree.replace(e, (p, r))
    if not edge_clear(config, p, r) or not is_noncrossing_tree(config, new):
        raise SlideLeavesClassError(f"sliding {e} along {f} leaves the noncrossing trees")
    return new


def slide_membership(config: HullConfig, tree, tree2, partition: Partition, e=None, f=None) -> bool:
    """Whether a partition of Bool(tree) stays in Bool(tree2)."""
    tree, tree2 = _as_forest(config, tree), _as_forest(config, tree2)
    if not in_bool(tree, partition):
        raise ValueError(f"{partition} is not in Bool({tree})")
    return in_bool(tree2, partition)


def slide_criterion(partition: Partition, p: int, q: int, r: int) -> bool:
    """Block of p contains both q and r, or neither."""
    blk = partition.block_of(p)
    return (q in blk) == (r in blk)


@dataclass
class UnionReport:
    covered: bool
    witness: dict  # element index -> tree index
    missing: list


def boolean_union_check(lattice: NCLattice, trees) -> UnionReport:
    """Find, for every element, a tree whose Boolean subposet contains it."""
    witness = {}
    for t, tree in enumerate(trees):
        edges = tree.sorted_edges()
        for r in range(len(edges) + 1):
            for sub in itertools.combinations(edges, r):
                part = _part_unchecked(Forest(lattice.n, frozenset(sub)))
                idx = lattice.index_of(part)
                witness.setdefault(idx, t)
    missing = [i for i in range(len(lattice)) if i not in witness]
    return UnionReport(not missing, witness, missing)


@dataclass
class Repair:
    config: HullConfig  # P = m(Q)
    labels: tuple  # labels[p_index] = Q index
    tree: Forest  # on P, in P indices
    slides: list  # (e, f) pairs applied on Q, in Q indices
    used_fallback: bool = False


def collapse_target(config_q: HullConfig, corner: int, target=None):
    """The H(n) element obtained by demoting ``corner`` of Q (labels = Q indices)."""
    from . import hullposet

    q_elem = hullposet.as_element(config_q)
    if corner not in q_elem.corners:
        raise ValueError(f"point {corner} is not a corner of {config_q}")
    if target is not None:
        if target not in hullposet.elementary_collapses(q_elem) or corner in _extremes(target):
            raise ValueError(f"{target} is not a collapse of corner {corner}")
        return target
    if q_elem.rank >= 4:
        return hullposet.HullElement.cyclic(q_elem.order, q_elem.corners - {corner})
    for cand in hullposet.elementary_collapses(q_elem):
        if corner not in _extremes(cand):
            return cand
    raise AssertionError("triangle without flattening")


def _extremes(elem):
    if elem.kind == "linear":
        return {elem.order[0], elem.order[-1]}
    return set(elem.corners)


def collapse_repair(config_q: HullConfig, tree_q, corner: int, rho: Partition, target=None, fallback=False) -> Repair:
    """A cg tree on P = m(Q) whose Boolean subposet contains m(rho).

    Follows the constructive argument: keep m(tree) if it already works;
    otherwise slide edges at the neighbour v_j of the collapsed corner on the
    geodesic between the corner's boundary neighbours.
    """
    from . import hullposet

    tree_q = _as_forest(config_q, tree_q)
    if not is_noncrossing_tree(config_q, tree_q) or not has_convex_geodesics(config_q, tree_q):
        raise ValueError("tree_q must be a noncrossing tree with convex geodesics")
    if not in_bool(tree_q, rho):
        raise ValueError(f"{rho} is not in Bool({tree_q})")
    p_elem = collapse_target(config_q, corner, target)
    config_p, labels = hullposet.element_config(p_elem)
    to_p = {q: i for i, q in enumerate(labels)}
    rho_p = rho.relabel(to_p)
    if not is_noncrossing(config_p, rho_p):
        raise ValueError(f"{rho} is not noncrossing after the collapse")
    n = config_q.n

    def certify(t):
        tp = t.relabel(n, to_p)
        if is_noncrossing_tree(config_p, tp) and has_convex_geodesics(config_p, tp) and in_bool(tp, rho_p):
            return tp
        return None

    done = certify(tree_q)
    if done is not None:
        return Repair(config_p, labels, done, [])
    for slides in _repair_candidates(config_q, tree_q, corner, rho):
        t = tree_q
        try:
            for e, f in slides:
                t = slide(config_q, t, e, f)
        except SlideError:
            continue
        if not in_bool(t, rho):
            continue
        done = certify(t)
        if done is not None:
            return Repair(config_p, labels, done, slides)
    found = _slide_search(config_q, tree_q, rho, certify)
    if found is not None:
        slides, done = found
        return Repair(config_p, labels, done, slides)
    if fallback:
        for t in enumerate_cg_trees(config_p):
            if in_bool(t, rho_p):
                return Repair(config_p, labels, t, [], used_fallback=True)
    raise AssertionError(f"no slide sequence repairs {tree_q} at corner {corner} for {rho}")


def _slide_search(config_q, tree, rho, certify, max_depth=None):
    """Breadth-first search over slides through noncrossing trees on Q that keep rho in Bool.

    A single slide, as in the constructive argument, is not always enough:
    on [1;0;0;0] the slid tree can still miss a collinear point on a geodesic
    between corners, so longer slide sequences are tried in order of length.
    Intermediate trees need not have convex geodesics on Q, so membership of
    rho is checked directly rather than through the slide criterion.
    """
    from collections import deque

    max_depth = config_q.n if max_depth is None else max_depth
    coords = realize(config_q)
    seen = {tree.edges}
    queue = deque([(tree, [])])
    while queue:
        t, path = queue.popleft()
        if len(path) >= max_depth:
            continue
        adj = t.adjacency()
        for q in range(config_q.n):
            order = _ccw_neighbors(coords, q, adj[q])
            if len(order) < 2:
                continue
            pairs = set()
            for a in range(len(order)):
                u, w = order[a], order[(a + 1) % len(order)]
                pairs.add((u, w))
                pairs.add((w, u))
            for p, r in sorted(pairs):
                if not edge_clear(config_q, p, r):
                    continue
                new = t.replace((p, q), (p, r))
                if new.edges in seen:
                    continue
                seen.add(new.edges)
                if not is_noncrossing_tree(config_q, new) or not in_bool(new, rho):
                    continue
                steps = path + [((p, q), (q, r))]
                done = certify(new)
                if done is not None:
                    return steps, done
                queue.append((new, steps))
    return None


def _repair_candidates(config_q, tree, z, rho):
    n = config_q.n
    z_minus, z_plus = (z - 1) % n, (z + 1) % n
    path = tree_path(tree, z_minus, z_plus)
    if z in path:
        return
    (vj,) = tree.adjacency()[z]
    j = path.index(vj)
    blk = rho.block_of(vj)
    if z in blk:
        # shared block: slide a geodesic edge at v_j along {v_j, z}
        for nb in (j - 1, j + 1):
            if 0 <= nb < len(path):
                yield [((path[nb], vj), (vj, z))]
        return
    # z is a singleton: walk z's edge along the geodesic inside v_j's block
    for step in (-1, 1):
        moves, cur = [], j
        while 0 <= cur + step < len(path) and path[cur + step] in blk:
            moves.append(((z, path[cur]), (path[cur], path[cur + step])))
            cur += step
        if not 0 <= cur + step < len(path):
            continue
        v_l = path[cur + step]
        yield moves + [((v_l, path[cur]), (path[cur], z))]
