"""Exact-geometry brute force used as ground truth.

Everything here works on explicit rational coordinates and knows nothing
about shapes, sides or bitmasks.  It is slow on purpose.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

CLOCKWISE = -1
COLLINEAR = 0
COUNTERCLOCKWISE = 1


class BudgetError(RuntimeError):
    """Raised when an exhaustive computation would exceed its size budget."""


def orientation(p, q, r) -> int:
    """Sign of the cross product (q - p) x (r - p)."""
    d = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
    return (d > 0) - (d < 0)


def on_segment(p, a, b) -> bool:
    """True iff p lies on the closed segment ab."""
    if orientation(a, b, p) != COLLINEAR:
        return False
    return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])


def segments_intersect(a, b, c, d) -> bool:
    """Closed segments ab and cd share at least one point."""
    o1, o2 = orientation(a, b, c), orientation(a, b, d)
    o3, o4 = orientation(c, d, a), orientation(c, d, b)
    if o1 * o2 < 0 and o3 * o4 < 0:
        return True
    return on_segment(c, a, b) or on_segment(d, a, b) or on_segment(a, c, d) or on_segment(b, c, d)


def convex_hull(points) -> list:
    """Hull vertices counterclockwise, collinear points dropped (monotone chain)."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def chain(seq):
        out = []
        for p in seq:
            while len(out) >= 2 and orientation(out[-2], out[-1], p) <= 0:
                out.pop()
            out.append(p)
        return out

    lower, upper = chain(pts), chain(reversed(pts))
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 2:
        # all collinear: keep the two extremes
        return [pts[0], pts[-1]]
    return hull


def in_hull(p, hull) -> bool:
    """Closed containment of p in the convex polygon (or segment/point) ``hull``."""
    if len(hull) == 1:
        return p == hull[0]
    if len(hull) == 2:
        return on_segment(p, hull[0], hull[1])
    m = len(hull)
    return all(orientation(hull[i], hull[(i + 1) % m], p) >= 0 for i in range(m))


def _edges(hull):
    if len(hull) == 1:
        return [(hull[0], hull[0])]
    if len(hull) == 2:
        return [(hull[0], hull[1])]
    return [(hull[i], hull[(i + 1) % len(hull)]) for i in range(len(hull))]


def hulls_disjoint(pts_a, pts_b) -> bool:
    """True iff Conv(A) and Conv(B) are disjoint; touching counts as meeting."""
    ha, hb = convex_hull(pts_a), convex_hull(pts_b)
    if any(in_hull(p, hb) for p in ha) or any(in_hull(p, ha) for p in hb):
        return False
    for a, b in _edges(ha):
        for c, d in _edges(hb):
            if segments_intersect(a, b, c, d):
                return False
    return True


def set_partitions(n: int):
    """All set partitions of range(n), restricted growth strings in lexicographic order."""
    if n == 0:
        yield ()
        return
    rgs = [0] * n

    def rec(t, top):
        if t == n:
            blocks = [[] for _ in range(top + 1)]
            for p, b in enumerate(rgs):
                blocks[b].append(p)
            yield tuple(tuple(b) for b in blocks)
            return
        for b in range(top + 2):
            rgs[t] = b
            yield from rec(t + 1, max(top, b))

    rgs[0] = 0
    yield from rec(1, 0)


def nc_oracle(points, partition) -> bool:
    """Hull-disjointness verdict for a partition (iterable of index blocks)."""
    blocks = [[points[i] for i in b] for b in partition]
    return all(hulls_disjoint(a, b) for a, b in itertools.combinations(blocks, 2))


def nc_lattice_oracle(points, max_n: int = 10) -> list:
    """All noncrossing partitions, as tuples of index tuples in RGS order."""
    if len(points) > max_n:
        raise BudgetError(f"{len(points)} points exceeds oracle budget {max_n}")
    return [p for p in set_partitions(len(points)) if nc_oracle(points, p)]


def point_in_hull_of(points, subset, p) -> bool:
    return in_hull(points[p], convex_hull([points[i] for i in subset]))


def _adjacency(edges):
    adj = {}
    for a, b in edges:
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    return adj


def _path(adj, x, y):
    prev, stack = {x: None}, [x]
    while stack:
        u = stack.pop()
        for v in adj.get(u, ()):
            if v not in prev:
                prev[v] = u
                stack.append(v)
    if y not in prev:
        return None
    out = [y]
    while out[-1] != x:
        out.append(prev[out[-1]])
    return out


def _is_forest(n, edges) -> bool:
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


def edges_noncrossing(points, edges) -> bool:
    """Embedded straight-line forest: no edge meets a third point, edges meet only at shared endpoints."""
    edges = [tuple(e) for e in edges]
    if not _is_forest(len(points), edges):
        return False
    for a, b in edges:
        for p in range(len(points)):
            if p not in (a, b) and on_segment(points[p], points[a], points[b]):
                return False
    for (a, b), (c, d) in itertools.combinations(edges, 2):
        shared = {a, b} & {c, d}
        if shared:
            # collinear overlap beyond the shared endpoint
            (s,) = shared
            u = b if a == s else a
            v = d if c == s else c
            if orientation(points[s], points[u], points[v]) == COLLINEAR and (
                on_segment(points[v], points[s], points[u]) or on_segment(points[u], points[s], points[v])
            ):
                return False
        elif segments_intersect(points[a], points[b], points[c], points[d]):
            return False
    return True


def cg_all_subtrees(points, edges, max_edges: int = 12) -> bool:
    """Literal definition: every subtree's hull meets the points only in its vertices."""
    edges = [tuple(e) for e in edges]
    if len(edges) > max_edges:
        raise BudgetError(f"{len(edges)} edges exceeds subtree budget {max_edges}")
    for r in range(1, len(edges) + 1):
        for sub in itertools.combinations(edges, r):
            verts = sorted({v for e in sub for v in e})
            if len(verts) != r + 1:
                continue  # disconnected subforest, not a subtree
            hull = convex_hull([points[v] for v in verts])
            vs = set(verts)
            if any(in_hull(points[p], hull) for p in range(len(points)) if p not in vs):
                return False
    return True


def cg_pairwise(points, edges) -> bool:
    """Pairwise-path formulation: each path's hull contains only the path's points."""
    adj = _adjacency(edges)
    verts = sorted(adj)
    for x, y in itertools.combinations(verts, 2):
        path = _path(adj, x, y)
        if path is None:
            continue
        hull = convex_hull([points[v] for v in path])
        vs = set(path)
        if any(in_hull(points[p], hull) for p in range(len(points)) if p not in vs):
            return False
    return True


def tree_oracle(points, edges, max_edges: int = 12) -> dict:
    """Noncrossing and convex-geodesic verdicts; cg is None when the graph is not embedded."""
    nc = edges_noncrossing(points, edges)
    if not nc:
        return {"noncrossing": False, "convex_geodesics": None}
    sub = cg_all_subtrees(points, edges, max_edges)
    pair = cg_pairwise(points, edges)
    if sub != pair:
        raise AssertionError(f"cg formulations disagree on {sorted(edges)}")
    return {"noncrossing": True, "convex_geodesics": sub}


def oracle_join_rank(points, edges) -> int:
    """Rank of the smallest noncrossing partition in which every edge's ends share a block."""
    n = len(points)
    best = None
    for p in set_partitions(n):
        block = {v: i for i, b in enumerate(p) for v in b}
        if all(block[a] == block[b] for a, b in edges) and nc_oracle(points, p):
            r = n - len(p)
            if best is None or r < best:
                best = r
    return best


def true_covers(elements) -> list:
    """Hasse diagram of refinement on explicit partitions (for non-graded demos)."""
    def leq(a, b):
        where = {v: i for i, blk in enumerate(b) for v in blk}
        return all(len({where[v] for v in blk}) == 1 for blk in a)

    ups = {i: [j for j in range(len(elements)) if i != j and leq(elements[i], elements[j])] for i in range(len(elements))}
    covers = []
    for i, above in ups.items():
        for j in above:
            if not any(m != j and j in ups[m] for m in above):
                covers.append((i, j))
    return covers


def square_with_center():
    """Four corners of a square and its exact center: a non-hull configuration."""
    F = Fraction
    return [(F(0), F(0)), (F(2), F(0)), (F(2), F(2)), (F(0), F(2)), (F(1), F(1))]
