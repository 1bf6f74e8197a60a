"""The poset H(n) of hull configurations on n labelled points.

A rank-k element (k >= 3) is a cyclic order of the labels together with the
set of k labels that are hull corners.  A rank-2 element is a linear order of
the labels up to reversal.  Elementary collapses go down one rank.
"""

from __future__ import annotations

import itertools
import json
import math
from collections import deque
from dataclasses import dataclass
from functools import lru_cache

from .configuration import HullConfig

CYCLIC = "cyclic"
LINEAR = "linear"


@dataclass(frozen=True)
class HullElement:
    kind: str
    order: tuple[int, ...]
    corners: frozenset = frozenset()

    @classmethod
    def cyclic(cls, order, corners) -> HullElement:
        order = tuple(order)
        corners = frozenset(corners)
        if len(corners) < 3 or not corners <= set(order):
            raise ValueError("a polygon element needs at least 3 corners among its labels")
        s = order.index(min(order))
        return cls(CYCLIC, order[s:] + order[:s], corners)

    @classmethod
    def linear(cls, order) -> HullElement:
        order = tuple(order)
        if len(order) < 2:
            raise ValueError("a linear element needs at least 2 labels")
        return cls(LINEAR, min(order, order[::-1]))

    @classmethod
    def parse(cls, text: str) -> HullElement:
        if text.startswith("linear:"):
            return cls.linear(int(x) for x in text[7:].split(","))
        if text.startswith("cyclic:"):
            body, _, corners = text[7:].partition("|corners:")
            return cls.cyclic((int(x) for x in body.split(",")), (int(x) for x in corners.split(",")))
        raise ValueError(f"malformed H(n) element {text!r}")

    @property
    def n(self) -> int:
        return len(self.order)

    @property
    def rank(self) -> int:
        return 2 if self.kind == LINEAR else len(self.corners)

    @property
    def labels(self) -> frozenset:
        return frozenset(self.order)

    def __str__(self):
        body = ",".join(map(str, self.order))
        if self.kind == LINEAR:
            return f"linear:{body}"
        return f"cyclic:{body}|corners:" + ",".join(map(str, sorted(self.corners)))


def enumerate_hull(n: int, k: int) -> list[HullElement]:
    """All rank-k elements of H(n) on labels 0..n-1."""
    if not 2 <= k <= n:
        raise ValueError(f"rank {k} out of range for n={n}")
    if k == 2:
        return [HullElement.linear(p) for p in itertools.permutations(range(n)) if p[0] < p[-1]]
    out = []
    for rest in itertools.permutations(range(1, n)):
        order = (0,) + rest
        for corners in itertools.combinations(range(n), k):
            out.append(HullElement(CYCLIC, order, frozenset(corners)))
    return out


def _monotone_merges(a, b):
    """All interleavings of sequences a and b preserving each one's order."""
    if not a:
        yield tuple(b)
        return
    if not b:
        yield tuple(a)
        return
    for rest in _monotone_merges(a[1:], b):
        yield (a[0],) + rest
    for rest in _monotone_merges(a, b[1:]):
        yield (b[0],) + rest


def _flattenings(element: HullElement):
    """Linear orders below a triangle element.

    The two extremes must be corners; the two boundary arcs between them run
    monotonically along the line and may interleave freely.
    """
    order = element.order
    n = len(order)
    pos = {v: i for i, v in enumerate(order)}
    for x, y in itertools.combinations(sorted(element.corners, key=pos.get), 2):
        i, j = pos[x], pos[y]
        arc1 = [order[t % n] for t in range(i + 1, j)]
        arc2 = [order[t % n] for t in range(i - 1, j - n, -1)]
        for mid in _monotone_merges(arc1, arc2):
            yield HullElement.linear((x,) + mid + (y,))


def elementary_collapses(element: HullElement) -> list[HullElement]:
    """Elements covered by ``element``."""
    if element.kind == LINEAR:
        raise ValueError("rank-2 elements have no collapses")
    if element.rank >= 4:
        return [HullElement(CYCLIC, element.order, element.corners - {c}) for c in sorted(element.corners)]
    return sorted(set(_flattenings(element)), key=str)


@lru_cache(maxsize=None)
def lower_set(element: HullElement) -> frozenset:
    """All elements reachable from ``element`` by collapses (inclusive)."""
    seen = {element}
    queue = deque([element])
    while queue:
        x = queue.popleft()
        if x.kind == LINEAR:
            continue
        for y in elementary_collapses(x):
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return frozenset(seen)


def leq(a: HullElement, b: HullElement) -> bool:
    """a <= b iff a is reachable from b by a sequence of elementary collapses."""
    if a.labels != b.labels:
        raise ValueError("elements on different label sets")
    if a.rank > b.rank:
        return False
    if a.rank == b.rank:
        return a == b
    return a in lower_set(b)


def leq_closed_form(a: HullElement, b: HullElement) -> bool:
    """Combinatorial criterion, independent of the collapse search."""
    if a.rank > b.rank:
        return False
    if b.kind == LINEAR:
        return a == b
    if a.kind == CYCLIC:
        return a.order == b.order and a.corners <= b.corners
    x, y = a.order[0], a.order[-1]
    if x not in b.corners or y not in b.corners:
        return False
    rank_in_line = {v: i for i, v in enumerate(a.order)}
    order, n = b.order, b.n
    i, j = order.index(x), order.index(y)
    arc1 = [order[t % n] for t in range(i + 1, i + (j - i) % n)]
    arc2 = [order[t % n] for t in range(i - 1, i - (i - j) % n, -1)]
    return all(
        all(rank_in_line[u] < rank_in_line[v] for u, v in zip(arc, arc[1:])) for arc in (arc1, arc2)
    )


def count_extremes(element: HullElement) -> int:
    """Maximal elements above a minimal one, or minimal elements below a maximal one."""
    n = element.n
    if element.rank == n and element.kind == CYCLIC:
        return sum(1 for x in lower_set(element) if x.kind == LINEAR)
    if element.kind == LINEAR:
        return sum(1 for m in enumerate_hull(n, n) if element in lower_set(m))
    raise ValueError("element is neither minimal nor maximal")


def interval(a: HullElement, b: HullElement) -> list[HullElement]:
    if not leq(a, b):
        raise ValueError(f"{a} is not below {b}")
    return [x for x in lower_set(b) if leq(a, x)]


def interval_is_boolean(a: HullElement, b: HullElement) -> bool:
    """[a, b] has 2^d elements and x -> {atoms below x} is an order isomorphism onto subsets."""
    elems = interval(a, b)
    d = b.rank - a.rank
    if len(elems) != 2**d:
        return False
    atoms = [x for x in elems if x.rank == a.rank + 1]
    if len(atoms) != d:
        return False
    sig = {x: frozenset(i for i, t in enumerate(atoms) if leq(t, x)) for x in elems}
    if len(set(sig.values())) != 2**d:
        return False
    return all(leq(x, y) == (sig[x] <= sig[y]) for x in elems for y in elems)


def as_element(obj) -> HullElement:
    """HullConfig -> element using its point indices as labels."""
    if isinstance(obj, HullElement):
        return obj
    if isinstance(obj, HullConfig):
        if obj.is_segment:
            return HullElement.linear(range(obj.n))
        return HullElement.cyclic(range(obj.n), obj.corner_indices)
    raise TypeError(f"cannot read {obj!r} as an H(n) element")


def element_config(element: HullElement) -> tuple[HullConfig, tuple[int, ...]]:
    """Shape of an element plus ``labels[point_index]``."""
    if element.kind == LINEAR:
        return HullConfig.segment(element.n), element.order
    order = element.order
    s = next(i for i, v in enumerate(order) if v in element.corners)
    order = order[s:] + order[:s]
    shape, count = [], 0
    for v in order[1:]:
        if v in element.corners:
            shape.append(count)
            count = 0
        else:
            count += 1
    shape.append(count)
    return HullConfig.polygon(shape), order


@lru_cache(maxsize=None)
def _nc_by_config(config: HullConfig):
    from .lattice import build_lattice

    return build_lattice(config)


def labeled_lattice(element: HullElement):
    """``(lattice, labels)`` where ``labels[i]`` is the label of point ``i``."""
    config, labels = element_config(element)
    return _nc_by_config(config), labels


def labeled_nc(element: HullElement) -> list:
    """NC of the element as partitions of its labels, in lattice order."""
    lat, labels = labeled_lattice(element)
    return [e.relabel(labels) for e in lat.elements]


def all_elements(n: int) -> list[HullElement]:
    return [x for k in range(2, n + 1) for x in enumerate_hull(n, k)]


def hasse(n: int) -> tuple[list[HullElement], list[tuple[int, int]]]:
    """Elements of H(n) sorted by (rank, string) and collapse covers (lower, upper)."""
    elems = sorted(all_elements(n), key=lambda x: (x.rank, str(x)))
    index = {x: i for i, x in enumerate(elems)}
    edges = []
    for x in elems:
        if x.kind == CYCLIC:
            for y in elementary_collapses(x):
                edges.append((index[y], index[x]))
    return elems, sorted(edges)


def hasse_json(n: int) -> str:
    elems, edges = hasse(n)
    return json.dumps({"n": n, "nodes": [str(x) for x in elems], "edges": [list(e) for e in edges]}, sort_keys=True)


def hasse_dot(n: int) -> str:
    elems, edges = hasse(n)
    lines = [f"digraph H{n} {{", "  rankdir=BT;", "  node [shape=box, fontname=monospace];"]
    for i, x in enumerate(elems):
        lines.append(f'  h{i} [label="{x}"];')
    for lo, hi in edges:
        lines.append(f"  h{lo} -> h{hi} [arrowhead=none];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def rank_counts(n: int) -> dict[int, int]:
    return {k: len(enumerate_hull(n, k)) for k in range(2, n + 1)}


def predicted_rank_count(n: int, k: int) -> int:
    if k == 2:
        return math.factorial(n) // 2
    return math.factorial(n - 1) * math.comb(n, k)
