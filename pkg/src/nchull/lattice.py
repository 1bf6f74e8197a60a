"""The lattice NC(P) of noncrossing partitions of a hull configuration."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property

from .configuration import HullConfig
from .kernels import backend_for
from .oracle import BudgetError

DEFAULT_MAX_N = 12
FILTER_MAX_N = 9


@dataclass(frozen=True, slots=True)
class Partition:
    """Set partition of point indices; blocks sorted, ordered by minimum."""

    blocks: tuple[tuple[int, ...], ...]

    @classmethod
    def of(cls, blocks) -> Partition:
        bl = [tuple(sorted(b)) for b in blocks]
        if any(not b for b in bl):
            raise ValueError("empty block")
        bl.sort()
        return cls(tuple(bl))

    @classmethod
    def from_masks(cls, masks) -> Partition:
        out = []
        for m in masks:
            blk, p = [], 0
            while m:
                if m & 1:
                    blk.append(p)
                m >>= 1
                p += 1
            out.append(tuple(blk))
        out.sort()
        return cls(tuple(out))

    @classmethod
    def parse(cls, text: str) -> Partition:
        """Inverse of ``str``: ``0,1|2|3,4,5``."""
        try:
            return cls.of(tuple(int(x) for x in blk.split(",")) for blk in text.split("|"))
        except ValueError as exc:
            raise ValueError(f"malformed partition string {text!r}") from exc

    @classmethod
    def singletons(cls, n: int) -> Partition:
        return cls(tuple((i,) for i in range(n)))

    @classmethod
    def single_block(cls, n: int) -> Partition:
        return cls((tuple(range(n)),))

    @property
    def n(self) -> int:
        return sum(len(b) for b in self.blocks)

    @property
    def rank(self) -> int:
        return self.n - len(self.blocks)

    def masks(self) -> tuple[int, ...]:
        return tuple(sum(1 << p for p in b) for b in self.blocks)

    def block_of(self, p: int) -> tuple[int, ...]:
        for b in self.blocks:
            if p in b:
                return b
        raise KeyError(p)

    def relabel(self, mapping) -> Partition:
        return Partition.of(tuple(mapping[p] for p in b) for b in self.blocks)

    def leq(self, other: Partition) -> bool:
        """Refinement order."""
        where = {p: i for i, b in enumerate(other.blocks) for p in b}
        return all(len({where[p] for p in b}) == 1 for b in self.blocks)

    def validate(self, n: int) -> None:
        pts = [p for b in self.blocks for p in b]
        if sorted(pts) != list(range(n)):
            raise ValueError(f"{self} is not a partition of 0..{n - 1}")
        if self != Partition.of(self.blocks):
            raise ValueError(f"{self.blocks} is not in canonical form")

    def __str__(self):
        return "|".join(",".join(map(str, b)) for b in self.blocks)


def _mask(block) -> int:
    m = 0
    for p in block:
        m |= 1 << p
    return m


def _sorted_masks(masks) -> tuple[int, ...]:
    return tuple(sorted(masks, key=lambda b: b & -b))


def blocks_cross(config: HullConfig, b1, b2) -> bool:
    """True iff the convex hulls of two disjoint point sets meet."""
    a, b = _mask(b1), _mask(b2)
    if not a or not b:
        raise ValueError("blocks must be nonempty")
    if a & b:
        raise ValueError("blocks overlap")
    return bool(backend_for(config.n).blocks_cross(a, b, config.between, config.n))


def is_noncrossing(config: HullConfig, partition: Partition) -> bool:
    partition.validate(config.n)
    return bool(backend_for(config.n).is_noncrossing(partition.masks(), config.between, config.n))


def enumerate_noncrossing(config: HullConfig, method: str = "auto") -> list[tuple[int, ...]]:
    """Noncrossing partitions as block-mask tuples, in RGS lexicographic order."""
    kern = backend_for(config.n)
    if method == "auto":
        method = "filter" if config.n <= FILTER_MAX_N else "recursive"
    if method == "filter":
        return kern.enumerate_filter(config.n, config.between)
    if method == "recursive":
        return kern.enumerate_recursive(config.n, config.between)
    raise ValueError(f"unknown method {method!r}")


def _rgs_key(masks, n):
    rgs = [0] * n
    for i, m in enumerate(masks):
        p = 0
        while m:
            if m & 1:
                rgs[p] = i
            m >>= 1
            p += 1
    return tuple(rgs)


@dataclass
class NCLattice:
    config: HullConfig
    masks: list[tuple[int, ...]]
    covers: list[tuple[int, int]]
    index: dict = field(repr=False)

    @property
    def n(self) -> int:
        return self.config.n

    def __len__(self):
        return len(self.masks)

    @cached_property
    def elements(self) -> list[Partition]:
        return [Partition.from_masks(m) for m in self.masks]

    @cached_property
    def ranks(self) -> list[int]:
        return [self.n - len(m) for m in self.masks]

    @property
    def bottom(self) -> int:
        return 0

    @property
    def top(self) -> int:
        return len(self.masks) - 1

    @cached_property
    def upper_covers(self) -> list[list[int]]:
        up = [[] for _ in self.masks]
        for lo, hi in self.covers:
            up[lo].append(hi)
        return up

    @cached_property
    def cover_set(self) -> frozenset:
        return frozenset(self.covers)

    def index_of(self, partition: Partition) -> int:
        try:
            return self.index[_sorted_masks(partition.masks())]
        except KeyError:
            raise KeyError(f"{partition} is not an element of NC({self.config})") from None

    def leq(self, a: int, b: int) -> bool:
        where = {}
        for blk in self.masks[b]:
            m = blk
            while m:
                low = m & -m
                where[low] = blk
                m ^= low
        return all(blk & ~where[blk & -blk] == 0 for blk in self.masks[a])

    def atoms(self) -> list[int]:
        return [i for i, r in enumerate(self.ranks) if r == 1]

    def coatoms(self) -> list[int]:
        return [i for i, r in enumerate(self.ranks) if r == self.n - 2]

    def to_json(self) -> dict:
        return {
            "shape": str(self.config),
            "n": self.n,
            "elements": [str(e) for e in self.elements],
            "ranks": list(self.ranks),
            "covers": [list(c) for c in self.covers],
        }

    def to_dot(self) -> str:
        lines = ["digraph hasse {", "  rankdir=BT;", "  node [shape=box, fontname=monospace];"]
        for i, e in enumerate(self.elements):
            lines.append(f'  n{i} [label="{e}"];')
        for lo, hi in self.covers:
            lines.append(f"  n{lo} -> n{hi} [arrowhead=none];")
        lines.append("}")
        return "\n".join(lines) + "\n"


def build_lattice(config: HullConfig, max_n: int = DEFAULT_MAX_N, method: str = "auto", max_partitions=None) -> NCLattice:
    """Enumerate NC(P), order elements by (rank, RGS), and compute merge covers."""
    n = config.n
    if n > max_n:
        raise BudgetError(f"n={n} exceeds lattice budget max_n={max_n}")
    masks = enumerate_noncrossing(config, method)
    if max_partitions is not None and len(masks) > max_partitions:
        raise BudgetError(f"{len(masks)} partitions exceeds budget {max_partitions}")
    masks.sort(key=lambda m: (n - len(m), _rgs_key(m, n)))
    index = {m: i for i, m in enumerate(masks)}
    covers = backend_for(n).merge_covers(masks, index, config.between, n)
    covers.sort()
    return NCLattice(config, masks, covers, index)


def meet(lattice: NCLattice, a: int, b: int) -> int:
    """Common refinement (blockwise intersections)."""
    out = []
    for x in lattice.masks[a]:
        for y in lattice.masks[b]:
            if x & y:
                out.append(x & y)
    return lattice.index[_sorted_masks(out)]


def _coarsen(ma, mb):
    blocks = list(ma)
    for y in mb:
        hit = [x for x in blocks if x & y]
        merged = y
        for x in hit:
            merged |= x
            blocks.remove(x)
        blocks.append(merged)
    return blocks


def join(lattice: NCLattice, a: int, b: int) -> int:
    """Transitive-closure coarsening, then merge hull-intersecting blocks to a fixpoint."""
    cfg = lattice.config
    blocks = _coarsen(lattice.masks[a], lattice.masks[b])
    merged = backend_for(cfg.n).hull_merge(blocks, cfg.between, cfg.n)
    return lattice.index[merged]


def join_partitions(config: HullConfig, partitions) -> Partition:
    """Join in NC(P) of arbitrary (possibly crossing) partitions, without building the lattice."""
    blocks = [1 << p for p in range(config.n)]
    for part in partitions:
        blocks = _coarsen(blocks, part.masks())
    return Partition.from_masks(backend_for(config.n).hull_merge(blocks, config.between, config.n))


def rank_polynomial(lattice: NCLattice) -> list[int]:
    counts = [0] * lattice.n
    for r in lattice.ranks:
        counts[r] += 1
    return counts


def is_rank_symmetric(lattice: NCLattice) -> bool:
    """Rank counts symmetric about (n-1)/2, pairing rank k with n-1-k."""
    counts = rank_polynomial(lattice)
    return counts == counts[::-1]


def is_graded(lattice: NCLattice) -> bool:
    """Every maximal chain has n-1 covers.

    Merge covers raise rank by exactly one, so the lattice is graded iff the
    merge-cover graph reaches every element above a given one (otherwise some
    cover of the refinement order jumps by two or more ranks).
    """
    n = lattice.n
    ups = backend_for(n).upsets(lattice.masks, n)
    reach = [0] * len(lattice)
    upper = lattice.upper_covers
    for i in sorted(range(len(lattice)), key=lambda i: -lattice.ranks[i]):
        r = 1 << i
        for j in upper[i]:
            r |= reach[j]
        reach[i] = r
    if reach != ups:
        return False
    ranks = lattice.ranks
    return ranks[lattice.bottom] == 0 and ranks[lattice.top] == n - 1


def refinement_covers(lattice: NCLattice) -> list[tuple[int, int]]:
    """Hasse diagram recomputed from the order relation alone (slow; for checks)."""
    n = lattice.n
    ups = backend_for(n).upsets(lattice.masks, n)
    out = []
    for i, u in enumerate(ups):
        strict = u & ~(1 << i)
        above = [j for j in range(len(lattice)) if strict >> j & 1]
        for j in above:
            if not any(m != j and ups[m] >> j & 1 for m in above):
                out.append((i, j))
    return sorted(out)


def embedding_check(p, q) -> bool:
    """Identity injection NC(P) -> NC(Q) for P <= Q in H(n), points identified by label.

    ``p`` and ``q`` are ``HullElement``s, or ``HullConfig``s read with their
    own point indices as labels.
    """
    from . import hullposet

    a, b = hullposet.as_element(p), hullposet.as_element(q)
    if not hullposet.leq(a, b):
        raise ValueError(f"{a} is not below {b} in H(n)")
    lat_p, labels_p = hullposet.labeled_lattice(a)
    lat_q, labels_q = hullposet.labeled_lattice(b)
    to_q = {label: i for i, label in enumerate(labels_q)}
    image = []
    for e in lat_p.elements:
        try:
            image.append(lat_q.index_of(e.relabel(labels_p).relabel(to_q)))
        except KeyError:
            return False
    return all(
        lat_p.leq(i, j) == lat_q.leq(image[i], image[j]) for i in range(len(lat_p)) for j in range(len(lat_p))
    )


def lattice_json(lattice: NCLattice) -> str:
    return json.dumps(lattice.to_json(), sort_keys=True)
