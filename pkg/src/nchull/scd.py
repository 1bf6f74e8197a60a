"""Symmetric chain decompositions of NC(P) when P has a blank side.

Recursion: with the blank side rotated to side 1, NC(P) splits into the part
where z_{1,0} is a singleton or joined to z_{k,c_k} (a copy of
NC(P - z_{1,0}) x Bool(1)) and intervals [alpha_ij, beta_ij], each a copy of
NC(A_ij) x NC(B_ij).  Chains of the pieces are combined with the hook
construction for products.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache

from .configuration import HullConfig, blank_sides, point_index, rotate, subconfig
from .lattice import NCLattice, Partition, build_lattice


class NoBlankSideError(ValueError):
    """The polygon has no blank side, so the decomposition theorem does not apply."""


@dataclass
class ChainDecomposition:
    chains: list[list[int]]

    def sizes(self) -> list[int]:
        return sorted((len(c) for c in self.chains), reverse=True)

    def to_json(self, config: HullConfig) -> str:
        return json.dumps({"shape": str(config), "chains": self.chains}, sort_keys=True)


@dataclass
class SCDReport:
    disjoint: bool = True
    covering: bool = True
    saturated: bool = True
    centered: bool = True
    witness: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.disjoint and self.covering and self.saturated and self.centered

    def as_dict(self) -> dict:
        return {
            "disjoint": self.disjoint,
            "covering": self.covering,
            "saturated": self.saturated,
            "centered": self.centered,
            "witness": self.witness,
        }


def bool_scd(m: int) -> list[list[frozenset]]:
    """SCD of the subsets of range(m) by parenthesis matching.

    Members are ')' and non-members '('.  Matched pairs stay fixed along a
    chain; the unmatched positions read ')))(((' and a chain steps up by
    turning the leftmost unmatched '(' into ')'.
    """
    chains = []
    for bits in range(1 << m):
        stack, unmatched_close = [], False
        for i in range(m):
            if bits >> i & 1:
                if stack:
                    stack.pop()
                else:
                    unmatched_close = True
            else:
                stack.append(i)
        if unmatched_close:
            continue  # not the bottom of its chain
        free = _unmatched_open(bits, m)
        chain, cur = [frozenset(i for i in range(m) if bits >> i & 1)], set(i for i in range(m) if bits >> i & 1)
        for i in free:
            cur.add(i)
            chain.append(frozenset(cur))
        chains.append(chain)
    return chains


def _unmatched_open(bits: int, m: int) -> list[int]:
    stack = []
    for i in range(m):
        if bits >> i & 1:
            if stack:
                stack.pop()
        else:
            stack.append(i)
    return stack


def product_scd(chains_a, height_a, chains_b, height_b, rank_a, rank_b) -> list[list[tuple]]:
    """SCD of a product poset from SCDs of the factors.

    Each pair of chains (lengths p >= q, say) is peeled into q hooks; hook t
    walks the longer chain at position t of the shorter one, then climbs the
    shorter one.  Elements of the result are pairs ``(a, b)``.
    """
    for chains, height, rank in ((chains_a, height_a, rank_a), (chains_b, height_b, rank_b)):
        for c in chains:
            rs = [rank(x) for x in c]
            if any(r2 != r1 + 1 for r1, r2 in zip(rs, rs[1:])):
                raise ValueError(f"chain with rank jump: {rs}")
            if rs[0] + rs[-1] != height:
                raise ValueError(f"chain {rs} is not centered in height {height}")
    out = []
    for ca in chains_a:
        for cb in chains_b:
            swap = len(ca) < len(cb)
            long_, short = (cb, ca) if swap else (ca, cb)
            p, q = len(long_), len(short)
            for t in range(q):
                cells = [(i, t) for i in range(p - t)] + [(p - 1 - t, j) for j in range(t + 1, q)]
                if swap:
                    out.append([(short[j], long_[i]) for i, j in cells])
                else:
                    out.append([(long_[i], short[j]) for i, j in cells])
    return out


def alpha(config: HullConfig, i: int, j: int) -> Partition:
    """Atom joining z_{1,0} and z_{i,j}."""
    _check_ij(config, i, j)
    z = point_index(config, i, j)
    return Partition.of([(0, z)] + [(p,) for p in range(1, config.n) if p != z])


def beta(config: HullConfig, i: int, j: int) -> Partition:
    """Coatom {z_{1,0}..z_{i,j}} | rest."""
    _check_ij(config, i, j)
    z = point_index(config, i, j)
    return Partition.of([range(0, z + 1), range(z + 1, config.n)])


def _check_ij(config, i, j):
    if config.is_segment or config.shape[0] != 0:
        raise ValueError("side 1 must be blank")
    if not 2 <= i <= config.k - 1 or not 0 <= j <= config.shape[i - 1]:
        raise IndexError(f"(i, j) = ({i}, {j}) out of range for {config}")


def interval_indices(config: HullConfig):
    """All (i, j) with 2 <= i <= k-1, 0 <= j <= c_i."""
    return [(i, j) for i in range(2, config.k) for j in range(config.shape[i - 1] + 1)]


def decompose(config: HullConfig, lattice: NCLattice | None = None) -> dict:
    """Split NC(P) by the last point (counterclockwise from z_{1,0}) in z_{1,0}'s block."""
    if config.is_segment or config.shape[0] != 0:
        raise NoBlankSideError(f"{config}: side 1 must be blank (rotate first)")
    lattice = lattice or build_lattice(config)
    n = config.n
    where = {point_index(config, i, j): (i, j) for i, j in interval_indices(config)}
    x_part, parts = [], {ij: [] for ij in interval_indices(config)}
    for idx, blocks in enumerate(lattice.masks):
        blk = next(b for b in blocks if b & 1)
        last = blk.bit_length() - 1
        if blk == 1 or last == n - 1:
            x_part.append(idx)
        else:
            parts[where[last]].append(idx)
    return {"X": x_part, "intervals": [(i, j, parts[(i, j)]) for i, j in interval_indices(config)]}


def _arc(config, lo, hi):
    return subconfig(config, list(range(lo, hi + 1)))


def interval_product_iso(config: HullConfig, i: int, j: int, sigma: Partition, rho: Partition) -> Partition:
    """Image of (sigma, rho) in [alpha_ij, beta_ij].

    ``sigma`` partitions A_ij = {z_{2,0}..z_{i,j}} and ``rho`` partitions
    B_ij = the points after z_{i,j}; both use the point indices of ``config``.
    """
    _check_ij(config, i, j)
    z = point_index(config, i, j)
    a_pts, b_pts = set(range(1, z + 1)), set(range(z + 1, config.n))
    if {p for blk in sigma.blocks for p in blk} != a_pts:
        raise ValueError(f"sigma must partition {sorted(a_pts)}")
    if {p for blk in rho.blocks for p in blk} != b_pts:
        raise ValueError(f"rho must partition {sorted(b_pts)}")
    for part, pts in ((sigma, sorted(a_pts)), (rho, sorted(b_pts))):
        if not _sub_noncrossing(config, part, pts):
            raise ValueError(f"{part} is not noncrossing on its arc")
    blocks = [blk + (0,) if z in blk else blk for blk in sigma.blocks]
    return Partition.of(blocks + list(rho.blocks))


def _sub_noncrossing(config, part, pts):
    from .lattice import is_noncrossing

    sub, old = subconfig(config, pts)
    if sub is None:
        return True
    new = {o: t for t, o in enumerate(old)}
    return is_noncrossing(sub, part.relabel(new))


def _bump(partition: Partition, merge_zero_with: int | None) -> Partition:
    if merge_zero_with is None:
        return Partition.of(partition.blocks + ((0,),))
    return Partition.of([blk + (0,) if merge_zero_with in blk else blk for blk in partition.blocks])


def _relabel_chains(chains, old):
    return [[p.relabel(old) for p in c] for c in chains]


@lru_cache(maxsize=None)
def _local_chains(config: HullConfig | None, blank_side: int | None = None) -> tuple:
    """SCD chains as Partitions in the configuration's own point indices."""
    if config is None:
        return ((Partition(((0,),)),),)
    n = config.n
    if config.is_segment:
        out = []
        for chain in bool_scd(n - 1):
            out.append(tuple(_gaps_to_partition(s, n) for s in chain))
        return tuple(out)
    sides = blank_sides(config)
    if not sides:
        raise NoBlankSideError(f"{config} has no blank side; the chain decomposition needs a side without collinear points")
    side = blank_side or sides[0]
    if side not in sides:
        raise NoBlankSideError(f"side {side} of {config} is not blank")
    if side != 1:
        rotated, offset = rotate(config, side)
        inner = _local_chains(rotated, 1)
        back = {p: (p + offset) % n for p in range(n)}
        return tuple(tuple(p.relabel(back) for p in c) for c in inner)
    chains = []
    # X part: NC(P - z_{1,0}) x Bool(1)
    sub, old = _arc(config, 1, n - 1)
    rest = _relabel_chains(_local_chains(sub), old)
    for c in product_scd(rest, n - 2, [[False, True]], 1, lambda p: p.rank, int):
        chains.append(tuple(_bump(p, n - 1 if flag else None) for p, flag in c))
    # intervals [alpha_ij, beta_ij] ~ NC(A_ij) x NC(B_ij)
    for i, j in interval_indices(config):
        z = point_index(config, i, j)
        sub_a, old_a = _arc(config, 1, z)
        sub_b, old_b = _arc(config, z + 1, n - 1)
        ca = _relabel_chains(_local_chains(sub_a), old_a)
        cb = _relabel_chains(_local_chains(sub_b), old_b)
        for c in product_scd(ca, len(old_a) - 1, cb, len(old_b) - 1, lambda p: p.rank, lambda p: p.rank):
            chains.append(tuple(_merge_in(sigma, rho, z) for sigma, rho in c))
    return tuple(chains)


def _merge_in(sigma: Partition, rho: Partition, z: int) -> Partition:
    blocks = [blk + (0,) if z in blk else blk for blk in sigma.blocks]
    return Partition.of(blocks + list(rho.blocks))


def _gaps_to_partition(gaps, n) -> Partition:
    blocks, cur = [], [0]
    for p in range(1, n):
        if p - 1 in gaps:
            cur.append(p)
        else:
            blocks.append(cur)
            cur = [p]
    blocks.append(cur)
    return Partition.of(blocks)


def scd(config: HullConfig, lattice: NCLattice | None = None, blank_side: int | None = None) -> ChainDecomposition:
    """Symmetric chain decomposition of NC(P) as element indices of ``lattice``."""
    lattice = lattice or build_lattice(config)
    local = _local_chains(config, blank_side)
    return ChainDecomposition([[lattice.index_of(p) for p in c] for c in local])


def verify_scd(lattice: NCLattice, decomposition: ChainDecomposition) -> SCDReport:
    """Check disjointness, covering, saturation and centering independently."""
    rep = SCDReport()
    height = lattice.n - 1
    seen = {}
    for ci, chain in enumerate(decomposition.chains):
        for x in chain:
            if x in seen and rep.disjoint:
                rep.disjoint = False
                rep.witness["disjoint"] = {"element": x, "chains": [seen[x], ci]}
            seen.setdefault(x, ci)
    missing = [x for x in range(len(lattice)) if x not in seen]
    if missing:
        rep.covering = False
        rep.witness["covering"] = {"missing": missing[0]}
    covers = lattice.cover_set
    ranks = lattice.ranks
    for ci, chain in enumerate(decomposition.chains):
        if not chain:
            rep.centered = False
            rep.witness.setdefault("centered", {"chain": ci, "reason": "empty"})
            continue
        if rep.saturated:
            for lo, hi in zip(chain, chain[1:]):
                if (lo, hi) not in covers:
                    rep.saturated = False
                    rep.witness["saturated"] = {"chain": ci, "pair": [lo, hi]}
                    break
        if rep.centered and ranks[chain[0]] + ranks[chain[-1]] != height:
            rep.centered = False
            rep.witness["centered"] = {"chain": ci, "ranks": [ranks[chain[0]], ranks[chain[-1]]]}
    return rep
