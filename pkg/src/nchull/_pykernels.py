"""Pure-Python kernels; reference implementation of the compiled ``_ckernels``.

Partitions are tuples of block bitmasks sorted by lowest set bit.  ``between``
is the flattened ``n*n`` table from ``HullConfig.between``.
"""


def hull_mask(mask, between, n):
    """Points of the configuration inside Conv(block)."""
    out = mask
    m = mask
    while m:
        low = m & -m
        x = low.bit_length() - 1
        m ^= low
        rest = m
        row = x * n
        while rest:
            lb = rest & -rest
            out |= between[row + lb.bit_length() - 1]
            rest ^= lb
    return out


def _interleave(a, b, n):
    # b meets at least two of the open arcs cut out by the points of a
    first = a & -a
    gap = 0
    hits = 0
    prev = first.bit_length() - 1
    m = a ^ first
    while m:
        low = m & -m
        cur = low.bit_length() - 1
        seg = ((1 << cur) - 1) ^ ((1 << (prev + 1)) - 1)
        if b & seg:
            hits += 1
            if hits > 1:
                return True
        gap |= seg
        prev = cur
        m ^= low
    # wrap-around arc
    full = (1 << n) - 1
    wrap = full & ~(gap | a)
    if b & wrap:
        hits += 1
    return hits > 1


def blocks_cross(a, b, between, n):
    """True iff Conv(a) and Conv(b) meet, for disjoint boundary blocks a, b."""
    if hull_mask(a, between, n) & b or hull_mask(b, between, n) & a:
        return True
    if a & (a - 1) == 0 or b & (b - 1) == 0:
        return False
    return _interleave(a, b, n)


def is_noncrossing(blocks, between, n):
    for i in range(len(blocks)):
        for j in range(i + 1, len(blocks)):
            if blocks_cross(blocks[i], blocks[j], between, n):
                return False
    return True


def enumerate_filter(n, between):
    """Noncrossing partitions by filtering every restricted growth string."""
    out = []
    rgs = [0] * n

    def rec(t, top):
        if t == n:
            blocks = [0] * (top + 1)
            for p in range(n):
                blocks[rgs[p]] |= 1 << p
            if is_noncrossing(blocks, between, n):
                out.append(tuple(blocks))
            return
        for b in range(top + 2):
            rgs[t] = b
            rec(t + 1, top if b <= top else b)

    if n:
        rec(1, 0)
    return out


def enumerate_recursive(n, between):
    """Noncrossing partitions point by point, pruning as soon as two blocks cross.

    Hulls only grow as points are added, so a crossing prefix never recovers.
    Output order equals the RGS lexicographic order of ``enumerate_filter``.
    """
    out = []
    blocks = []

    def ok(i):
        bi = blocks[i]
        for j in range(len(blocks)):
            if j != i and blocks_cross(bi, blocks[j], between, n):
                return False
        return True

    def rec(t):
        if t == n:
            out.append(tuple(blocks))
            return
        bit = 1 << t
        for i in range(len(blocks)):
            old = blocks[i]
            blocks[i] = old | bit
            if ok(i):
                rec(t + 1)
            blocks[i] = old
        blocks.append(bit)
        if ok(len(blocks) - 1):
            rec(t + 1)
        blocks.pop()

    if n:
        rec(0)
    return out


def merge_covers(elements, index, between, n):
    """(lower, upper) index pairs where upper merges two blocks of lower."""
    covers = []
    for lo, blocks in enumerate(elements):
        m = len(blocks)
        for i in range(m):
            for j in range(i + 1, m):
                merged = blocks[i] | blocks[j]
                good = True
                for t in range(m):
                    if t != i and t != j and blocks_cross(merged, blocks[t], between, n):
                        good = False
                        break
                if good:
                    new = blocks[:i] + (merged,) + blocks[i + 1 : j] + blocks[j + 1 :]
                    covers.append((lo, index[new]))
    return covers


def hull_merge(blocks, between, n):
    """Merge crossing blocks until the partition is noncrossing."""
    blocks = list(blocks)
    changed = True
    while changed:
        changed = False
        for i in range(len(blocks)):
            for j in range(i + 1, len(blocks)):
                if blocks_cross(blocks[i], blocks[j], between, n):
                    blocks[i] |= blocks[j]
                    del blocks[j]
                    changed = True
                    break
            if changed:
                break
    return tuple(sorted(blocks, key=lambda b: b & -b))


def upsets(elements, n):
    """For each element, a bitset (int) of the elements above it in refinement."""
    owner = []
    for blocks in elements:
        where = [0] * n
        for b in blocks:
            m = b
            while m:
                low = m & -m
                where[low.bit_length() - 1] = b
                m ^= low
        owner.append(where)
    out = []
    for blocks in elements:
        lows = [(b, (b & -b).bit_length() - 1) for b in blocks]
        bits = 0
        for j, where in enumerate(owner):
            for b, p in lows:
                if b & ~where[p]:
                    break
            else:
                bits |= 1 << j
        out.append(bits)
    return out
