# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels mirroring ``_pykernels`` for n <= 63 points."""

from libc.stdlib cimport malloc, free

ctypedef unsigned long long u64

MAX_N = 63


cdef extern from *:
    int __builtin_ctzll(unsigned long long) nogil


cdef inline u64 c_hull(u64 mask, const u64* between, int n) nogil:
    cdef u64 out = mask, m = mask, rest, low
    cdef int x
    while m:
        x = __builtin_ctzll(m)
        m &= m - 1
        rest = m
        while rest:
            out |= between[x * n + __builtin_ctzll(rest)]
            rest &= rest - 1
    return out


cdef inline bint c_interleave(u64 a, u64 b, int n) nogil:
    cdef int prev = __builtin_ctzll(a), cur
    cdef u64 m = a & (a - 1), seg, gap = 0, full, wrap
    cdef int hits = 0
    while m:
        cur = __builtin_ctzll(m)
        seg = ((<u64>1 << cur) - 1) ^ ((<u64>1 << (prev + 1)) - 1)
        if b & seg:
            hits += 1
            if hits > 1:
                return True
        gap |= seg
        prev = cur
        m &= m - 1
    full = (<u64>1 << n) - 1
    wrap = full & ~(gap | a)
    if b & wrap:
        hits += 1
    return hits > 1


cdef inline bint c_cross(u64 a, u64 b, const u64* between, int n) nogil:
    if c_hull(a, between, n) & b or c_hull(b, between, n) & a:
        return True
    if (a & (a - 1)) == 0 or (b & (b - 1)) == 0:
        return False
    return c_interleave(a, b, n)


cdef u64* load_table(between, int n) except NULL:
    cdef u64* t = <u64*> malloc(n * n * sizeof(u64) + 8)
    if t == NULL:
        raise MemoryError()
    for i in range(n * n):
        t[i] = between[i]
    return t


def _check(int n):
    if n > MAX_N:
        raise ValueError(f"compiled kernels support at most {MAX_N} points")


def hull_mask(mask, between, int n):
    _check(n)
    cdef u64* t = load_table(between, n)
    try:
        return c_hull(mask, t, n)
    finally:
        free(t)


def blocks_cross(a, b, between, int n):
    _check(n)
    cdef u64* t = load_table(between, n)
    try:
        return c_cross(a, b, t, n)
    finally:
        free(t)


def is_noncrossing(blocks, between, int n):
    _check(n)
    cdef u64* t = load_table(between, n)
    cdef list bl = [int(b) for b in blocks]
    cdef int i, j, m = len(bl)
    try:
        for i in range(m):
            for j in range(i + 1, m):
                if c_cross(bl[i], bl[j], t, n):
                    return False
        return True
    finally:
        free(t)


cdef class _Enum:
    cdef u64* table
    cdef int n
    cdef u64 blocks[64]
    cdef int nblocks
    cdef int rgs[64]
    cdef list out

    cdef bint ok(self, int i):
        cdef int j
        for j in range(self.nblocks):
            if j != i and c_cross(self.blocks[i], self.blocks[j], self.table, self.n):
                return False
        return True

    cdef void emit(self):
        self.out.append(tuple([self.blocks[i] for i in range(self.nblocks)]))

    cdef void rec(self, int t):
        cdef int i
        cdef u64 bit, old
        if t == self.n:
            self.emit()
            return
        bit = <u64>1 << t
        for i in range(self.nblocks):
            old = self.blocks[i]
            self.blocks[i] = old | bit
            if self.ok(i):
                self.rec(t + 1)
            self.blocks[i] = old
        self.blocks[self.nblocks] = bit
        self.nblocks += 1
        if self.ok(self.nblocks - 1):
            self.rec(t + 1)
        self.nblocks -= 1

    cdef void rec_filter(self, int t, int top):
        cdef int b, i, j, p
        cdef bint good
        if t == self.n:
            self.nblocks = top + 1
            for i in range(self.nblocks):
                self.blocks[i] = 0
            for p in range(self.n):
                self.blocks[self.rgs[p]] |= <u64>1 << p
            good = True
            for i in range(self.nblocks):
                for j in range(i + 1, self.nblocks):
                    if c_cross(self.blocks[i], self.blocks[j], self.table, self.n):
                        good = False
                        break
                if not good:
                    break
            if good:
                self.emit()
            return
        for b in range(top + 2):
            self.rgs[t] = b
            self.rec_filter(t + 1, top if b <= top else b)


def enumerate_recursive(int n, between):
    _check(n)
    cdef _Enum e = _Enum()
    e.table = load_table(between, n)
    e.n = n
    e.nblocks = 0
    e.out = []
    try:
        if n:
            e.rec(0)
        return e.out
    finally:
        free(e.table)


def enumerate_filter(int n, between):
    _check(n)
    cdef _Enum e = _Enum()
    e.table = load_table(between, n)
    e.n = n
    e.out = []
    try:
        if n:
            e.rgs[0] = 0
            e.rec_filter(1, 0)
        return e.out
    finally:
        free(e.table)


def merge_covers(elements, dict index, between, int n):
    _check(n)
    cdef u64* t = load_table(between, n)
    cdef u64 bl[64]
    cdef u64 merged
    cdef int lo, i, j, s, m
    cdef bint good
    cdef list covers = []
    cdef tuple blocks
    try:
        for lo in range(len(elements)):
            blocks = elements[lo]
            m = len(blocks)
            for i in range(m):
                bl[i] = blocks[i]
            for i in range(m):
                for j in range(i + 1, m):
                    merged = bl[i] | bl[j]
                    good = True
                    for s in range(m):
                        if s != i and s != j and c_cross(merged, bl[s], t, n):
                            good = False
                            break
                    if good:
                        new = blocks[:i] + (merged,) + blocks[i + 1:j] + blocks[j + 1:]
                        covers.append((lo, index[new]))
        return covers
    finally:
        free(t)


def hull_merge(blocks, between, int n):
    _check(n)
    cdef u64* t = load_table(between, n)
    cdef u64 bl[64]
    cdef int m = len(blocks), i, j, s
    cdef bint changed = True
    try:
        for i in range(m):
            bl[i] = blocks[i]
        while changed:
            changed = False
            for i in range(m):
                for j in range(i + 1, m):
                    if c_cross(bl[i], bl[j], t, n):
                        bl[i] |= bl[j]
                        for s in range(j, m - 1):
                            bl[s] = bl[s + 1]
                        m -= 1
                        changed = True
                        break
                if changed:
                    break
        return tuple(sorted([bl[i] for i in range(m)], key=lambda b: b & -b))
    finally:
        free(t)


def upsets(elements, int n):
    _check(n)
    cdef int N = len(elements), a, b, p, q, nb
    cdef u64* where = <u64*> malloc(N * n * sizeof(u64) + 8)
    cdef u64* low = <u64*> malloc(64 * sizeof(u64))
    cdef int lowpos[64]
    cdef u64 m, blk
    cdef bint ok
    cdef list out = []
    if where == NULL or low == NULL:
        raise MemoryError()
    try:
        for a in range(N):
            for blk in elements[a]:
                m = blk
                while m:
                    where[a * n + __builtin_ctzll(m)] = blk
                    m &= m - 1
        for a in range(N):
            blocks = elements[a]
            nb = len(blocks)
            for q in range(nb):
                low[q] = blocks[q]
                lowpos[q] = __builtin_ctzll(low[q])
            bits = 0
            for b in range(N):
                ok = True
                for q in range(nb):
                    if low[q] & ~where[b * n + lowpos[q]]:
                        ok = False
                        break
                if ok:
                    bits |= (<object>1) << b
            out.append(bits)
        return out
    finally:
        free(where)
        free(low)
