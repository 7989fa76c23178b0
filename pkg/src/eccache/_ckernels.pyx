# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the kernels in ``_pykernels``.

Same signatures and results; vectors must fit in 64 bits (the dispatcher in
``kernels`` routes anything wider to the Python versions).
"""

from libc.stdint cimport uint64_t, int64_t
from libc.stdlib cimport malloc, calloc, free

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_clzll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil


cdef inline int _top(uint64_t x) nogil:
    return 63 - __builtin_clzll(x)


cdef inline int _pc(uint64_t x) nogil:
    return __builtin_popcountll(x)


def rank(rows):
    cdef uint64_t basis[64]
    cdef uint64_t x
    cdef int i, t, r = 0
    for i in range(64):
        basis[i] = 0
    for row in rows:
        x = <uint64_t>row
        while x:
            t = _top(x)
            if basis[t]:
                x ^= basis[t]
            else:
                basis[t] = x
                r += 1
                break
    return r


def min_weight(rows):
    cdef int k = len(rows)
    if k == 0:
        return 0
    cdef uint64_t *g = <uint64_t *>malloc(k * sizeof(uint64_t))
    cdef uint64_t acc = 0, i, limit
    cdef int j, w, best = 65
    for j in range(k):
        g[j] = <uint64_t>rows[j]
    limit = (<uint64_t>1) << k
    with nogil:
        i = 1
        while i < limit:
            acc ^= g[__builtin_ctzll(i)]
            w = _pc(acc)
            if w < best:
                best = w
                if w == 0:
                    break
            i += 1
    free(g)
    return best


def in_j(mask, demands, side):
    cdef uint64_t e = <uint64_t>mask
    for f, x in zip(demands, side):
        if (e >> <int>f) & 1 and not (e & <uint64_t>x):
            return True
    return False


def alpha(int n, demands, side):
    """Subset DP: gis[H] = H in J and gis[H - x] for every x in H."""
    cdef int m = len(demands)
    if m == 0:
        return 0
    if n > 30:
        raise ValueError("alpha kernel limited to 30 messages")
    cdef int *fs = <int *>malloc(m * sizeof(int))
    cdef uint64_t *xs = <uint64_t *>malloc(m * sizeof(uint64_t))
    cdef unsigned char *gis = <unsigned char *>calloc((<size_t>1) << n, 1)
    cdef uint64_t h, rest, low, total = (<uint64_t>1) << n
    cdef int i, ok, best = 0, w
    for i in range(m):
        fs[i] = <int>demands[i]
        xs[i] = <uint64_t>side[i]
    with nogil:
        h = 1
        while h < total:
            ok = 1
            rest = h
            while rest:
                low = rest & (~rest + 1)
                if (h ^ low) and not gis[h ^ low]:
                    ok = 0
                    break
                rest ^= low
            if ok:
                ok = 0
                for i in range(m):
                    if (h >> fs[i]) & 1 and not (h & xs[i]):
                        ok = 1
                        break
            if ok:
                gis[h] = 1
                w = _pc(h)
                if w > best:
                    best = w
            h += 1
    free(fs)
    free(xs)
    free(gis)
    return best


cdef struct MRState:
    int m
    int hint
    int best
    uint64_t *base
    uint64_t *pmasks
    uint64_t basis[64]


cdef void _mr_dfs(MRState *st, int i, int r) nogil:
    cdef uint64_t sel, limit, v, x, pm, low, b
    cdef int t, cnt
    if r >= st.best:
        return
    if i == st.m:
        st.best = r
        return
    pm = st.pmasks[i]
    cnt = _pc(pm)
    limit = (<uint64_t>1) << cnt
    sel = 0
    while sel < limit:
        # scatter the bits of sel onto the side-information positions
        v = st.base[i]
        x = pm
        b = 1
        while x:
            low = x & (~x + 1)
            if sel & b:
                v |= low
            b <<= 1
            x ^= low
        x = v
        while x:
            t = _top(x)
            if st.basis[t]:
                x ^= st.basis[t]
            else:
                break
        if x:
            t = _top(x)
            st.basis[t] = x
            _mr_dfs(st, i + 1, r + 1)
            st.basis[t] = 0
        else:
            _mr_dfs(st, i + 1, r)
        if st.best <= st.hint:
            return
        sel += 1


def minrank(int n, demands, side, int lower_hint=0):
    cdef int m = len(demands)
    if m == 0:
        return 0
    cdef MRState st
    cdef int i
    st.m = m
    st.hint = lower_hint
    st.best = m
    st.base = <uint64_t *>malloc(m * sizeof(uint64_t))
    st.pmasks = <uint64_t *>malloc(m * sizeof(uint64_t))
    for i in range(64):
        st.basis[i] = 0
    for i in range(m):
        st.base[i] = (<uint64_t>1) << <int>demands[i]
        st.pmasks[i] = <uint64_t>side[i]
    with nogil:
        _mr_dfs(&st, 0, 0)
    free(st.base)
    free(st.pmasks)
    return st.best


cdef struct SSState:
    int k
    int d
    int r
    int canonical
    uint64_t full
    uint64_t *span
    uint64_t *rows
    uint64_t *cands
    int ncand


cdef int _ss_dfs(SSState *st, int i, int64_t prev, uint64_t tied) nogil:
    cdef int c, ok
    cdef uint64_t a, u, t, half
    if i == st.k:
        return 1
    half = (<uint64_t>1) << i
    for c in range(st.ncand):
        a = st.cands[c]
        if st.canonical:
            if <int64_t>a < prev or (st.d >= 3 and <int64_t>a == prev):
                continue
            if tied & a & ~(a << 1):
                continue
        ok = 1
        u = 0
        while u < half:
            t = st.span[u] ^ a
            if _pc(u) + 1 + _pc(t) < st.d:
                ok = 0
                break
            st.span[u | half] = t
            u += 1
        if not ok:
            continue
        st.rows[i] = a
        if _ss_dfs(st, i + 1, <int64_t>a,
                   (tied & ~(a ^ (a << 1)) & st.full) if st.canonical else 0):
            return 1
    return 0


def systematic_search(int k, int d, int n, canonical=False):
    cdef int r = n - k
    if k == 0:
        return []
    if r < 0:
        return None
    if k > 24 or r > 63:
        raise ValueError("systematic_search kernel limited to k <= 24, n - k <= 63")
    cdef SSState st
    cdef uint64_t a
    cdef int found, i
    cands = [a for a in range(1 << r) if bin(a).count("1") >= d - 1]
    st.k = k
    st.d = d
    st.r = r
    st.canonical = 1 if canonical else 0
    st.full = ((<uint64_t>1) << r) - 1
    st.ncand = len(cands)
    st.span = <uint64_t *>calloc((<size_t>1) << k, sizeof(uint64_t))
    st.rows = <uint64_t *>calloc(k, sizeof(uint64_t))
    st.cands = <uint64_t *>malloc((st.ncand + 1) * sizeof(uint64_t))
    for i in range(st.ncand):
        st.cands[i] = <uint64_t>cands[i]
    with nogil:
        found = _ss_dfs(&st, 0, -1, st.full & ~(<uint64_t>1))
    out = [st.rows[i] for i in range(k)] if found else None
    free(st.span)
    free(st.rows)
    free(st.cands)
    return out


def coset_table(h_cols, int n, int max_weight):
    from itertools import combinations
    table = {0: 0}
    cdef uint64_t s, e
    for w in range(1, max_weight + 1):
        for pos in combinations(range(n), w):
            s = 0
            e = 0
            for p in pos:
                s ^= <uint64_t>h_cols[p]
                e |= (<uint64_t>1) << <int>p
            if s not in table:
                table[s] = e
    return table
