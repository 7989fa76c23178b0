"""Pure-Python implementations of the hot search kernels.

Every function here has an identical twin in ``_ckernels.pyx``; the two are
kept behaviourally interchangeable and are cross-checked in the test suite.
Vectors over GF(2) are plain ints used as bitmasks.
"""

from __future__ import annotations

from itertools import combinations


def rank(rows):
    """Rank over GF(2) of a list of int bitmask rows."""
    basis = {}
    for x in rows:
        while x:
            top = x.bit_length() - 1
            b = basis.get(top)
            if b is None:
                basis[top] = x
                break
            x ^= b
    return len(basis)


def min_weight(rows):
    """Minimum popcount over all nonzero GF(2) combinations of ``rows``.

    Walks the span in Gray-code order so each step costs one XOR. Returns 0
    when the rows are linearly dependent (a nonzero combination vanishes).
    """
    k = len(rows)
    if k == 0:
        return 0
    best = None
    acc = 0
    for i in range(1, 1 << k):
        # bit flipped between gray(i-1) and gray(i)
        j = (i & -i).bit_length() - 1
        acc ^= rows[j]
        w = acc.bit_count()
        if best is None or w < best:
            best = w
            if w == 0:
                return 0
    return best


def in_j(mask, demands, side):
    for f, x in zip(demands, side):
        if (mask >> f) & 1 and not (mask & x):
            return True
    return False


def alpha(n, demands, side):
    """Generalized independence number by level-wise (apriori) growth.

    A set survives to the next level only if it lies in J and every subset
    obtained by dropping one element survived the previous level, so
    supersets of failing sets are never examined.
    """
    if not demands:
        return 0
    level = [1 << m for m in range(n) if in_j(1 << m, demands, side)]
    best = 1 if level else 0
    while level:
        alive = set(level)
        nxt = []
        for h in level:
            top = h.bit_length()
            for x in range(top, n):
                cand = h | (1 << x)
                ok = True
                rest = h
                while rest:
                    low = rest & -rest
                    if (cand ^ low) not in alive:
                        ok = False
                        break
                    rest ^= low
                if ok and in_j(cand, demands, side):
                    nxt.append(cand)
        if nxt:
            best += 1
        level = nxt
    return best


def _positions(mask):
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def minrank(n, demands, side, lower_hint=0):
    """Min-rank of the side-information pattern by branch and bound.

    Receivers are visited in order; for each, every completion of its row
    (``e_f`` plus any subset of its side-information coordinates, counted in
    increasing integer order) is reduced against an incremental XOR basis.
    Branches whose partial rank already reaches the incumbent are cut, and
    the search stops once the incumbent equals ``lower_hint``.
    """
    m = len(demands)
    if m == 0:
        return 0
    choices = []
    for f, x in zip(demands, side):
        pos = _positions(x)
        rows = []
        for sel in range(1 << len(pos)):
            v = 1 << f
            for b, p in enumerate(pos):
                if (sel >> b) & 1:
                    v |= 1 << p
            rows.append(v)
        choices.append(rows)

    basis = [0] * n
    best = [m]

    def dfs(i, r):
        if r >= best[0]:
            return
        if i == m:
            best[0] = r
            return
        for v in choices[i]:
            x = v
            while x:
                top = x.bit_length() - 1
                if basis[top]:
                    x ^= basis[top]
                else:
                    break
            if x:
                top = x.bit_length() - 1
                basis[top] = x
                dfs(i + 1, r + 1)
                basis[top] = 0
            else:
                dfs(i + 1, r)
            if best[0] <= lower_hint:
                return

    dfs(0, 0)
    return best[0]


def systematic_search(k, d, n, canonical=False):
    """Depth-first search for ``A`` with ``[I_k | A]`` of minimum distance >= d.

    Rows of ``A`` are ints of width ``n - k`` with column 0 as the most
    significant bit, so visiting candidates in increasing integer order is
    the row-major lexicographic order and the first hit is the lex-first
    matrix. With ``canonical=True`` the space is cut to matrices whose rows
    and columns are both sorted ascending; every code is equivalent to one of
    those, so that mode decides existence but does not give the lex-first
    witness. Returns the list of rows or None.
    """
    r = n - k
    if k == 0:
        return []
    if r < 0:
        return None
    cands = [a for a in range(1 << r) if a.bit_count() >= d - 1]
    full = (1 << r) - 1
    # span[u] = XOR of A-rows selected by u, for u over the chosen prefix
    span = [0]
    weight = [0]
    rows = []

    def extend(a):
        add = []
        for s, w in zip(span, weight):
            t = s ^ a
            if w + 1 + t.bit_count() < d:
                return None
            add.append(t)
        return add

    def dfs(i, prev, tied):
        if i == k:
            return True
        for a in cands:
            if canonical:
                if a < prev or (d >= 3 and a == prev):
                    continue
                if tied & a & ~(a << 1):
                    continue
            add = extend(a)
            if add is None:
                continue
            base = len(span)
            span.extend(add)
            weight.extend(w + 1 for w in weight[:base])
            rows.append(a)
            new_tied = tied & ~(a ^ (a << 1)) & full if canonical else 0
            if dfs(i + 1, a, new_tied):
                return True
            rows.pop()
            del span[base:]
            del weight[base:]
        return False

    tied0 = full & ~1
    if dfs(0, -1, tied0):
        return list(rows)
    return None


def coset_table(h_cols, n, max_weight):
    """Map syndrome -> minimum-weight error pattern, smallest first.

    ``h_cols[j]`` is the syndrome of a single error at position j. Error
    patterns are enumerated by increasing weight up to ``max_weight`` and in
    increasing-combination order within a weight, so the first pattern to
    reach a syndrome is a minimum-weight coset leader.
    """
    table = {0: 0}
    for w in range(1, max_weight + 1):
        for pos in combinations(range(n), w):
            s = 0
            e = 0
            for p in pos:
                s ^= h_cols[p]
                e |= 1 << p
            if s not in table:
                table[s] = e
    return table
