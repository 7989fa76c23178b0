"""Independent brute-force oracles shared by the tests.

Nothing here calls into the package's search kernels; each oracle restates
the definition it checks as directly as possible.
"""

from fractions import Fraction
from itertools import combinations, product


def span(rows):
    out = {0}
    for r in rows:
        out |= {x ^ r for x in out}
    return out


def gf2_rank(rows):
    return len(span(rows)).bit_length() - 1


def min_weight_all_messages(rows):
    best = None
    for u in product((0, 1), repeat=len(rows)):
        if not any(u):
            continue
        c = 0
        for ui, r in zip(u, rows):
            if ui:
                c ^= r
        w = bin(c).count("1")
        best = w if best is None else min(best, w)
    return best


def code_exists(k, d, n):
    """Is there a k-dimensional binary code of length n and distance >= d?

    Grows a basis from vectors of weight >= d taken in increasing order,
    keeping the whole span explicitly.
    """
    if k == 0:
        return True
    heavy = [v for v in range(1, 1 << n) if bin(v).count("1") >= d]

    def grow(start, basis_span, depth):
        if depth == k:
            return True
        for idx in range(start, len(heavy)):
            v = heavy[idx]
            if v in basis_span:
                continue
            new = {x ^ v for x in basis_span}
            if all(bin(x).count("1") >= d for x in new):
                if grow(idx + 1, basis_span | new, depth + 1):
                    return True
        return False

    return grow(0, {0}, 0)


def n2_oracle(k, d):
    n = k
    while not code_exists(k, d, n):
        n += 1
    return n


def envelope_oracle(points, M):
    """Lower convex envelope at M as the best chord between any two points."""
    best = None
    for (x0, y0), (x1, y1) in combinations(sorted(points), 2):
        if x0 <= M <= x1 and x0 < x1:
            v = y0 + (y1 - y0) * Fraction(M - x0) / (x1 - x0)
            best = v if best is None else min(best, v)
    for x, y in points:
        if x == M:
            best = y if best is None else min(best, y)
    return best
