"""Independent brute-force oracles used to freeze expected values.

These deliberately avoid the library's own algorithms: set partitions come
from a plain recursive splitter, planarity from a pairwise chord-crossing
test on the boundary word, and Green's preorders from exhaustive witness
search over composed hom-sets.
"""

from itertools import combinations

from diagramcat import compose, enumerate_homset


def set_partitions(items):
    """All set partitions of a list, as lists of lists."""
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1 :]
        yield [[first]] + part


def crossing(block_a, block_b, position):
    """Do two blocks interleave along the boundary word?"""
    pa = sorted(position[v] for v in block_a)
    pb = sorted(position[v] for v in block_b)
    for x1, x2 in combinations(pa, 2):
        if any(x1 < y < x2 for y in pb) and any(y < x1 or y > x2 for y in pb):
            return True
    return False


def planar_by_crossings(p):
    """Planarity oracle: no two blocks cross in the boundary word order
    1 .. m, n', (n-1)', ..., 1'."""
    seq = list(range(1, p.m + 1)) + [-j for j in range(p.n, 0, -1)]
    position = {v: i for i, v in enumerate(seq)}
    return not any(
        crossing(a, b, position) for a, b in combinations(p.blocks, 2)
    )


def one_two_equivalences(m):
    """All partitions of [m] into blocks of size <= 2 (as lists of tuples)."""

    def rec(remaining):
        if not remaining:
            yield []
            return
        v, rest = remaining[0], remaining[1:]
        for tail in rec(rest):
            yield [(v,)] + tail
        for i, w in enumerate(rest):
            for tail in rec(rest[:i] + rest[i + 1 :]):
                yield [(v, w)] + tail

    yield from rec(tuple(range(1, m + 1)))


def equivalence_rank(eps):
    return sum(1 for b in eps if len(b) == 1)


def join_odd_class_count(eps, eta, m):
    parent = list(range(m + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for blocks in (eps, eta):
        for b in blocks:
            r0 = find(b[0])
            for v in b[1:]:
                r = find(v)
                if r != r0:
                    parent[r] = r0
    sizes = {}
    for v in range(1, m + 1):
        r = find(v)
        sizes[r] = sizes.get(r, 0) + 1
    return sum(1 for s in sizes.values() if s % 2)


def right_products(tag, b, target_n, cache={}):
    """The set {b . c : c in K_{b.n, target_n}} (witness pool for <=_R)."""
    key = (tag, b, target_n)
    if key not in cache:
        hs = enumerate_homset(tag, b.n, target_n)
        cache[key] = frozenset(compose(b, c) for c in hs.elements)
    return cache[key]


def left_products(tag, b, source_m, cache={}):
    key = (tag, b, source_m)
    if key not in cache:
        hs = enumerate_homset(tag, source_m, b.m)
        cache[key] = frozenset(compose(c, b) for c in hs.elements)
    return cache[key]


def two_sided_products(tag, b, source_m, target_n, cache={}):
    key = (tag, b, source_m, target_n)
    if key not in cache:
        out = set()
        for bc in right_products(tag, b, target_n):
            out.update(left_products(tag, bc, source_m))
        cache[key] = frozenset(out)
    return cache[key]


def leq_r_definitional(tag, a, b):
    """a <=_R b: a = b or a = bc for some morphism c."""
    return a == b or a in right_products(tag, b, a.n)


def leq_l_definitional(tag, a, b):
    return a == b or a in left_products(tag, b, a.m)


def leq_j_definitional(tag, a, b):
    return a == b or a in two_sided_products(tag, b, a.m, a.n)
