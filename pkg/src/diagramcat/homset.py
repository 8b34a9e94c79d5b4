"""Exhaustive hom-set enumeration and the categorical Green structure.

Hom-sets are generated natively per category: restricted-growth strings for
the full partition category, match-or-skip pairings for the (partial) Brauer
ones, and interval recursion over the boundary order for the planar ones.
The result is deduplicated, canonical and deterministically ordered.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

from . import counting
from .errors import BoundExceeded
from .partition import Partition, _canonical_blocks, _linear_positions, statistics

DEFAULT_SIZE_BOUND = {"P": 10, "PB": 10, "B": 14, "TL": 14, "M": 14, "PP": 14}


def _size_bound(tag):
    env = os.environ.get("DIAGRAMCAT_MAX_HOMSET_TOTAL")
    if env:
        return int(env)
    return DEFAULT_SIZE_BOUND[tag]


def _set_partitions(vertices):
    """All set partitions of an ordered vertex list, blocks in first-seen order."""
    blocks = []

    def rec(i):
        if i == len(vertices):
            yield tuple(tuple(b) for b in blocks)
            return
        v = vertices[i]
        for b in blocks:
            b.append(v)
            yield from rec(i + 1)
            b.pop()
        blocks.append([v])
        yield from rec(i + 1)
        blocks.pop()

    yield from rec(0)


def _pairings(vertices, allow_singletons):
    """Partitions into blocks of size 2 (or 1 when allowed), canonical order."""

    def rec(remaining):
        if not remaining:
            yield []
            return
        v, rest = remaining[0], remaining[1:]
        if allow_singletons:
            for tail in rec(rest):
                yield [(v,)] + tail
        for i, w in enumerate(rest):
            sub = rest[:i] + rest[i + 1 :]
            for tail in rec(sub):
                yield [(v, w)] + tail

    yield from rec(tuple(vertices))


def _noncrossing(seq, block_filter):
    """Noncrossing partitions of the ordered tuple ``seq``.

    ``block_filter(size)`` says which block sizes may be opened.  Blocks are
    chosen for the first element together with the independent gaps they cut
    off, which is exactly the noncrossing recursion.
    """

    def rec(lo, hi):  # partitions of seq[lo:hi]
        if lo >= hi:
            yield []
            return
        def may_grow(size):
            # can a block of at least this size still become legal?
            return any(block_filter(s) for s in range(size, hi - lo + 1))

        # choose the rest of first's block among positions > lo; the chosen
        # positions cut the remainder into independent gaps
        def choose(members, last):
            size = len(members)
            if block_filter(size):
                block = tuple(seq[p] for p in members)
                spans = [
                    (members[i] + 1, members[i + 1]) for i in range(size - 1)
                ] + [(members[-1] + 1, hi)]
                parts = [list(rec(a, b)) for a, b in spans]

                def combine(i, acc):
                    if i == len(parts):
                        yield [block] + acc
                        return
                    for sub in parts[i]:
                        yield from combine(i + 1, acc + sub)

                yield from combine(0, [])
            if not may_grow(size + 1):
                return
            for nxt in range(last + 1, hi):
                yield from choose(members + [nxt], nxt)

        yield from choose([lo], lo)

    yield from rec(0, len(seq))


def _enumerate_elements(tag, m, n):
    if tag == "P":
        vertices = tuple(range(1, m + 1)) + tuple(-j for j in range(1, n + 1))
        for blocks in _set_partitions(vertices):
            yield Partition(m, n, blocks)
    elif tag in ("B", "PB"):
        if tag == "B" and (m + n) % 2:
            return
        vertices = tuple(range(1, m + 1)) + tuple(-j for j in range(1, n + 1))
        for blocks in _pairings(vertices, allow_singletons=tag == "PB"):
            yield Partition(m, n, _canonical_blocks(blocks))
    else:
        if tag == "TL" and (m + n) % 2:
            return
        seq = _linear_positions(m, n)
        if tag == "PP":
            flt = lambda s: s >= 1
        elif tag == "M":
            flt = lambda s: s in (1, 2)
        else:
            flt = lambda s: s == 2
        for blocks in _noncrossing(seq, flt):
            yield Partition(m, n, _canonical_blocks(blocks))


@dataclass
class HomSet:
    """All diagrams of one shape in one category, with an index."""

    tag: str
    m: int
    n: int
    elements: tuple
    index: dict = field(repr=False)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x):
        return x in self.index


def enumerate_homset(tag: str, m: int, n: int, max_total: int | None = None) -> HomSet:
    """Materialise K_mn; raises BoundExceeded beyond the configured size."""
    bound = max_total if max_total is not None else _size_bound(tag)
    if m + n > bound:
        raise BoundExceeded(
            f"refusing to enumerate {tag}_{{{m},{n}}}: m+n = {m + n} > {bound}"
        )
    elements = sorted(set(_enumerate_elements(tag, m, n)), key=Partition._key)
    return HomSet(tag, m, n, tuple(elements), {p: i for i, p in enumerate(elements)})


def _refines(coarse, fine):
    """Is every block of ``fine`` inside one block of ``coarse``?"""
    where = {}
    for i, block in enumerate(coarse):
        for v in block:
            where[v] = i
    for block in fine:
        it = iter(block)
        first = where[next(it)]
        if any(where[v] != first for v in it):
            return False
    return True


def cat_leq(rel: str, a: Partition, b: Partition) -> bool:
    """The categorical Green preorders <=_R, <=_L, <=_J by their block tests.

    For R: same upper size, ker(a) coarser than ker(b) and the upper
    nontransversals of b all survive in a.  J compares ranks (with the mod-2
    clause applying automatically inside Brauer/Temperley-Lieb hom-sets).
    Shape mismatches yield False for R and L.
    """
    if rel == "R":
        if a.m != b.m:
            return False
        sa, sb = statistics(a), statistics(b)
        return sa.upper_nontransversals >= sb.upper_nontransversals and _refines(
            sa.ker, sb.ker
        )
    if rel == "L":
        if a.n != b.n:
            return False
        sa, sb = statistics(a), statistics(b)
        return sa.lower_nontransversals >= sb.lower_nontransversals and _refines(
            sa.coker, sb.coker
        )
    if rel == "J":
        return a.rank <= b.rank
    raise ValueError(f"unknown relation {rel!r}")


def cat_leq_tagged(tag: str, rel: str, a: Partition, b: Partition) -> bool:
    """cat_leq with the explicit Brauer/TL parity clause for J."""
    if rel == "J" and tag in ("B", "TL"):
        return a.rank <= b.rank and (a.rank - b.rank) % 2 == 0
    return cat_leq(rel, a, b)


@dataclass
class CatGreenClasses:
    """D-classes of a hom-set by rank, with their R- and L-classes."""

    tag: str
    m: int
    n: int
    # rank -> list of R-classes (each a tuple of Partitions); same for L
    r_classes: dict
    l_classes: dict
    h_classes: dict  # rank -> list of H-classes
    d_classes: dict  # rank -> tuple of Partitions

    def ranks(self):
        return sorted(self.d_classes)


def cat_green_classes(h: HomSet) -> CatGreenClasses:
    """Group a hom-set into its D = J (rank), R, L and H classes."""
    by_rank = {}
    for p in h.elements:
        by_rank.setdefault(p.rank, []).append(p)
    r_classes, l_classes, h_classes = {}, {}, {}
    for rank, members in sorted(by_rank.items()):
        rs, ls, hs = {}, {}, {}
        for p in members:
            s = statistics(p)
            rs.setdefault((s.dom, s.ker), []).append(p)
            ls.setdefault((s.codom, s.coker), []).append(p)
            hs.setdefault((s.dom, s.ker, s.codom, s.coker), []).append(p)
        r_classes[rank] = [tuple(v) for _, v in sorted(rs.items())]
        l_classes[rank] = [tuple(v) for _, v in sorted(ls.items())]
        h_classes[rank] = [tuple(v) for _, v in sorted(hs.items())]
    return CatGreenClasses(
        h.tag,
        h.m,
        h.n,
        r_classes,
        l_classes,
        h_classes,
        {rank: tuple(v) for rank, v in by_rank.items()},
    )
