"""Partition diagrams and their exact arithmetic.

A diagram in the hom-set K_mn is a set partition of the m "upper" and n
"lower" vertices.  Vertices are encoded as signed integers: +i is upper
vertex i (1 <= i <= m), -j is lower vertex j (1 <= j <= n).  Blocks are kept
in a canonical order (sorted by least vertex, uppers before lowers), which
makes equality, hashing and a total order cheap.

Composition glues the lower row of the left factor to the upper row of the
right factor and takes connected components of the resulting "product
graph"; components living entirely in the glued middle row are dropped.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import (
    DuplicateVertex,
    MissingVertex,
    NotPlanar,
    OutOfRange,
    ShapeMismatch,
    UsageError,
)

TAGS = ("P", "PB", "B", "PP", "M", "TL")

PLANAR_TAGS = frozenset({"PP", "M", "TL"})
EVEN_TAGS = frozenset({"B", "TL"})  # hom-set empty unless m == n (mod 2)


def _vkey(v):
    # canonical vertex order: 1 < ... < m < 1' < ... < n'
    return (0, v) if v > 0 else (1, -v)


class Partition:
    """An immutable diagram with ``m`` upper and ``n`` lower vertices.

    Do not call the constructor with unvalidated input; use
    :func:`make_partition` instead.  ``blocks`` is a tuple of tuples of
    signed vertices in canonical order.
    """

    __slots__ = ("m", "n", "blocks", "_hash", "_rank")

    def __init__(self, m, n, blocks):
        self.m = m
        self.n = n
        self.blocks = blocks
        self._hash = hash((m, n, blocks))
        self._rank = -1

    @property
    def rank(self) -> int:
        """Number of transversal blocks (blocks meeting both rows)."""
        r = self._rank
        if r < 0:
            r = sum(1 for b in self.blocks if b[0] > 0 and b[-1] < 0)
            self._rank = r
        return r

    def __eq__(self, other):
        if not isinstance(other, Partition):
            return NotImplemented
        return (
            self._hash == other._hash
            and self.m == other.m
            and self.n == other.n
            and self.blocks == other.blocks
        )

    def __hash__(self):
        return self._hash

    def _key(self):
        return (self.m, self.n, tuple(tuple(_vkey(v) for v in b) for b in self.blocks))

    def __lt__(self, other):
        return self._key() < other._key()

    def __le__(self, other):
        return self == other or self < other

    def __repr__(self):
        return f"Partition({self.m}, {self.n}, {list(map(list, self.blocks))})"

    def to_text(self) -> str:
        """Render in the one-line text format ``m n | b1 | b2 | ...``."""
        head = f"{self.m} {self.n}"
        if not self.blocks:
            return head
        return head + " | " + " | ".join(
            ",".join(str(v) for v in b) for b in self.blocks
        )

    def to_json_obj(self):
        return {"m": self.m, "n": self.n, "blocks": [list(b) for b in self.blocks]}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), separators=(",", ":"))


def _canonical_blocks(raw_blocks):
    blocks = [tuple(sorted(b, key=_vkey)) for b in raw_blocks]
    blocks.sort(key=lambda b: _vkey(b[0]))
    return tuple(blocks)


def make_partition(m, n, raw_blocks) -> Partition:
    """Validate and canonicalise ``raw_blocks`` into a Partition of [m] u [n]'."""
    if m < 0 or n < 0:
        raise OutOfRange(0, m, n)
    seen = set()
    for block in raw_blocks:
        if not block:
            raise MissingVertex(0)
        for v in block:
            if v == 0 or v > m or -v > n:
                raise OutOfRange(v, m, n)
            if v in seen:
                raise DuplicateVertex(v)
            seen.add(v)
    if len(seen) != m + n:
        for v in range(1, m + 1):
            if v not in seen:
                raise MissingVertex(v)
        for v in range(1, n + 1):
            if -v not in seen:
                raise MissingVertex(-v)
    return Partition(m, n, _canonical_blocks(raw_blocks))


def from_text(text: str) -> Partition:
    """Parse the ``m n | b1 | b2`` format; raises UsageError with a column."""
    parts = text.strip().split("|")
    head = parts[0].split()
    if len(head) != 2:
        raise UsageError(f"expected 'm n' header, got {parts[0]!r}", 1, 1)
    try:
        m, n = int(head[0]), int(head[1])
    except ValueError:
        raise UsageError(f"non-integer sizes in {parts[0]!r}", 1, 1) from None
    blocks = []
    col = len(parts[0]) + 1
    for chunk in parts[1:]:
        items = chunk.strip()
        if not items:
            raise UsageError("empty block", 1, col + 1)
        try:
            blocks.append([int(tok) for tok in items.split(",")])
        except ValueError:
            raise UsageError(f"bad block {chunk.strip()!r}", 1, col + 1) from None
        col += len(chunk) + 1
    return make_partition(m, n, blocks)


def from_json_obj(obj) -> Partition:
    try:
        return make_partition(obj["m"], obj["n"], obj["blocks"])
    except (KeyError, TypeError) as exc:
        raise UsageError(f"bad partition object: {exc}") from None


def from_json(text: str) -> Partition:
    return from_json_obj(json.loads(text))


def identity(n: int) -> Partition:
    """The identity diagram id_n with blocks {x, x'}."""
    return Partition(n, n, tuple((x, -x) for x in range(1, n + 1)))


def _find(parent, x):
    # path-halving find
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def compose(a: Partition, b: Partition) -> Partition:
    """Product ab: connected components of the product graph of a over b.

    Components that live entirely in the glued middle row are discarded.
    """
    if a.n != b.m:
        raise ShapeMismatch(f"cannot compose {a.m}x{a.n} with {b.m}x{b.n}")
    m, n, k = a.m, a.n, b.n
    # indices: upper i -> i-1, middle j -> m+j-1, lower l -> m+n+l-1
    parent = list(range(m + n + k))
    for block in a.blocks:
        v0 = block[0]
        r0 = v0 - 1 if v0 > 0 else m - v0 - 1
        r0 = _find(parent, r0)
        for v in block[1:]:
            r = _find(parent, v - 1 if v > 0 else m - v - 1)
            if r != r0:
                parent[r] = r0
    for block in b.blocks:
        v0 = block[0]
        r0 = m + v0 - 1 if v0 > 0 else m + n - v0 - 1
        r0 = _find(parent, r0)
        for v in block[1:]:
            r = _find(parent, m + v - 1 if v > 0 else m + n - v - 1)
            if r != r0:
                root = _find(parent, r0)
                parent[r] = root
                r0 = root
    # collect in canonical scan order; middle-only components vanish
    groups: dict[int, list[int]] = {}
    for i in range(1, m + 1):
        groups.setdefault(_find(parent, i - 1), []).append(i)
    for l in range(1, k + 1):
        groups.setdefault(_find(parent, m + n + l - 1), []).append(-l)
    return Partition(m, k, tuple(tuple(g) for g in groups.values()))


def product_rank(a: Partition, b: Partition) -> int:
    """rank(ab) without materialising the product (hot path for P-set scans)."""
    if a.n != b.m:
        raise ShapeMismatch(f"cannot compose {a.m}x{a.n} with {b.m}x{b.n}")
    m, n = a.m, a.n
    parent = list(range(m + n + b.n))
    for block in a.blocks:
        v0 = block[0]
        r0 = _find(parent, v0 - 1 if v0 > 0 else m - v0 - 1)
        for v in block[1:]:
            r = _find(parent, v - 1 if v > 0 else m - v - 1)
            if r != r0:
                parent[r] = r0
    for block in b.blocks:
        v0 = block[0]
        r0 = _find(parent, m + v0 - 1 if v0 > 0 else m + n - v0 - 1)
        for v in block[1:]:
            r = _find(parent, m + v - 1 if v > 0 else m + n - v - 1)
            if r != r0:
                root = _find(parent, r0)
                parent[r] = root
                r0 = root
    has_upper = set()
    for i in range(m):
        has_upper.add(_find(parent, i))
    rank = 0
    seen = set()
    for l in range(b.n):
        r = _find(parent, m + n + l)
        if r in has_upper and r not in seen:
            seen.add(r)
            rank += 1
    return rank


def involution(a: Partition) -> Partition:
    """Reflection a*: swaps the upper and lower rows; (ab)* = b*a*."""
    return Partition(a.n, a.m, _canonical_blocks(tuple(-v for v in b) for b in a.blocks))


@dataclass(frozen=True)
class PartitionStats:
    """The seven Green's-relation statistics of a diagram."""

    rank: int
    dom: frozenset
    codom: frozenset
    ker: tuple  # partition of [m] as a tuple of sorted tuples
    coker: tuple
    upper_nontransversals: frozenset
    lower_nontransversals: frozenset


def statistics(a: Partition) -> PartitionStats:
    dom, codom = [], []
    ker, coker = [], []
    nu, nl = [], []
    for block in a.blocks:
        uppers = tuple(v for v in block if v > 0)
        lowers = tuple(sorted(-v for v in block if v < 0))
        if uppers and lowers:
            dom.extend(uppers)
            codom.extend(lowers)
        elif uppers:
            nu.append(uppers)
        else:
            nl.append(lowers)
        if uppers:
            ker.append(uppers)
        if lowers:
            coker.append(lowers)
    return PartitionStats(
        rank=a.rank,
        dom=frozenset(dom),
        codom=frozenset(codom),
        ker=tuple(sorted(ker)),
        coker=tuple(sorted(coker)),
        upper_nontransversals=frozenset(nu),
        lower_nontransversals=frozenset(nl),
    )


def _separated(a, b):
    return a[-1] < b[0] or b[-1] < a[0]


def _nested_by(inner, outer):
    # inner fits strictly between two consecutive elements of outer
    lo, hi = inner[0], inner[-1]
    for i in range(len(outer) - 1):
        if outer[i] < lo and hi < outer[i + 1]:
            return True
    return False


def is_planar(a: Partition) -> bool:
    """Planarity by the nested-or-separated block conditions.

    Transversals, listed upper-half A_i / lower-half B_i in order of
    min(A_i), must be separated and in the same order on both rows; every
    other pair of blocks on a common row must be nested or separated, and a
    nontransversal may meet a transversal's span only by nesting into one of
    its gaps.
    """
    trans_u, trans_l, upper_nt, lower_nt = [], [], [], []
    for block in a.blocks:
        uppers = tuple(v for v in block if v > 0)
        lowers = tuple(sorted(-v for v in block if v < 0))
        if uppers and lowers:
            trans_u.append(uppers)
            trans_l.append(lowers)
        elif uppers:
            upper_nt.append(uppers)
        else:
            lower_nt.append(lowers)
    # canonical block order already sorts transversals by min of upper half
    for i in range(len(trans_u) - 1):
        if not (trans_u[i][-1] < trans_u[i + 1][0] and trans_l[i][-1] < trans_l[i + 1][0]):
            return False
    for row_nt in (upper_nt, lower_nt):
        for i in range(len(row_nt)):
            for j in range(i + 1, len(row_nt)):
                x, y = row_nt[i], row_nt[j]
                if not (_separated(x, y) or _nested_by(x, y) or _nested_by(y, x)):
                    return False
    for halves, row_nt in ((trans_u, upper_nt), (trans_l, lower_nt)):
        for t in halves:
            for c in row_nt:
                if not (_separated(t, c) or _nested_by(c, t)):
                    return False
    return True


def in_category(tag: str, a: Partition) -> bool:
    """Membership of the diagram in one of the six categories."""
    if tag == "P":
        return True
    if tag == "PB":
        return all(len(b) <= 2 for b in a.blocks)
    if tag == "B":
        return all(len(b) == 2 for b in a.blocks)
    if tag == "PP":
        return is_planar(a)
    if tag == "M":
        return all(len(b) <= 2 for b in a.blocks) and is_planar(a)
    if tag == "TL":
        return all(len(b) == 2 for b in a.blocks) and is_planar(a)
    raise ValueError(f"unknown category tag {tag!r}")


def _linear_positions(m, n):
    """The boundary order 1 < ... < m < n' < (n-1)' < ... < 1' as signed ints."""
    return tuple(range(1, m + 1)) + tuple(-j for j in range(n, 0, -1))


def pp_to_tl(a: Partition) -> Partition:
    """Double a planar diagram into a Temperley-Lieb one (K_mn -> TL_{2m,2n}).

    Each vertex splits into a left/right pair and every block of the
    noncrossing partition (in the boundary order) is traced into a cycle of
    strands: consecutive members are joined right-to-left, and the first and
    last member close up on the outside.  Ranks double.
    """
    if not is_planar(a):
        raise NotPlanar(f"{a.to_text()} is not planar")
    m, n = a.m, a.n
    seq = _linear_positions(m, n)
    pos = {v: i + 1 for i, v in enumerate(seq)}  # 1-based linear position

    def daughters(p):
        # linear position p -> (left, right) doubled signed vertices
        v = seq[p - 1]
        if v > 0:
            return 2 * v - 1, 2 * v
        u = -v
        # bottom row is traversed right to left, so the right daughter
        # (2u, counting left to right in the plane) is met first
        return -(2 * u), -(2 * u - 1)

    arcs = []
    for block in a.blocks:
        ps = sorted(pos[v] for v in block)
        first_left, _ = daughters(ps[0])
        _, last_right = daughters(ps[-1])
        arcs.append((first_left, last_right))
        for i in range(len(ps) - 1):
            _, right = daughters(ps[i])
            left, _ = daughters(ps[i + 1])
            arcs.append((right, left))
    return Partition(2 * m, 2 * n, _canonical_blocks(arcs))
