"""Generic finite-semigroup engine.

This is the ground truth the structure theorems are checked against: Green's
relations come from strongly connected components of Cayley graphs over S^1,
idempotent closures and rank searches are plain breadth-first closures, and
nothing in here knows what a diagram is.  Elements are opaque hashable
payloads addressed by dense indices.
"""

from __future__ import annotations

import os
import random
from array import array
from dataclasses import dataclass, field

from .errors import (
    BoundExceeded,
    NotClosed,
    NotIdempotentGenerated,
    NotRegular,
)

_TABLE_LIMIT = 2600  # build a flat table when |S| is at most this


def _max_elements():
    env = os.environ.get("DIAGRAMCAT_MAX_ELEMENTS")
    return int(env) if env else 200_000


class FiniteSemigroup:
    """Elements plus an associative product, addressed by index."""

    def __init__(self, elements, mul_fn=None, table=None, check_associative=None):
        self.elements = list(elements)
        self.index = {x: i for i, x in enumerate(self.elements)}
        if len(self.index) != len(self.elements):
            raise ValueError("duplicate elements")
        self._mul_fn = mul_fn
        self._table = table
        n = len(self.elements)
        if table is None and mul_fn is not None and n and n <= _TABLE_LIMIT:
            self._build_table()
        if check_associative is None:
            check_associative = n <= 60
        if check_associative:
            self._check_associative()

    # -- construction ----------------------------------------------------

    @classmethod
    def from_mul(cls, elements, mul_fn, check_associative=None):
        """Build from a closed element list and a payload-level product."""
        elements = list(elements)
        index = {x: i for i, x in enumerate(elements)}

        def fn(i, j):
            z = mul_fn(elements[i], elements[j])
            k = index.get(z)
            if k is None:
                raise NotClosed(elements[i], elements[j], z)
            return k

        return cls(elements, mul_fn=fn, check_associative=check_associative)

    @classmethod
    def from_table(cls, elements, table, check_associative=None):
        return cls(elements, table=table, check_associative=check_associative)

    # -- basics ----------------------------------------------------------

    def __len__(self):
        return len(self.elements)

    def product(self, i, j):
        t = self._table
        if t is not None:
            return t[i][j]
        # no memo: beyond the table limit the pair space is too big to cache
        return self._mul_fn(i, j)

    def _build_table(self):
        fn = self._mul_fn
        n = len(self.elements)
        self._table = [array("i", (fn(i, j) for j in range(n))) for i in range(n)]

    def _check_associative(self, samples=4000):
        n = len(self.elements)
        if n == 0:
            return
        if n**3 <= samples:
            triples = (
                (i, j, k) for i in range(n) for j in range(n) for k in range(n)
            )
        else:
            rng = random.Random(7)
            triples = (
                (rng.randrange(n), rng.randrange(n), rng.randrange(n))
                for _ in range(samples)
            )
        for i, j, k in triples:
            if self.product(self.product(i, j), k) != self.product(i, self.product(j, k)):
                raise ValueError(
                    f"multiplication not associative at {self.elements[i]!r}, "
                    f"{self.elements[j]!r}, {self.elements[k]!r}"
                )

    def restrict(self, indices):
        """Subsemigroup on the given indices (must be closed)."""
        sub = [self.elements[i] for i in indices]
        old = list(indices)
        pos = {o: p for p, o in enumerate(old)}

        def fn(i, j):
            k = self.product(old[i], old[j])
            p = pos.get(k)
            if p is None:
                raise NotClosed(sub[i], sub[j], self.elements[k])
            return p

        return FiniteSemigroup(sub, mul_fn=fn, check_associative=False)

    def opposite(self):
        return FiniteSemigroup(
            list(self.elements),
            mul_fn=lambda i, j: self.product(j, i),
            check_associative=False,
        )

    def mul_table_csv(self) -> str:
        n = len(self.elements)
        return "\n".join(
            ",".join(str(self.product(i, j)) for j in range(n)) for i in range(n)
        )


def _closure_list(seeds, step, contains, add):
    """Shared BFS: right-multiply the worklist by the seed list."""
    out = []
    for g in seeds:
        if not contains(g):
            add(g)
            out.append(g)
    qi = 0
    while qi < len(out):
        x = out[qi]
        qi += 1
        for g in seeds:
            y = step(x, g)
            if not contains(y):
                add(y)
                out.append(y)
    return out


def closure_elements(generators, mul_fn, max_elements=None):
    """The subsemigroup generated by payload-level generators, as a list.

    Large generating sets are closed from a doubling seed subset: once the
    closure of the seed contains every generator it equals the full closure.
    """
    bound = max_elements if max_elements is not None else _max_elements()
    gens = list(dict.fromkeys(generators))

    def close(seeds):
        seen = {}
        count = [0]

        def add(y):
            if count[0] >= bound:
                raise BoundExceeded(f"closure exceeded {bound} elements")
            seen[y] = count[0]
            count[0] += 1

        out = _closure_list(seeds, mul_fn, seen.__contains__, add)
        return out, seen

    if len(gens) <= 24:
        return close(gens)[0]
    seeds = gens[:12]
    while True:
        out, seen = close(seeds)
        missing = [g for g in gens if g not in seen]
        if not missing:
            return out
        seeds = seeds + missing[: max(12, len(seeds))]


def closure(generators, mul_fn, max_elements=None) -> FiniteSemigroup:
    """The subsemigroup generated by payload-level generators."""
    elements = closure_elements(generators, mul_fn, max_elements)
    seen = {x: i for i, x in enumerate(elements)}
    return FiniteSemigroup(
        elements,
        mul_fn=lambda i, j: seen[mul_fn(elements[i], elements[j])],
        check_associative=False,
    )


def closed_indices(S: FiniteSemigroup, gen_idx):
    """Indices of the subsemigroup of S generated by the given indices."""
    gens = sorted(set(gen_idx))
    n = len(S)
    prod = S.product

    def close(seeds):
        seen = bytearray(n)

        def add(y):
            seen[y] = 1

        out = _closure_list(seeds, prod, lambda y: seen[y], add)
        return out, seen

    if len(gens) <= 24:
        return close(gens)[0]
    seeds = gens[:12]
    while True:
        out, seen = close(seeds)
        missing = [g for g in gens if not seen[g]]
        if not missing:
            return out
        seeds = seeds + missing[: max(12, len(seeds))]


# -- Green structure -----------------------------------------------------


def _sccs(n, succ):
    """Iterative Tarjan; returns (comp id per node, comp count).

    Components are numbered in reverse topological order: every successor
    component of x gets a smaller number than x's component.
    """
    comp = [-1] * n
    low = [0] * n
    num = [0] * n
    on_stack = bytearray(n)
    stack = []
    counter = [0]
    ncomp = [0]

    for root in range(n):
        if comp[root] != -1 or num[root]:
            continue
        work = [(root, iter(succ(root)))]
        counter[0] += 1
        num[root] = low[root] = counter[0]
        stack.append(root)
        on_stack[root] = 1
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if not num[w]:
                    counter[0] += 1
                    num[w] = low[w] = counter[0]
                    stack.append(w)
                    on_stack[w] = 1
                    work.append((w, iter(succ(w))))
                    advanced = True
                    break
                if on_stack[w] and num[w] < low[v]:
                    low[v] = num[w]
            if advanced:
                continue
            work.pop()
            if work:
                pv = work[-1][0]
                if low[v] < low[pv]:
                    low[pv] = low[v]
            if low[v] == num[v]:
                cid = ncomp[0]
                ncomp[0] += 1
                while True:
                    w = stack.pop()
                    on_stack[w] = 0
                    comp[w] = cid
                    if w == v:
                        break
    return comp, ncomp[0]


def _members(comp, ncomp):
    out = [[] for _ in range(ncomp)]
    for x, c in enumerate(comp):
        out[c].append(x)
    return out


@dataclass
class GreenStructure:
    """Green's class data of a finite semigroup (J = D is asserted)."""

    size: int
    r_class: list
    l_class: list
    j_class: list
    h_class: list
    d_class: list
    r_members: list
    l_members: list
    j_members: list
    h_members: list
    d_members: list
    j_edges: list  # condensation edges (downward: from class to lower class)
    _desc: dict = field(default_factory=dict, repr=False)

    def j_descendants(self, c):
        """All classes <= c in the J order (including c)."""
        got = self._desc.get(c)
        if got is None:
            seen = {c}
            todo = [c]
            while todo:
                u = todo.pop()
                for v in self.j_edges[u]:
                    if v not in seen:
                        seen.add(v)
                        todo.append(v)
            got = self._desc[c] = frozenset(seen)
        return got

    def j_leq(self, a, b):
        """Class a <= class b in the J order."""
        return a in self.j_descendants(b)

    def maximal_j_classes(self):
        above = set()
        for u in range(len(self.j_members)):
            for v in self.j_edges[u]:
                above.add(v)  # v is below some other class
        return [c for c in range(len(self.j_members)) if c not in above]

    def j_covers(self):
        """Pairs (upper, lower) with lower covered by upper."""
        ncl = len(self.j_members)
        covers = []
        for u in range(ncl):
            below = self.j_descendants(u) - {u}
            for v in sorted(below):
                if not any(
                    v in self.j_descendants(w) for w in below if w != v and u != w
                ):
                    covers.append((u, v))
        return covers


def green_structure(S: FiniteSemigroup, generators=None) -> GreenStructure:
    """Green's relations via SCCs of the Cayley graphs over S^1.

    ``generators`` (indices) may be any generating set; by default every
    element is used, which is always correct.
    """
    n = len(S)
    gens = list(range(n)) if generators is None else sorted(set(generators))
    prod = S.product

    def succ_r(x):
        return (prod(x, g) for g in gens)

    def succ_l(x):
        return (prod(g, x) for g in gens)

    def succ_j(x):
        for g in gens:
            yield prod(x, g)
            yield prod(g, x)

    r_class, nr = _sccs(n, succ_r)
    l_class, nl = _sccs(n, succ_l)
    j_class, nj = _sccs(n, succ_j)

    # H = R meet L
    h_key = {}
    h_class = [0] * n
    for x in range(n):
        key = (r_class[x], l_class[x])
        h_class[x] = h_key.setdefault(key, len(h_key))

    # D = R join L (union-find over class overlap); finite => D = J
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for members in _members(r_class, nr) + _members(l_class, nl):
        r0 = find(members[0])
        for y in members[1:]:
            r = find(y)
            if r != r0:
                parent[r] = r0
    d_key = {}
    d_class = [0] * n
    for x in range(n):
        d_class[x] = d_key.setdefault(find(x), len(d_key))

    dm = _members(d_class, len(d_key))
    jm = _members(j_class, nj)
    if sorted(map(sorted, dm)) != sorted(map(sorted, jm)):
        raise AssertionError("D != J in a finite semigroup (engine bug)")

    # condensation edges for the J order
    edges = [set() for _ in range(nj)]
    for x in range(n):
        cx = j_class[x]
        for y in succ_j(x):
            cy = j_class[y]
            if cy != cx:
                edges[cx].add(cy)

    return GreenStructure(
        size=n,
        r_class=r_class,
        l_class=l_class,
        j_class=j_class,
        h_class=h_class,
        d_class=d_class,
        r_members=_members(r_class, nr),
        l_members=_members(l_class, nl),
        j_members=jm,
        h_members=_members(h_class, len(h_key)),
        d_members=dm,
        j_edges=[sorted(e) for e in edges],
    )


# -- idempotents, mid-identities, regularity ------------------------------


def idempotent_indices(S: FiniteSemigroup):
    return [i for i in range(len(S)) if S.product(i, i) == i]


def idempotents(S: FiniteSemigroup):
    """The set E(S) as payloads."""
    return frozenset(S.elements[i] for i in idempotent_indices(S))


def idempotent_closure(S: FiniteSemigroup) -> FiniteSemigroup:
    """The idempotent-generated subsemigroup of S."""
    return S.restrict(closed_indices(S, idempotent_indices(S)))


def mid_identity_indices(S: FiniteSemigroup):
    """u with x(uy) = xy for all x, y: every row x maps to an identical row xu."""
    n = len(S)
    prod = S.product
    row_sig = [None] * n
    sig_of = {}
    for x in range(n):
        row = tuple(prod(x, y) for y in range(n))
        row_sig[x] = sig_of.setdefault(row, len(sig_of))
    out = []
    for u in range(n):
        if all(row_sig[prod(x, u)] == row_sig[x] for x in range(n)):
            out.append(u)
    return out


def mid_identities(S: FiniteSemigroup):
    return frozenset(S.elements[i] for i in mid_identity_indices(S))


def _regular_indices(S, prod=None):
    n = len(S)
    prod = prod or S.product
    out = []
    for x in range(n):
        if any(prod(prod(x, a), x) == x for a in range(n)):
            out.append(x)
    return out


def is_regular_semigroup(S: FiniteSemigroup) -> bool:
    return len(_regular_indices(S)) == len(S)


def regularity_preserving(S: FiniteSemigroup):
    """Elements u whose variant (S, x*y = xuy) is regular, as payloads."""
    n = len(S)
    prod = S.product
    out = []
    for u in range(n):
        def vprod(i, j, _u=u):
            return prod(prod(i, _u), j)

        if all(
            any(vprod(vprod(x, a), x) == x for a in range(n)) for x in range(n)
        ):
            out.append(S.elements[u])
    return frozenset(out)


def natural_order_below(S: FiniteSemigroup, e, f) -> bool:
    """e <= f in the idempotent order: e = ef = fe (both must be idempotent)."""
    i, j = S.index[e], S.index[f]
    if S.product(i, i) != i or S.product(j, j) != j:
        raise ValueError("natural order is defined on idempotents only")
    return S.product(i, j) == i and S.product(j, i) == i


def is_mi_dominated(S: FiniteSemigroup):
    """(verdict, witness): is every idempotent below a mid-identity?

    The witness is an idempotent below no mid-identity (None when dominated).
    Raises NotRegular when S is not a regular semigroup.
    """
    if not is_regular_semigroup(S):
        raise NotRegular("MI-domination is defined for regular semigroups")
    prod = S.product
    mis = mid_identity_indices(S)
    for e in idempotent_indices(S):
        if not any(prod(e, u) == e and prod(u, e) == e for u in mis):
            return False, S.elements[e]
    return True, None


# -- exact rank search -----------------------------------------------------


def _generates(S, gens, target_size):
    return len(closed_indices(S, gens)) == target_size


def _covering_selections(green, cls_members, r_of, l_of):
    """All ways to pick one element per R-class of a J-class while covering
    every L-class; yields tuples of element indices."""
    by_r = {}
    for x in cls_members:
        by_r.setdefault(r_of[x], []).append(x)
    r_groups = [sorted(v) for _, v in sorted(by_r.items())]
    l_all = {l_of[x] for x in cls_members}
    nslots = len(r_groups)

    def rec(i, picked, lcov):
        if i == nslots:
            if lcov == l_all:
                yield tuple(picked)
            return
        # prune: remaining slots must be able to cover the missing L-classes
        missing = l_all - lcov
        rest_cover = set()
        for grp in r_groups[i:]:
            rest_cover.update(l_of[x] for x in grp)
        if not missing <= rest_cover:
            return
        for x in r_groups[i]:
            picked.append(x)
            yield from rec(i + 1, picked, lcov | {l_of[x]})
            picked.pop()

    yield from rec(0, [], set())


def exact_rank(S: FiniteSemigroup, must_include=(), green=None, budget=300_000):
    """Minimum size of a generating set, with one witness set.

    Elements of singleton maximal J-classes are forced into every generating
    set, and each maximal J-class J pins at least max(|J/R|, |J/L|)
    generators inside itself, one per R-class (and per L-class).  Candidate
    sizes are tried upward; a size is refuted either by that pigeonhole or,
    in the all-pinned case, by the closure of the union of the maximal
    classes falling short of S.  Witnesses are searched exhaustively when
    the selection space is small, otherwise by seeded random cell-covering
    patterns.  ``must_include`` seeds the search and is contained in the
    witness.
    """
    n = len(S)
    if n == 0:
        return 0, frozenset()
    g = green if green is not None else green_structure(S)
    rng = random.Random(2024)
    r_of, l_of = g.r_class, g.l_class

    forced = {S.index[x] for x in must_include}
    max_classes = sorted(g.maximal_j_classes())
    for c in max_classes:
        if len(g.j_members[c]) == 1:
            forced.add(g.j_members[c][0])
    if forced and _generates(S, sorted(forced), n):
        return len(forced), frozenset(S.elements[i] for i in sorted(forced))

    pinned_pool = sorted(i for c in max_classes for i in g.j_members[c])
    pinned_set = set(pinned_pool)
    forced_outside = sorted(forced - pinned_set)
    need = 0
    for c in max_classes:
        members = g.j_members[c]
        nr = len({r_of[x] for x in members})
        nl = len({l_of[x] for x in members})
        need += max(nr, nl)
    lb = max(need + len(forced_outside), 1)

    pinned_closure_ok = _generates(S, pinned_pool + forced_outside, n)

    def class_selections(c):
        members = g.j_members[c]
        nr = len({r_of[x] for x in members})
        nl = len({l_of[x] for x in members})
        if nr >= nl:
            return _covering_selections(g, members, r_of, l_of)
        return _covering_selections(g, members, l_of, r_of)

    def all_pinned_selections():
        per_class = [list(class_selections(c)) for c in max_classes]

        def rec(i, acc):
            if i == len(per_class):
                yield tuple(acc)
                return
            for sel in per_class[i]:
                yield from rec(i + 1, acc + list(sel))

        yield from rec(0, [])

    def random_selection():
        picked = []
        for c in max_classes:
            members = g.j_members[c]
            by_row, by_col = {}, {}
            row_of, col_of = r_of, l_of
            for x in members:
                by_row.setdefault(row_of[x], []).append(x)
                by_col.setdefault(col_of[x], []).append(x)
            if len(by_row) < len(by_col):
                by_row, by_col = by_col, by_row
                row_of, col_of = col_of, row_of
            rows = [v for _, v in sorted(by_row.items())]
            cols = sorted(by_col)
            wanted = list(cols)
            while len(wanted) < len(rows):
                wanted.append(rng.choice(cols))
            rng.shuffle(wanted)
            for row, want in zip(rows, wanted):
                cell = [x for x in row if col_of[x] == want]
                picked.append(rng.choice(cell if cell else row))
        return picked

    # free-slot candidates are all elements; lower-class representatives are
    # tried first, then the rest, then the maximal classes themselves (an
    # extra generator may sit next to a pinned one)
    free_candidates = [
        g.j_members[c][0] for c in range(len(g.j_members)) if c not in max_classes
    ]
    head = set(free_candidates)
    free_candidates += [x for x in range(n) if x not in head and x not in pinned_set]
    free_candidates += pinned_pool

    selection_space = 1
    for c in max_classes:
        cnt = 0
        for _ in class_selections(c):
            cnt += 1
            if cnt > budget:
                break
        selection_space *= max(cnt, 1)
        if selection_space > budget:
            break

    from itertools import combinations

    for k in range(lb, n + 1):
        extra = k - need - len(forced_outside)
        if extra == 0 and not pinned_closure_ok:
            continue  # refuted: all non-forced generators sit in maximal classes
        exhaustive = (
            selection_space
            * (max(len(free_candidates), 1) ** extra if extra <= 2 else budget + 1)
            <= budget
        )
        if exhaustive:
            for sel in all_pinned_selections():
                base = list(sel) + forced_outside
                if extra == 0:
                    if _generates(S, base, n):
                        return k, frozenset(S.elements[i] for i in base)
                    continue
                taken = set(base)
                for extra_sel in combinations(
                    [x for x in free_candidates if x not in taken], extra
                ):
                    cand = base + list(extra_sel)
                    if _generates(S, cand, n):
                        return k, frozenset(S.elements[i] for i in cand)
            continue  # exhaustively refuted at this size
        found = _heuristic_find(
            S, n, extra, forced_outside, random_selection, free_candidates, rng
        )
        if found is not None:
            return k, frozenset(S.elements[i] for i in found)
        raise BoundExceeded(f"rank search at size {k} exceeds budget")
    raise BoundExceeded("rank search failed")


def _heuristic_find(
    S, n, extra, forced_outside, random_selection, free_candidates, rng, tries=3000
):
    for t in range(tries):
        sel = random_selection() + list(forced_outside)
        if extra:
            taken = set(sel)
            pool = [x for x in free_candidates if x not in taken]
            if len(pool) < extra:
                return None
            frees = pool[:extra] if t % 3 == 0 else rng.sample(pool, extra)
            sel = sel + list(frees)
        if _generates(S, sel, n):
            return sel
    return None


def exact_idempotent_rank(S: FiniteSemigroup, green=None, budget=300_000) -> int:
    """Minimum size of an idempotent generating set (S must be E-generated)."""
    n = len(S)
    idem = idempotent_indices(S)
    if not _generates(S, idem, n):
        raise NotIdempotentGenerated(f"only <E> != S for this {n}-element semigroup")
    g = green if green is not None else green_structure(S)
    r_of, l_of = g.r_class, g.l_class
    max_classes = g.maximal_j_classes()
    idem_set = set(idem)

    lb = 0
    for c in max_classes:
        members = [x for x in g.j_members[c]]
        nr = len({r_of[x] for x in members})
        nl = len({l_of[x] for x in members})
        lb += max(nr, nl)
    lb = max(lb, 1)

    from itertools import combinations

    # small enough to search directly over idempotent subsets with the
    # R/L-covering constraint applied up front
    def covering_ok(subset):
        for c in max_classes:
            members = set(g.j_members[c])
            inside = [x for x in subset if x in members]
            if {r_of[x] for x in members} != {r_of[x] for x in inside}:
                return False
            if {l_of[x] for x in members} != {l_of[x] for x in inside}:
                return False
        return True

    for k in range(lb, len(idem) + 1):
        count = 0
        for subset in combinations(idem, k):
            if not covering_ok(subset):
                continue
            count += 1
            if count > budget:
                raise BoundExceeded("idempotent rank search exceeds budget")
            if _generates(S, list(subset), n):
                return k
    raise BoundExceeded("idempotent rank search failed")


# -- isomorphism -----------------------------------------------------------


def _wl_colors(S, green):
    n = len(S)
    prod = S.product
    idem = set(idempotent_indices(S))
    jsize = [len(green.j_members[green.j_class[x]]) for x in range(n)]
    sigs = [
        (
            x in idem,
            len(green.r_members[green.r_class[x]]),
            len(green.l_members[green.l_class[x]]),
            len(green.h_members[green.h_class[x]]),
            jsize[x],
        )
        for x in range(n)
    ]
    # relabel by sorted signature so that colours are comparable between two
    # different semigroups (first-seen numbering would not be canonical)
    canon = {s: i for i, s in enumerate(sorted(set(sigs)))}
    colors = [canon[s] for s in sigs]
    for _ in range(6):
        sigs = []
        for x in range(n):
            row = tuple(sorted((colors[y], colors[prod(x, y)]) for y in range(n)))
            col = tuple(sorted((colors[y], colors[prod(y, x)]) for y in range(n)))
            sigs.append((colors[x], hash(row), hash(col)))
        canon = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [canon[s] for s in sigs]
        if new == colors:
            break
        colors = new
    return colors


def _greedy_generators(S):
    n = len(S)
    order = sorted(range(n))
    gens = []
    covered = set()
    for x in order:
        if x not in covered:
            gens.append(x)
            covered = set(closed_indices(S, gens))
            if len(covered) == n:
                break
    return gens


def isomorphic(S: FiniteSemigroup, T: FiniteSemigroup, mode="iso", budget=2_000_000) -> bool:
    """Decide isomorphism (or anti-isomorphism) by invariant refinement plus
    backtracking over generator images."""
    if mode == "antiIso":
        return isomorphic(S, T.opposite(), "iso", budget)
    if mode != "iso":
        raise ValueError(f"unknown mode {mode!r}")
    n = len(S)
    if n != len(T):
        return False
    if n == 0:
        return True
    if n > 2600:
        raise BoundExceeded("isomorphism test limited to 2600 elements")
    gs, gt = green_structure(S), green_structure(T)
    cs, ct = _wl_colors(S, gs), _wl_colors(T, gt)
    from collections import Counter

    if Counter(cs) != Counter(ct):
        return False

    gens = _greedy_generators(S)
    t_by_color = {}
    for y in range(n):
        t_by_color.setdefault(ct[y], []).append(y)

    prod_s, prod_t = S.product, T.product
    steps = [0]
    phi = {}
    used = set()

    def assign(a, b):
        """Map a -> b and propagate products against everything mapped;
        returns the keys added (for rollback) or None on conflict."""
        added = []
        todo = [(a, b)]
        ok = True
        while todo:
            x, y = todo.pop()
            cur = phi.get(x)
            if cur is not None:
                if cur != y:
                    ok = False
                    break
                continue
            if cs[x] != ct[y] or y in used:
                ok = False
                break
            phi[x] = y
            used.add(y)
            added.append(x)
            for z, w in list(phi.items()):
                todo.append((prod_s(x, z), prod_t(y, w)))
                todo.append((prod_s(z, x), prod_t(w, y)))
        if ok:
            return added
        for x in added:
            used.discard(phi.pop(x))
        return None

    def backtrack(i):
        if steps[0] > budget:
            raise BoundExceeded("isomorphism search exceeds budget")
        if i == len(gens):
            return len(phi) == n  # propagation already verified all products
        g = gens[i]
        if g in phi:
            return backtrack(i + 1)
        for y in t_by_color.get(cs[g], ()):
            if y in used:
                continue
            steps[0] += 1
            added = assign(g, y)
            if added is not None:
                if backtrack(i + 1):
                    return True
                for x in added:
                    used.discard(phi.pop(x))
        return False

    return backtrack(0)


# -- eggbox ----------------------------------------------------------------


@dataclass
class EggboxCell:
    size: int
    is_group: bool


@dataclass
class EggboxDClass:
    name: str
    label: str
    size: int
    grid: list  # rows (R-classes) x cols (L-classes) of EggboxCell | None


@dataclass
class EggboxStructure:
    classes: list  # EggboxDClass, maximal first
    covers: list  # (upper index, lower index) into classes


def eggbox(S: FiniteSemigroup, green=None, rank_of=None) -> EggboxStructure:
    """Grid view of the D = J classes, ordered maximal-first.

    ``rank_of`` (payload -> int) customises the class labels; by default
    partitions are labelled by diagram rank and anything else by position.
    """
    g = green if green is not None else green_structure(S)
    ncl = len(g.j_members)
    idem = set(idempotent_indices(S))

    # sort classes: maximal first (descending J order), stable by min element
    def depth(c):
        return len(g.j_descendants(c))

    order = sorted(range(ncl), key=lambda c: (-depth(c), min(g.j_members[c])))
    pos = {c: i for i, c in enumerate(order)}

    if rank_of is None:
        def rank_of(x):  # noqa: E731 - default label rule
            return getattr(x, "rank", None)

    labels = {}
    for c in order:
        rep = S.elements[min(g.j_members[c])]
        r = rank_of(rep)
        labels[c] = f"D{r}" if r is not None else f"D{pos[c]}"
    counts = {}
    for c in order:
        counts[labels[c]] = counts.get(labels[c], 0) + 1
    seen = {}
    names = {}
    for c in order:
        base = labels[c]
        if counts[base] == 1:
            names[c] = base
        else:
            seen[base] = seen.get(base, 0)
            names[c] = f"{base}_{seen[base]}"
            seen[base] += 1

    classes = []
    for c in order:
        members = g.j_members[c]
        rows = sorted({g.r_class[x] for x in members})
        cols = sorted({g.l_class[x] for x in members})
        cell_members = {}
        for x in members:
            cell_members.setdefault((g.r_class[x], g.l_class[x]), []).append(x)
        grid = []
        for r in rows:
            grid.append(
                [
                    EggboxCell(
                        size=len(cell_members.get((r, l), ())),
                        is_group=any(x in idem for x in cell_members.get((r, l), ())),
                    )
                    if (r, l) in cell_members
                    else None
                    for l in cols
                ]
            )
        classes.append(
            EggboxDClass(name=names[c], label=labels[c], size=len(members), grid=grid)
        )

    covers = [(pos[u], pos[v]) for u, v in g.j_covers()]
    covers.sort()
    return EggboxStructure(classes=classes, covers=covers)


def eggbox_dot(e: EggboxStructure) -> str:
    """Deterministic DOT text: one cluster per D-class, an HTML-like table per
    grid, grey (#cccccc) fill on group cells, edges for the cover relation."""
    out = ["digraph eggbox {", "  rankdir=TB;", '  node [shape=none, margin=0];']
    for d in e.classes:
        out.append(f"  subgraph cluster_{d.name} {{")
        out.append(f'    label="{d.label}";')
        rows = []
        for i, row in enumerate(d.grid):
            cells = []
            for j, cell in enumerate(row):
                if cell is None:
                    cells.append(f'<TD PORT="H_{i}_{j}"></TD>')
                elif cell.is_group:
                    cells.append(
                        f'<TD PORT="H_{i}_{j}" BGCOLOR="#cccccc">{cell.size}</TD>'
                    )
                else:
                    cells.append(f'<TD PORT="H_{i}_{j}">{cell.size}</TD>')
            rows.append("<TR>" + "".join(cells) + "</TR>")
        table = (
            '<<TABLE BORDER="0" CELLBORDER="1" CELLSPACING="0">'
            + "".join(rows)
            + "</TABLE>>"
        )
        out.append(f"    {d.name} [label={table}];")
        out.append("  }")
    for u, v in e.covers:
        out.append(f"  {e.classes[u].name} -> {e.classes[v].name};")
    out.append("}")
    return "\n".join(out) + "\n"
