"""Sandwich semigroups over the diagram categories.

Fixing sigma in K_nm turns the hom-set K_mn into a semigroup under
a * b = (a sigma) b.  The regular part, Green's classes, maximal and minimal
classes, ideals and the idempotent-generated subsemigroup all follow from
the category's combinatorics (rank, kernels, nontransversals); an
independent engine oracle over the plain multiplication table is available
for cross-checking.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from . import counting, engine
from .errors import (
    NotRegularElement,
    RankNotAdmissible,
    ShapeMismatch,
)
from .homset import cat_leq_tagged, enumerate_homset, statistics
from .partition import (
    Partition,
    compose,
    identity,
    in_category,
    involution,
    product_rank,
)


@dataclass
class SandwichContext:
    """K_mn with a fixed sandwich element sigma in K_nm.

    ``r`` is rank(sigma) and ``tau`` the rank-collapsing partition in K_rn
    whose transversals pick out the transversal upper-halves of sigma (used
    by the surmorphism onto the monoid K_r).  Immutable after construction;
    derived data is cached.
    """

    tag: str
    m: int
    n: int
    sigma: Partition
    r: int
    tau: Partition
    homset: tuple

    @cached_property
    def _index(self):
        return {p: i for i, p in enumerate(self.homset)}

    @cached_property
    def _tau_sigma(self):
        return compose(self.tau, self.sigma)

    @cached_property
    def _tau_star(self):
        return involution(self.tau)

    @cached_property
    def admissible(self):
        """Ranks realised in the regular part, smallest first."""
        if self.tag in ("B", "TL"):
            return tuple(q for q in range(self.r + 1) if (self.r - q) % 2 == 0)
        return tuple(range(self.r + 1))

    def star(self, a, b):
        return star_product(self, a, b)


def _tau_of(sigma):
    """The partition collapsing sigma's transversal upper-halves to 1..r."""
    trans = []
    upper_nt = []
    for block in sigma.blocks:
        uppers = [v for v in block if v > 0]
        lowers = [v for v in block if v < 0]
        if uppers and lowers:
            trans.append(uppers)
        elif uppers:
            upper_nt.append(uppers)
    blocks = [(i + 1, *(-u for u in xs)) for i, xs in enumerate(trans)]
    blocks += [tuple(-u for u in xs) for xs in upper_nt]
    from .partition import _canonical_blocks

    return Partition(len(trans), sigma.m, _canonical_blocks(blocks))


def make_context(tag, m, n, sigma, max_total=None, homset=None) -> SandwichContext:
    """Validate sigma in K_nm and assemble the context for K_mn^sigma.

    ``homset`` may carry a previously enumerated K_mn to share across
    contexts with different sandwich elements.
    """
    if sigma.m != n or sigma.n != m:
        raise ShapeMismatch(
            f"sigma must lie in K_{{{n},{m}}}, got K_{{{sigma.m},{sigma.n}}}"
        )
    if not in_category(tag, sigma):
        raise ValueError(f"sigma is not a {tag}-diagram: {sigma.to_text()}")
    if homset is None:
        homset = enumerate_homset(tag, m, n, max_total=max_total)
    return SandwichContext(
        tag=tag,
        m=m,
        n=n,
        sigma=sigma,
        r=sigma.rank,
        tau=_tau_of(sigma),
        homset=tuple(homset.elements) if hasattr(homset, "elements") else tuple(homset),
    )


def star_product(ctx: SandwichContext, a: Partition, b: Partition) -> Partition:
    """a * b = a sigma b."""
    return compose(compose(a, ctx.sigma), b)


@dataclass(frozen=True)
class PSets:
    """The rank-preserving subsets governing Green's relations of K_mn^sigma.

    p1: rank survives right multiplication by sigma; p2: left; p3 = p:
    two-sided, which is exactly the set of regular elements.
    """

    p1: frozenset
    p2: frozenset
    p3: frozenset
    p: frozenset


def _join_separates(blocks_a, blocks_b, marked, size):
    """Do the classes of the join of two row partitions of [size] contain at
    most one marked point each?  (Brauer fast path.)"""
    parent = list(range(size + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for blocks in (blocks_a, blocks_b):
        for block in blocks:
            r0 = find(block[0])
            for v in block[1:]:
                r = find(v)
                if r != r0:
                    parent[r] = r0
    hit = set()
    for v in marked:
        r = find(v)
        if r in hit:
            return False
        hit.add(r)
    return True


def p_sets(ctx: SandwichContext) -> PSets:
    """Classify every element by rank preservation under sigma.

    For the Brauer category the join-separation criterion is computed as
    well and cross-checked against the rank tests.
    """
    sigma = ctx.sigma
    p1, p2, p3 = [], [], []
    for a in ctx.homset:
        q = a.rank
        right = product_rank(a, sigma) == q
        left = product_rank(sigma, a) == q
        if right:
            p1.append(a)
        if left:
            p2.append(a)
        if right and left:
            p3.append(a)
    set1, set2 = frozenset(p1), frozenset(p2)
    if ctx.tag == "B":
        sig_stats = statistics(sigma)
        for a in ctx.homset:
            st = statistics(a)
            sep1 = _join_separates(st.coker, sig_stats.ker, st.codom, ctx.n)
            sep2 = _join_separates(st.ker, sig_stats.coker, st.dom, ctx.m)
            if sep1 != (a in set1) or sep2 != (a in set2):
                raise AssertionError(
                    f"join-separation criterion disagrees at {a.to_text()}"
                )
    p = frozenset(p3)
    return PSets(p1=set1, p2=set2, p3=p, p=p)


def _cached_psets(ctx):
    got = getattr(ctx, "_psets", None)
    if got is None:
        got = p_sets(ctx)
        ctx._psets = got
    return got


@dataclass
class SandwichGreen:
    """Green's classes of K_mn^sigma from the structure theorems.

    Classes are stored as dicts from each element to a canonical class key;
    ``regular_classes`` maps each admissible rank q to the regular class
    D_q, and the hat classes (pullbacks along the surmorphism onto K_r) are
    given on the regular part.
    """

    r_key: dict
    l_key: dict
    h_key: dict
    d_key: dict
    j_key: dict
    regular_classes: dict
    hat_r_key: dict
    hat_l_key: dict
    hat_h_key: dict

    def classes(self, which):
        key = getattr(self, which + "_key")
        out = {}
        for x, k in key.items():
            out.setdefault(k, []).append(x)
        return {k: frozenset(v) for k, v in out.items()}


def sandwich_green(ctx: SandwichContext) -> SandwichGreen:
    """Theorem-based classification: within the regular part the sandwich
    classes are the categorical classes intersected with it, and every
    element outside the relevant P-set forms a singleton."""
    ps = _cached_psets(ctx)
    r_key, l_key, h_key, d_key, j_key = {}, {}, {}, {}, {}
    regular = {}
    hat_r, hat_l, hat_h = {}, {}, {}
    for a in ctx.homset:
        st = statistics(a)
        in1, in2 = a in ps.p1, a in ps.p2
        rk = ("r", st.dom, st.ker) if in1 else ("r!", a)
        lk = ("l", st.codom, st.coker) if in2 else ("l!", a)
        r_key[a] = rk
        l_key[a] = lk
        if in1 and in2:
            h_key[a] = ("h", st.dom, st.ker, st.codom, st.coker)
            d_key[a] = ("d", a.rank)
            regular.setdefault(a.rank, []).append(a)
        else:
            h_key[a] = ("h!", a)
            if in2:
                d_key[a] = ("dl",) + lk
            elif in1:
                d_key[a] = ("dr",) + rk
            else:
                d_key[a] = ("d!", a)
        j_key[a] = d_key[a]
    for q, members in regular.items():
        regular[q] = frozenset(members)
    for a in ps.p:
        img = psi(ctx, a)
        st = statistics(img)
        hat_r[a] = (st.dom, st.ker)
        hat_l[a] = (st.codom, st.coker)
        hat_h[a] = (st.dom, st.ker, st.codom, st.coker)
    return SandwichGreen(
        r_key=r_key,
        l_key=l_key,
        h_key=h_key,
        d_key=d_key,
        j_key=j_key,
        regular_classes=regular,
        hat_r_key=hat_r,
        hat_l_key=hat_l,
        hat_h_key=hat_h,
    )


def sandwich_leq(ctx: SandwichContext, rel: str, a: Partition, b: Partition) -> bool:
    """The sandwich preorders via the category ones: x <=_R^s y iff x = y or
    x <=_R (y sigma), dually for L, and J combines both with sigma-y-sigma."""
    if a == b:
        return True
    if rel == "R":
        return cat_leq_tagged(ctx.tag, "R", a, compose(b, ctx.sigma))
    if rel == "L":
        return cat_leq_tagged(ctx.tag, "L", a, compose(ctx.sigma, b))
    if rel == "J":
        bs = compose(b, ctx.sigma)
        sb = compose(ctx.sigma, b)
        return (
            cat_leq_tagged(ctx.tag, "R", a, bs)
            or cat_leq_tagged(ctx.tag, "L", a, sb)
            or cat_leq_tagged(ctx.tag, "J", a, compose(sb, ctx.sigma))
        )
    raise ValueError(f"unknown relation {rel!r}")


def psi(ctx: SandwichContext, a: Partition) -> Partition:
    """The rank-preserving surmorphism of the regular part onto K_r."""
    ps = _cached_psets(ctx)
    if a not in ps.p:
        raise NotRegularElement(f"{a.to_text()} is not regular in this sandwich")
    return compose(compose(ctx._tau_sigma, a), ctx._tau_star)


@dataclass(frozen=True)
class InverseSets:
    pre: frozenset
    post: frozenset
    v: frozenset
    ri: frozenset
    li: frozenset


def inverse_sets(ctx: SandwichContext) -> InverseSets:
    """Pre-/post-inverses and two-sided inverses of sigma, and its right- and
    left-inverses (post-inverses whose sigma-product acts as a one-sided
    identity on the whole hom-set)."""
    sigma = ctx.sigma
    pre, post = [], []
    for a in ctx.homset:
        sa = compose(sigma, a)
        if compose(sa, sigma) == sigma:
            pre.append(a)
        if compose(compose(a, sigma), a) == a:
            post.append(a)
    ri = []
    li = []
    for b in post:  # one-sided inverses are always post-inverses
        sb = compose(sigma, b)
        if all(compose(x, sb) == x for x in ctx.homset):
            ri.append(b)
        bs = compose(b, sigma)
        if all(compose(bs, x) == x for x in ctx.homset):
            li.append(b)
    pre_set = frozenset(pre)
    post_set = frozenset(post)
    return InverseSets(
        pre=pre_set,
        post=post_set,
        v=pre_set & post_set,
        ri=frozenset(ri),
        li=frozenset(li),
    )


@dataclass(frozen=True)
class MaximalClasses:
    """Maximal J-classes of the sandwich: singletons of rank above rank(sigma)
    plus, under the tag-specific criterion, the regular class D_r."""

    trivial: frozenset
    nontrivial: frozenset | None
    is_maximum: bool
    kind: str | None


def maximal_j_classes(ctx: SandwichContext) -> MaximalClasses:
    ps = _cached_psets(ctx)
    r = ctx.r
    trivial = frozenset(a for a in ctx.homset if a.rank > r)
    top = frozenset(a for a in ps.p if a.rank == r)
    if r == min(ctx.m, ctx.n):
        # sigma has a one-sided inverse; D_r is the maximum class
        if ctx.tag in ("P", "PB", "B"):
            kind = "left-group" if ctx.n <= ctx.m else "right-group"
        else:
            kind = "left-zero" if ctx.n <= ctx.m else "right-zero"
        return MaximalClasses(trivial, top, True, kind)
    if ctx.tag in ("P", "PB", "B"):
        return MaximalClasses(trivial, None, False, None)
    inv = inverse_sets(ctx)
    if inv.pre == inv.v:
        return MaximalClasses(trivial, top, False, "rectangular-band")
    return MaximalClasses(trivial, None, False, None)


def minimal_ideal(ctx: SandwichContext):
    """(z, D_z): the least admissible rank and its class, the minimal ideal."""
    z = min(counting.admissible_ranks(ctx.tag, ctx.m, ctx.n))
    return z, frozenset(a for a in ctx.homset if a.rank == z)


def ideal(ctx: SandwichContext, q: int) -> frozenset:
    """I_q: the regular elements of rank at most q (an ideal of Reg)."""
    if q not in ctx.admissible:
        raise RankNotAdmissible(f"rank {q} not admissible (have {ctx.admissible})")
    ps = _cached_psets(ctx)
    return frozenset(a for a in ps.p if a.rank <= q)


@dataclass(frozen=True)
class IdealStatus:
    is_e_generated: bool
    by_top_class: bool
    size: int
    top_idempotents: int


def _star_closure(ctx, generators):
    sigma = ctx.sigma
    right = {}

    def mul(x, y):
        sy = right.get(y)
        if sy is None:
            sy = right[y] = compose(sigma, y)
        return compose(x, sy)

    return frozenset(engine.closure_elements(generators, mul))


def ideal_idempotent_status(ctx: SandwichContext, q: int) -> IdealStatus:
    """Closure-computed idempotent generation flags for the ideal I_q."""
    iq = ideal(ctx, q)
    idem = [a for a in iq if star_product(ctx, a, a) == a]
    top_idem = [a for a in idem if a.rank == q]
    gen_all = _star_closure(ctx, idem) if idem else frozenset()
    gen_top = _star_closure(ctx, top_idem) if top_idem else frozenset()
    return IdealStatus(
        is_e_generated=gen_all == iq,
        by_top_class=gen_top == iq,
        size=len(iq),
        top_idempotents=len(top_idem),
    )


def idempotent_generated(ctx: SandwichContext, check: bool = True):
    """The idempotent-generated subsemigroup of K_mn^sigma, with its
    tag-specific closed description asserted when ``check`` is set.

    Closed forms: the whole regular part for TL/PP; V(sigma) together with
    the regular elements below rank r for P/B; the partial-Brauer shape with
    the two top layers cut to idempotents for PB; and (for every tag) the
    pullback of the idempotent-generated part of the monoid K_r.
    """
    ps = _cached_psets(ctx)
    idem = [a for a in ctx.homset if star_product(ctx, a, a) == a]
    egen = _star_closure(ctx, idem) if idem else frozenset()
    description = {"size": len(egen), "idempotents": len(idem)}
    if check:
        r = ctx.r
        if ctx.tag in ("TL", "PP"):
            expected = ps.p
            description["closed_form"] = "whole regular part"
        elif ctx.tag in ("P", "B"):
            inv = inverse_sets(ctx)
            expected = inv.v | frozenset(a for a in ps.p if a.rank < r)
            description["closed_form"] = "V(sigma) + lower ranks"
        elif ctx.tag == "PB":
            expected = frozenset(
                a for a in idem if a.rank in (r, r - 1)
            ) | frozenset(a for a in ps.p if a.rank <= r - 2)
            description["closed_form"] = "top-two idempotents + lower ranks"
        else:
            expected = None
            description["closed_form"] = "pullback only"
        if expected is not None and egen != expected:
            raise AssertionError(
                f"idempotent-generated part of {ctx.tag}^sigma does not match "
                f"its closed form ({len(egen)} vs {len(expected)})"
            )
        # pullback form, valid for every tag
        kr = enumerate_homset(ctx.tag, r, r)
        mono_idem = [a for a in kr.elements if compose(a, a) == a]
        mono_egen = frozenset(engine.closure_elements(mono_idem, compose))
        pullback = frozenset(a for a in ps.p if psi(ctx, a) in mono_egen)
        if egen != pullback:
            raise AssertionError(
                "idempotent-generated part does not match the K_r pullback"
            )
    return egen, description


# -- engine oracle ---------------------------------------------------------


def sandwich_oracle(ctx: SandwichContext) -> engine.FiniteSemigroup:
    """The same semigroup as a raw multiplication table for cross-checks."""
    sigma = ctx.sigma
    elements = list(ctx.homset)
    index = ctx._index
    right = [compose(sigma, y) for y in elements]

    def fn(i, j):
        return index[compose(elements[i], right[j])]

    return engine.FiniteSemigroup(elements, mul_fn=fn, check_associative=False)


def reg_semigroup(ctx: SandwichContext) -> engine.FiniteSemigroup:
    """Reg(K_mn^sigma) as a standalone semigroup (sigma-products cached)."""
    ps = _cached_psets(ctx)
    elements = sorted(ps.p)
    index = {a: i for i, a in enumerate(elements)}
    sigma = ctx.sigma
    right = {}

    def fn(i, j):
        sy = right.get(j)
        if sy is None:
            sy = right[j] = compose(sigma, elements[j])
        return index[compose(elements[i], sy)]

    return engine.FiniteSemigroup(elements, mul_fn=fn, check_associative=False)


def reg_green(ctx: SandwichContext, reg: engine.FiniteSemigroup) -> engine.GreenStructure:
    """Theorem-based Green structure of Reg(K_mn^sigma) in engine form.

    Classes inside the regular part are the categorical classes, and the
    regular D-classes form a chain by rank; this avoids the quadratic Cayley
    walk for large regular parts (rank searches only need the class data).
    """
    green = sandwich_green(ctx)
    n = len(reg)

    def ids(key_of):
        seen = {}
        out = [0] * n
        for i, a in enumerate(reg.elements):
            out[i] = seen.setdefault(key_of[a], len(seen))
        return out, len(seen)

    r_class, nr = ids(green.r_key)
    l_class, nl = ids(green.l_key)
    h_class, nh = ids(green.h_key)
    ranks = sorted({a.rank for a in reg.elements})
    rank_pos = {q: i for i, q in enumerate(ranks)}
    j_class = [rank_pos[a.rank] for a in reg.elements]

    def members(cls, count):
        out = [[] for _ in range(count)]
        for i, c in enumerate(cls):
            out[c].append(i)
        return out

    # the regular classes form a chain: each rank covers the next one down
    j_edges = [[i - 1] if i else [] for i in range(len(ranks))]
    return engine.GreenStructure(
        size=n,
        r_class=r_class,
        l_class=l_class,
        j_class=j_class,
        h_class=h_class,
        d_class=list(j_class),
        r_members=members(r_class, nr),
        l_members=members(l_class, nl),
        j_members=members(j_class, len(ranks)),
        h_members=members(h_class, nh),
        d_members=members(j_class, len(ranks)),
        j_edges=j_edges,
    )


def sandwich_eggbox(ctx: SandwichContext) -> engine.EggboxStructure:
    """Eggbox of the sandwich semigroup via the engine oracle."""
    return engine.eggbox(sandwich_oracle(ctx))


def analyze_report(ctx: SandwichContext) -> dict:
    """The JSON-able structure report used by the command line."""
    ps = _cached_psets(ctx)
    green = sandwich_green(ctx)
    idem = [a for a in ctx.homset if star_product(ctx, a, a) == a]
    maximal = maximal_j_classes(ctx)
    z, dz = minimal_ideal(ctx)
    reg = reg_semigroup(ctx)
    dominated, witness = engine.is_mi_dominated(reg)
    ideals = {}
    for q in ctx.admissible:
        status = ideal_idempotent_status(ctx, q)
        ideals[q] = {
            "size": status.size,
            "isEGenerated": status.is_e_generated,
            "byTopClass": status.by_top_class,
        }
    class_counts = {}
    for q, members in sorted(green.regular_classes.items()):
        keys_r = {green.r_key[a] for a in members}
        keys_l = {green.l_key[a] for a in members}
        keys_h = {green.h_key[a] for a in members}
        class_counts[q] = {
            "size": len(members),
            "rClasses": len(keys_r),
            "lClasses": len(keys_l),
            "hClasses": len(keys_h),
        }
    return {
        "schema": 1,
        "tag": ctx.tag,
        "m": ctx.m,
        "n": ctx.n,
        "sigma": ctx.sigma.to_json_obj(),
        "sigmaRank": ctx.r,
        "homsetSize": len(ctx.homset),
        "pSetSizes": {
            "p1": len(ps.p1),
            "p2": len(ps.p2),
            "p3": len(ps.p3),
            "p": len(ps.p),
        },
        "regularClassCounts": class_counts,
        "idempotentCount": len(idem),
        "maximalClasses": {
            "trivial": len(maximal.trivial),
            "nontrivialSize": len(maximal.nontrivial) if maximal.nontrivial else 0,
            "isMaximum": maximal.is_maximum,
            "kind": maximal.kind,
        },
        "minimalIdeal": {"rank": z, "size": len(dz)},
        "miDominated": dominated,
        "miWitness": witness.to_json_obj() if witness is not None else None,
        "ideals": ideals,
    }
