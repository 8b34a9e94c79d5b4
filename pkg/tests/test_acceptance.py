"""Acceptance criteria, one test per numbered item.

Each test prints a CRITERION-n PASS line on success so the suite doubles as
a checklist; every tolerance is exact.
"""

import random

import pytest

from diagramcat import (
    TAGS,
    BrauerParams,
    FiniteSemigroup,
    cat_green_classes,
    canonical_sigma,
    compose,
    dclass_profile,
    enumerate_homset,
    exact_idempotent_rank,
    exact_rank,
    green_structure,
    homset_cardinality,
    ideal_rank,
    idempotent_count,
    identity,
    involution,
    isomorphic,
    kappa_join,
    kappa_join_recurrence,
    make_context,
    make_partition,
    mid_identities,
    pp_to_tl,
    reg_rank,
    reg_size,
    regularity_preserving,
    sandwich_rank,
    statistics,
)
from diagramcat import brauer, sandwich as sw
from diagramcat.counting import admissible_ranks, double_factorial
from diagramcat.engine import idempotent_indices, is_mi_dominated

from oracles import (
    equivalence_rank,
    join_odd_class_count,
    one_two_equivalences,
)


def done(n, detail=""):
    print(f"CRITERION-{n} PASS {detail}")


def test_criterion_01_figure_composition():
    alpha = make_partition(
        6, 8, [[1, 4], [2, 3, -4, -5], [5, 6], [-1, -2, -6], [-3], [-7, -8]]
    )
    beta = make_partition(
        8, 7, [[1, 2], [3, 4, -1], [5, -4, -5], [6], [7], [8, -6, -7], [-2], [-3]]
    )
    product = make_partition(
        6, 7, [[1, 4], [2, 3, -1, -4, -5], [5, 6], [-2], [-3], [-6, -7]]
    )
    assert compose(alpha, beta) == product
    done(1, "worked product reproduced bit-exactly")


def test_criterion_02_homset_counts():
    checked = 0
    for tag in TAGS:
        for total in range(11):
            for m in range(total + 1):
                n = total - m
                want = homset_cardinality(tag, m, n)
                if tag in ("B", "TL") and (m - n) % 2:
                    assert want == 0
                    continue
                assert len(enumerate_homset(tag, m, n)) == want, (tag, m, n)
                checked += 1
    done(2, f"{checked} hom-sets counted")


def test_criterion_03_green_profiles():
    checked = 0
    for tag in TAGS:
        top = 6 if tag in ("B", "TL") else 5
        for m in range(top + 1):
            for n in range(top + 1):
                if tag in ("B", "TL") and (m - n) % 2:
                    continue
                classes = cat_green_classes(enumerate_homset(tag, m, n))
                for r in admissible_ranks(tag, m, n):
                    prof = dclass_profile(tag, m, n, r)
                    assert len(classes.r_classes.get(r, ())) == prof.r_classes
                    assert len(classes.l_classes.get(r, ())) == prof.l_classes
                    hs = {len(h) for h in classes.h_classes.get(r, ())}
                    assert hs == {prof.h_size}
                    assert len(classes.d_classes.get(r, ())) == prof.d_size
                    checked += 1
    done(3, f"{checked} (tag, m, n, rank) profiles")


def test_criterion_04_kappa_table():
    assert (kappa_join(6, 4, 0), kappa_join(6, 4, 2), kappa_join(6, 4, 4)) == (15, 42, 9)
    for m in range(13):
        for r in range(m % 2, m + 1, 2):
            for q in range(r % 2, r + 1, 2):
                assert kappa_join(m, r, q) == kappa_join_recurrence(m, r, q)
    for m in range(11):
        for r in range(m % 2, m + 1, 2):
            eta = [(i,) for i in range(1, r + 1)] + [
                (i, i + 1) for i in range(r + 1, m, 2)
            ]
            counts = {}
            for eps in one_two_equivalences(m):
                q = equivalence_rank(eps)
                if join_odd_class_count(eps, eta, m) == q:
                    counts[q] = counts.get(q, 0) + 1
            for q in range(r % 2, r + 1, 2):
                assert kappa_join(m, r, q) == counts.get(q, 0)
    done(4, "closed form = recurrence (m <= 12) = join-count oracle (m <= 10)")


# 22 contexts across the six tags, all with |K_mn| <= 2000
ORACLE_CONTEXTS = [
    ("P", 2, 2, [[1, -1], [2], [-2]]),
    ("P", 3, 2, [[1, 2, -1, -2], [-3]]),
    ("P", 3, 3, [[1, 2, -1], [3, -2, -3]]),
    ("P", 3, 3, [[1, 2, 3], [-1, -2, -3]]),
    ("PB", 2, 2, [[1, -1], [2, -2]]),
    ("PB", 3, 3, [[1, -1], [2, -3], [3], [-2]]),
    ("PB", 4, 3, [[1, -2], [2], [3], [-1], [-3], [-4]]),
    ("B", 3, 3, [[1, -1], [2, 3], [-2, -3]]),
    ("B", 4, 2, [[1, -1], [2, -2], [-3, -4]]),
    ("B", 4, 4, [[1, -2], [2, -3], [3, 4], [-1, -4]]),
    ("B", 5, 3, [[1, -5], [2, 3], [-1, -2], [-3, -4]]),
    ("B", 6, 4, [[1, -1], [2, -2], [3, 4], [-3, -4], [-5, -6]]),
    ("TL", 4, 4, [[1, -1], [2, -2], [3, 4], [-3, -4]]),
    ("TL", 4, 4, [[1, -3], [2, -4], [3, 4], [-1, -2]]),
    ("TL", 5, 5, [[1, -5], [2, 3], [4, 5], [-1, -2], [-3, -4]]),
    ("TL", 6, 6, [[1, -1], [2, -6], [3, 4], [5, 6], [-2, -3], [-4, -5]]),
    ("M", 3, 3, [[1, -2], [2], [3], [-1], [-3]]),
    ("M", 4, 3, [[1, -1], [2, 3], [-2], [-3], [-4]]),
    ("M", 4, 4, [[1, -1], [2, -2], [3], [4], [-3], [-4]]),
    ("PP", 3, 3, [[1, -1], [2, 3, -2], [-3]]),
    ("PP", 4, 3, [[1, 2, -1, -2], [3, -3, -4]]),
    ("PP", 4, 4, [[1, -1], [2, 3, -2], [4], [-3, -4]]),
]


@pytest.mark.parametrize("tag,m,n,blocks", ORACLE_CONTEXTS)
def test_criterion_05_sandwich_green_vs_oracle(tag, m, n, blocks):
    ctx = make_context(tag, m, n, make_partition(n, m, blocks))
    assert len(ctx.homset) <= 2000
    green = sw.sandwich_green(ctx)
    oracle = sw.sandwich_oracle(ctx)
    og = green_structure(oracle)
    for which, members in (
        ("r", og.r_members),
        ("l", og.l_members),
        ("h", og.h_members),
        ("d", og.d_members),
        ("j", og.j_members),
    ):
        want = {frozenset(oracle.elements[i] for i in mem) for mem in members}
        got = set(green.classes(which).values())
        assert got == want, (tag, m, n, which)


def test_criterion_05_summary():
    tags = {c[0] for c in ORACLE_CONTEXTS}
    assert tags == set(TAGS) and len(ORACLE_CONTEXTS) >= 20
    done(5, f"{len(ORACLE_CONTEXTS)} contexts, theorem classes = Cayley classes")


def test_criterion_06_brauer_reg_structure():
    checked = 0
    for total in range(0, 13, 2):
        for m in range(total + 1):
            n = total - m
            if (m - n) % 2:
                continue
            homset = enumerate_homset("B", m, n, max_total=12)
            for r in range(n % 2, min(m, n) + 1, 2):
                ctx = make_context(
                    "B", m, n, canonical_sigma(m, n, r), homset=homset
                )
                ps = sw.p_sets(ctx)
                params = BrauerParams(m, n, r)
                assert len(ps.p) == reg_size(params), (m, n, r)
                total_idem, _ = idempotent_count(params)
                brute = sum(
                    1 for a in ctx.homset if sw.star_product(ctx, a, a) == a
                )
                assert brute == total_idem, (m, n, r)
                checked += 1
    assert reg_size(BrauerParams(6, 6, 4)) == 5697
    done(6, f"{checked} parameter points, flagship 5697 included")


def test_criterion_07_hard_instances():
    # the rank-2 sandwich of the degree-3 partition monoid
    sigma3 = make_partition(3, 3, [[1, -1], [2], [3, -2, -3]])
    ctx3 = make_context("P", 3, 3, sigma3)
    idem = [a for a in ctx3.homset if sw.star_product(ctx3, a, a) == a]
    assert len(idem) == 99
    inv = sw.inverse_sets(ctx3)
    assert len(inv.v) == 9
    reg = sw.reg_semigroup(ctx3)
    assert mid_identities(reg) == inv.v
    covered = set()
    for e in inv.v:
        for a in idem:
            covered.add(sw.star_product(ctx3, sw.star_product(ctx3, e, a), e))
    assert len(covered) == 83
    dominated, witness = is_mi_dominated(reg)
    assert dominated is False and witness is not None

    # the rank-3 sandwich of the degree-4 partition monoid
    sigma4 = make_partition(4, 4, [[1, -1], [2, -2], [3, 4, -3, -4]])
    ctx4 = make_context("P", 4, 4, sigma4)
    i2 = sw.ideal(ctx4, 2)
    assert len(i2) == 2476
    top_idem = [
        a for a in i2 if a.rank == 2 and sw.star_product(ctx4, a, a) == a
    ]
    generated = sw._star_closure(ctx4, top_idem)
    assert len(generated) == 2332
    done(7, "99 / 83 / 9 and 2476 vs 2332 reproduced")


def test_criterion_08_tl4_variant_classification():
    rank2 = [s for s in enumerate_homset("TL", 4, 4).elements if s.rank == 2]
    assert len(rank2) == 9
    oracles = [
        sw.sandwich_oracle(make_context("TL", 4, 4, s)) for s in rank2
    ]

    def classify(anti):
        classes = []
        for i, S in enumerate(oracles):
            for cls in classes:
                T = oracles[cls[0]]
                if isomorphic(T, S) or (anti and isomorphic(T, S, "antiIso")):
                    cls.append(i)
                    break
            else:
                classes.append([i])
        return classes

    up_to_iso = classify(anti=False)
    up_to_anti = classify(anti=True)
    assert len(up_to_iso) == 5
    assert len(up_to_anti) == 4
    done(8, "9 variants: 5 classes up to iso, 4 up to iso + anti-iso")


def _sandwich_semigroup(tag, m, n, sigma):
    ctx = make_context(tag, m, n, sigma)
    elements = list(ctx.homset)
    right = [compose(ctx.sigma, y) for y in elements]
    index = {a: i for i, a in enumerate(elements)}
    return ctx, FiniteSemigroup(
        elements,
        mul_fn=lambda i, j: index[compose(elements[i], right[j])],
        check_associative=False,
    )


def test_criterion_09_rank_formulas():
    # full sandwich semigroups against the generating-set theorems
    for m, n, r in ((2, 2, 0), (4, 2, 2), (4, 4, 2), (4, 4, 0)):
        ctx, S = _sandwich_semigroup("B", m, n, canonical_sigma(m, n, r))
        want = sandwich_rank(BrauerParams(m, n, r))
        green = green_structure(S)
        rank, witness = exact_rank(S, green=green)
        assert rank == want, (m, n, r)
        # the maximal-class lower bound holds with equality information
        lb = sum(
            max(
                len({green.r_class[x] for x in green.j_members[c]}),
                len({green.l_class[x] for x in green.j_members[c]}),
            )
            for c in green.maximal_j_classes()
        )
        assert rank >= lb

    # regular subsemigroups
    for m, n, r, want in ((4, 4, 2, 6), (6, 6, 4, 10)):
        ctx = make_context("B", m, n, canonical_sigma(m, n, r))
        reg = sw.reg_semigroup(ctx)
        assert reg_rank(BrauerParams(m, n, r)) == want
        rank, _ = exact_rank(reg, green=sw.reg_green(ctx, reg))
        assert rank == want, (m, n, r)

    # ideal rank via idempotent rank on the minimal ideal
    ctx = make_context("B", 4, 4, canonical_sigma(4, 4, 2))
    i0 = sorted(sw.ideal(ctx, 0))
    S0 = FiniteSemigroup.from_mul(
        i0, lambda x, y: sw.star_product(ctx, x, y), check_associative=False
    )
    assert exact_idempotent_rank(S0) == 3 == ideal_rank(BrauerParams(4, 4, 2), 0)
    done(9, "generating-set sizes confirmed by search at desk scale")


def test_criterion_10_idempotent_generated():
    # closed forms for the idempotent-generated subsemigroup, |Reg| <= 2000
    ctxs = [
        ("TL", 4, 4, 2),
        ("TL", 6, 6, 2),
        ("PP", 4, 4, 2),
        ("PP", 3, 3, 3),
        ("P", 3, 3, 2),
        ("P", 3, 3, 1),
        ("B", 4, 4, 2),
        ("B", 5, 3, 1),
        ("B", 6, 4, 2),
        ("PB", 3, 3, 2),
        ("PB", 4, 4, 2),
        ("M", 4, 4, 3),
    ]
    for tag, m, n, r in ctxs:
        ctx = make_context(tag, m, n, _staircase(tag, m, n, r))
        assert len(sw.p_sets(ctx).p) <= 2000
        sw.idempotent_generated(ctx)  # raises on any closed-form mismatch

    # mu-threshold for ideal idempotent generation, ranks up to 4 per tag
    mu_of = {
        "PP": lambda r: r,
        "TL": lambda r: r,
        "P": lambda r: r - 1,
        "PB": lambda r: r - 2,
        "B": lambda r: r - 2,
        "M": lambda r: r // 2 - 1,
    }
    cases = {
        "P": [(3, 3, 0), (3, 3, 1), (3, 3, 2), (3, 3, 3), (4, 4, 4)],
        "PB": [(3, 3, 0), (3, 3, 1), (3, 3, 2), (3, 3, 3), (4, 4, 4)],
        "B": [(4, 4, 0), (4, 4, 2), (3, 3, 1), (3, 3, 3), (4, 4, 4)],
        "TL": [(4, 4, 0), (4, 4, 2), (3, 3, 1), (3, 3, 3), (4, 4, 4)],
        "M": [(3, 3, 0), (3, 3, 1), (4, 4, 2), (3, 3, 3), (4, 4, 4)],
        "PP": [(3, 3, 0), (3, 3, 1), (3, 3, 2), (3, 3, 3), (4, 4, 4)],
    }
    for tag, triples in cases.items():
        for m, n, r in triples:
            ctx = make_context(tag, m, n, _staircase(tag, m, n, r))
            mu = mu_of[tag](r)
            for q in ctx.admissible:
                status = sw.ideal_idempotent_status(ctx, q)
                assert status.is_e_generated == (q <= mu), (tag, m, n, r, q)
    done(10, "closed forms and mu-thresholds verified by closure")


def _staircase(tag, m, n, r):
    blocks = [(i, -i) for i in range(1, r + 1)]
    if tag in ("B", "TL"):
        blocks += [(i, i + 1) for i in range(r + 1, n, 2)]
        blocks += [(-i, -(i + 1)) for i in range(r + 1, m, 2)]
    elif tag in ("PB", "M"):
        blocks += [(i,) for i in range(r + 1, n + 1)]
        blocks += [(-i,) for i in range(r + 1, m + 1)]
    else:
        upper = tuple(range(r + 1, n + 1))
        lower = tuple(-i for i in range(r + 1, m + 1))
        blocks += [b for b in (upper, lower) if b]
    return make_partition(n, m, blocks)


def test_criterion_11_property_suites():
    rng = random.Random(23)

    # regular-*-category laws on whole small hom-sets
    for tag, m, n in (("P", 2, 2), ("PB", 3, 2), ("B", 3, 3), ("TL", 4, 2)):
        for a in enumerate_homset(tag, m, n).elements:
            s = involution(a)
            assert involution(s) == a
            assert compose(compose(a, s), a) == a
            assert compose(compose(s, a), s) == s
    for tag in TAGS:
        left = enumerate_homset(tag, 2, 2).elements
        right = enumerate_homset(tag, 2, 3).elements
        for a in left:
            for b in right:
                assert involution(compose(a, b)) == compose(
                    involution(b), involution(a)
                )

    # planarity closure under composition
    planars = enumerate_homset("PP", 3, 3).elements
    for _ in range(300):
        a, b = rng.choice(planars), rng.choice(planars)
        from diagramcat import is_planar

        assert is_planar(compose(a, b))

    # doubling functor: injective, surjective, multiplicative
    for m, n, k in ((2, 2, 2), (1, 3, 2), (3, 2, 1)):
        src = enumerate_homset("PP", m, n).elements
        images = {pp_to_tl(p) for p in src}
        assert len(images) == len(src)
        assert images == set(enumerate_homset("TL", 2 * m, 2 * n).elements)
        for a in src:
            for b in enumerate_homset("PP", n, k).elements:
                assert pp_to_tl(compose(a, b)) == compose(pp_to_tl(a), pp_to_tl(b))

    # rectangular band of inverses, MI and RP on the regular part
    for tag, m, n, blocks in (
        ("P", 3, 3, [[1, 2, -1], [3, -2, -3]]),
        ("B", 4, 2, [[1, -1], [2, -2], [-3, -4]]),
    ):
        ctx = make_context(tag, m, n, make_partition(n, m, blocks))
        inv = sw.inverse_sets(ctx)
        reg = sw.reg_semigroup(ctx)
        assert mid_identities(reg) == inv.v
        top = frozenset(a for a in reg.elements if a.rank == ctx.r)
        assert regularity_preserving(reg) == top
        for e in inv.v:
            for f in inv.v:
                assert sw.star_product(ctx, sw.star_product(ctx, e, f), e) == e

    # minimal ideal: classes agree with the categorical ones
    for tag, m, n, r in (("B", 4, 2, 2), ("M", 3, 3, 1), ("P", 3, 2, 1)):
        ctx = make_context(tag, m, n, _staircase(tag, m, n, r))
        z, dz = sw.minimal_ideal(ctx)
        green = sw.sandwich_green(ctx)
        prof = dclass_profile(tag, m, n, z)
        assert len({green.r_key[a] for a in dz}) == prof.r_classes
        assert len({green.l_key[a] for a in dz}) == prof.l_classes
    done(11, "star laws, planarity, doubling functor, MI/RP, minimal ideal")
