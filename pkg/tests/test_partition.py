import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from diagramcat import (
    TAGS,
    compose,
    enumerate_homset,
    from_json,
    from_text,
    identity,
    in_category,
    involution,
    is_planar,
    make_partition,
    pp_to_tl,
    product_rank,
    statistics,
)
from diagramcat.errors import (
    DuplicateVertex,
    MissingVertex,
    NotPlanar,
    OutOfRange,
    ShapeMismatch,
)

from oracles import planar_by_crossings

# the running examples: alpha in P_{6,8} and beta in P_{8,7}
ALPHA = make_partition(6, 8, [[1, 4], [2, 3, -4, -5], [5, 6], [-1, -2, -6], [-3], [-7, -8]])
BETA = make_partition(
    8, 7, [[1, 2], [3, 4, -1], [5, -4, -5], [6], [7], [8, -6, -7], [-2], [-3]]
)
ALPHA_BETA = make_partition(
    6, 7, [[1, 4], [2, 3, -1, -4, -5], [5, 6], [-2], [-3], [-6, -7]]
)


def random_partition(rng, m, n):
    verts = list(range(1, m + 1)) + [-j for j in range(1, n + 1)]
    rng.shuffle(verts)
    blocks = []
    while verts:
        k = rng.randint(1, min(3, len(verts)))
        blocks.append(verts[:k])
        verts = verts[k:]
    return make_partition(m, n, blocks)


class TestMakePartition:
    def test_running_example(self):
        assert ALPHA.m == 6 and ALPHA.n == 8
        assert ALPHA.blocks[0] == (1, 4)

    def test_empty(self):
        p = make_partition(0, 0, [])
        assert p.blocks == () and p.rank == 0

    def test_duplicate_vertex(self):
        with pytest.raises(DuplicateVertex):
            make_partition(2, 2, [[1], [1], [2, -1, -2]])

    def test_missing_vertex(self):
        with pytest.raises(MissingVertex) as exc:
            make_partition(2, 2, [[1, 2], [-1]])
        assert exc.value.vertex == -2

    def test_out_of_range(self):
        with pytest.raises(OutOfRange):
            make_partition(2, 2, [[1, 2, 3], [-1, -2]])

    def test_canonical_order_is_input_independent(self):
        a = make_partition(2, 2, [[-2, 1], [2, -1]])
        b = make_partition(2, 2, [[2, -1], [1, -2]])
        assert a == b and hash(a) == hash(b)


class TestCompose:
    def test_figure_pair(self):
        assert compose(ALPHA, BETA) == ALPHA_BETA

    def test_identity_neutral(self):
        for p in (ALPHA, BETA, ALPHA_BETA):
            assert compose(identity(p.m), p) == p
            assert compose(p, identity(p.n)) == p

    def test_interior_loop_discarded(self):
        e = make_partition(2, 2, [[1, 2], [-1, -2]])
        assert compose(e, e) == e

    def test_shape_mismatch(self):
        with pytest.raises(ShapeMismatch):
            compose(ALPHA, ALPHA)

    def test_associativity_sampled(self):
        rng = random.Random(1)
        for _ in range(80):
            m, n, k, l = (rng.randint(0, 4) for _ in range(4))
            a = random_partition(rng, m, n)
            b = random_partition(rng, n, k)
            c = random_partition(rng, k, l)
            assert compose(compose(a, b), c) == compose(a, compose(b, c))

    def test_product_rank_matches_compose(self):
        rng = random.Random(2)
        for _ in range(120):
            m, n, k = rng.randint(0, 5), rng.randint(0, 5), rng.randint(0, 5)
            a = random_partition(rng, m, n)
            b = random_partition(rng, n, k)
            assert product_rank(a, b) == compose(a, b).rank


class TestInvolution:
    def test_symmetric_diagram(self):
        p = make_partition(2, 2, [[1, -2], [2, -1]])
        assert involution(p) == p

    def test_running_example(self):
        expected = make_partition(
            8, 6, [[-1, -4], [-2, -3, 4, 5], [-5, -6], [1, 2, 6], [3], [7, 8]]
        )
        assert involution(ALPHA) == expected

    def test_antihomomorphism_on_figure_pair(self):
        assert involution(compose(ALPHA, BETA)) == compose(
            involution(BETA), involution(ALPHA)
        )

    def test_star_laws_exhaustive_small(self):
        # (a*)* = a, a = a a* a, a* = a* a a* on whole small hom-sets
        for tag, m, n in (("P", 2, 2), ("B", 3, 3), ("M", 3, 2), ("TL", 4, 2)):
            for a in enumerate_homset(tag, m, n).elements:
                s = involution(a)
                assert involution(s) == a
                assert compose(compose(a, s), a) == a
                assert compose(compose(s, a), s) == s

    def test_star_laws_randomized(self):
        rng = random.Random(3)
        for _ in range(60):
            a = random_partition(rng, rng.randint(0, 6), rng.randint(0, 6))
            s = involution(a)
            assert compose(compose(a, s), a) == a
            assert involution(compose(a, s)) == compose(a, s)


class TestStatistics:
    def test_running_example(self):
        st_a = statistics(ALPHA)
        assert st_a.rank == 1
        assert st_a.dom == frozenset({2, 3})
        assert st_a.codom == frozenset({4, 5})

    def test_identity(self):
        st_i = statistics(identity(4))
        assert st_i.rank == 4
        assert all(len(b) == 1 for b in st_i.ker)
        assert all(len(b) == 1 for b in st_i.coker)

    def test_hook(self):
        e = make_partition(2, 2, [[1, 2], [-1, -2]])
        st_e = statistics(e)
        assert st_e.rank == 0
        assert st_e.upper_nontransversals == frozenset({(1, 2)})
        assert st_e.lower_nontransversals == frozenset({(1, 2)})


class TestPlanarity:
    def test_paper_examples(self):
        assert not is_planar(ALPHA)
        assert is_planar(BETA)
        assert is_planar(identity(5))

    def test_against_crossing_oracle(self):
        for tag, shapes in (("P", [(2, 2), (3, 2), (3, 3)]), ("PB", [(4, 3)])):
            for m, n in shapes:
                for p in enumerate_homset(tag, m, n).elements:
                    assert is_planar(p) == planar_by_crossings(p), p.to_text()

    def test_composition_preserves_planarity(self):
        rng = random.Random(4)
        planars = [p for p in enumerate_homset("PP", 3, 3).elements]
        for _ in range(200):
            a, b = rng.choice(planars), rng.choice(planars)
            assert is_planar(compose(a, b))


class TestMembership:
    def test_examples(self):
        assert in_category("B", identity(2))
        assert not in_category("TL", ALPHA)
        assert in_category("M", make_partition(2, 2, [[1], [2, -2], [-1]]))

    def test_closure_under_composition_and_star(self):
        rng = random.Random(5)
        for tag in TAGS:
            pool = enumerate_homset(tag, 2, 2).elements
            pool2 = enumerate_homset(tag, 2, 3).elements
            if not pool or not pool2:
                continue
            for _ in range(50):
                a, b = rng.choice(pool), rng.choice(pool2)
                assert in_category(tag, compose(a, b))
                assert in_category(tag, involution(a))


class TestDoubling:
    def test_small_cases(self):
        assert pp_to_tl(identity(1)) == identity(2)
        assert pp_to_tl(make_partition(0, 0, [])) == make_partition(0, 0, [])

    def test_not_planar_rejected(self):
        with pytest.raises(NotPlanar):
            pp_to_tl(ALPHA)

    def test_bijection_onto_even_temperley_lieb(self):
        for m, n in ((1, 1), (2, 2), (2, 1), (3, 2), (0, 2), (3, 3)):
            source = enumerate_homset("PP", m, n).elements
            images = {pp_to_tl(p) for p in source}
            assert len(images) == len(source)
            target = set(enumerate_homset("TL", 2 * m, 2 * n).elements)
            assert images == target

    def test_rank_doubles(self):
        for p in enumerate_homset("PP", 3, 2).elements:
            assert pp_to_tl(p).rank == 2 * p.rank

    def test_functorial(self):
        for m, n, k in ((1, 1, 1), (2, 1, 2), (2, 2, 2), (1, 3, 2)):
            for a in enumerate_homset("PP", m, n).elements:
                for b in enumerate_homset("PP", n, k).elements:
                    assert pp_to_tl(compose(a, b)) == compose(pp_to_tl(a), pp_to_tl(b))


class TestTextFormats:
    def test_round_trip_examples(self):
        for p in (ALPHA, BETA, identity(0), identity(3)):
            assert from_text(p.to_text()) == p
            assert from_json(p.to_json()) == p

    @settings(max_examples=60, deadline=None)
    @given(st.integers(0, 5), st.integers(0, 5), st.integers(0, 10**6))
    def test_round_trip_random(self, m, n, seed):
        p = random_partition(random.Random(seed), m, n)
        assert from_text(p.to_text()) == p
        assert from_json(p.to_json()) == p

    def test_bad_text_has_location(self):
        from diagramcat.errors import UsageError

        with pytest.raises(UsageError):
            from_text("2 x | 1,2")
        with pytest.raises(UsageError):
            from_text("2 2 | 1,2 | | -1,-2")
