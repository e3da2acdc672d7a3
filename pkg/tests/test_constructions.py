import random

import pytest

from trimatch import constructions as cons
from trimatch import oracle
from trimatch.errors import ConstructionError
from trimatch.solver import find_rainbow_matching, max_matching_size
from trimatch.structures import (
    degree,
    family_to_hypergraph,
    is_p_simple,
    is_regular,
    latin_to_hypergraph,
)


class TestDrisko:
    def test_member_count_and_sizes(self):
        for n in (2, 3, 4):
            F = cons.gen_drisko_extremal(n)
            assert len(F.members) == 2 * n - 2
            assert all(len(m) == n for m in F.members)

    def test_no_rainbow_of_size_n(self):
        for n in (2, 3):
            F = cons.gen_drisko_extremal(n)
            assert find_rainbow_matching(F, target=n).optimum == n - 1

    def test_sharpness_critical(self):
        # one extra odd matching tips the family over the threshold
        for n in (2, 3):
            F = cons.gen_drisko_extremal(n)
            extra = cons.cycle_odd_matching(n)
            from trimatch.structures import MatchingFamily

            F2 = MatchingFamily(F.host, F.members + (extra,))
            assert find_rainbow_matching(F2, target=n).optimum >= n

    def test_n_below_2_rejected(self):
        with pytest.raises(ValueError):
            cons.gen_drisko_extremal(1)


class TestAccommodating:
    def test_n2_zero_prefix(self):
        F = cons.gen_accommodating_counterexample((0, 1, 2), 2)
        assert oracle.rainbow_oracle(F) < 2
        assert all(len(m) >= a for m, a in zip(F.members, (0, 1, 2)))

    def test_n3_example(self):
        F = cons.gen_accommodating_counterexample((1, 1, 3, 3, 3), 3)
        assert oracle.rainbow_oracle(F) < 3

    def test_sizes_follow_the_formula(self):
        a = (0, 1, 1, 2, 3)
        F = cons.gen_accommodating_counterexample(a, 3)
        assert [len(m) for m in F.members[:3]] == [min(3, x) for x in a[:3]]

    def test_accommodating_shaped_rejected(self):
        with pytest.raises(ConstructionError):
            cons.gen_accommodating_counterexample((1, 2, 2), 2)

    def test_malformed_rejected(self):
        with pytest.raises(ValueError):
            cons.gen_accommodating_counterexample((2, 1, 0), 2)
        with pytest.raises(ValueError):
            cons.gen_accommodating_counterexample((0, 1), 2)


class TestP3Family:
    @pytest.mark.parametrize("k", [1, 2, 3, 4])
    def test_sizes_at_least_index(self, k):
        F = cons.gen_p3_family(k)
        assert len(F.members) == 2 * k
        for i, m in enumerate(F.members, start=1):
            assert len(m) >= i or i <= k  # members 1..k all have size k

    @pytest.mark.parametrize("k,expected", [(1, 1), (2, 3), (3, 4), (4, 6)])
    def test_rainbow_optimum_is_floor_3k_over_2(self, k, expected):
        F = cons.gen_p3_family(k)
        assert find_rainbow_matching(F).optimum == expected == 3 * k // 2


class TestFracdSharp:
    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_regular_simple(self, n):
        H = cons.gen_fracd_sharp(n)
        assert H.side_sizes == (n, n, n)
        assert H.is_simple()
        assert is_regular(H, 2 * n - 2)

    @pytest.mark.parametrize("n", [2, 3])
    def test_nu_is_n_minus_1(self, n):
        H = cons.gen_fracd_sharp(n)
        assert max_matching_size(H).optimum == n - 1
        assert oracle.matching_number_oracle(H) == n - 1

    def test_special_stars_have_full_degree(self):
        H = cons.gen_fracd_sharp(3)
        assert degree(H, "A", 0) == 4
        assert degree(H, "B", 0) == 4
        assert degree(H, "C", 0) == 4


class TestDoubleSideA:
    def test_edge_count_doubles(self):
        H = latin_to_hypergraph(cons.cyclic_latin(3))
        H2 = cons.double_side_A(H)
        assert H2.n_edges == 2 * H.n_edges
        assert H2.side_sizes == (6, 3, 3)

    def test_single_edge_gives_parallel_bc_pair(self):
        from trimatch.structures import TriHypergraph

        H = TriHypergraph((1, 1, 1), ((0, 0, 0),))
        H2 = cons.double_side_A(H)
        assert H2.edges == ((0, 0, 0), (1, 0, 0))
        assert not is_p_simple(H2, ("B", "C"), 1)
        assert is_p_simple(H2, ("B", "C"), 2)

    def test_doubled_row_latin_meets_almost_drisko_hypotheses(self):
        rng = random.Random(2)
        for L in cons.gen_row_latin(3, "random", seed=5, count=5):
            H2 = cons.double_side_A(latin_to_hypergraph(L))
            n = 3
            assert H2.side_sizes[0] >= 2 * n - 1
            assert all(degree(H2, "A", a) == n for a in range(H2.side_sizes[0]))
            assert is_p_simple(H2, ("A", "C"), 1)
            assert is_p_simple(H2, ("B", "C"), 2)
            assert max_matching_size(H2).optimum == n


class TestLatinStreams:
    def test_cyclic_definition(self):
        L = cons.cyclic_latin(3)
        assert all(L.cells[i][j] == (i + j) % 3 for i in range(3) for j in range(3))

    def test_exhaustive_counts(self):
        assert sum(1 for _ in cons.gen_latin(1, "exhaustive")) == 1
        assert sum(1 for _ in cons.gen_latin(2, "exhaustive")) == 2
        assert sum(1 for _ in cons.gen_latin(3, "exhaustive")) == 12
        assert sum(1 for _ in cons.gen_latin(4, "exhaustive")) == 576

    def test_exhaustive_emits_latin_squares_without_repeats(self):
        seen = set()
        for L in cons.gen_latin(3, "exhaustive"):
            assert L.is_latin()
            assert L.cells not in seen
            seen.add(L.cells)

    def test_exhaustive_lex_order(self):
        squares = [L.cells for L in cons.gen_latin(3, "exhaustive")]
        flat = [tuple(x for row in c for x in row) for c in squares]
        assert flat == sorted(flat)

    def test_random_is_seed_deterministic(self):
        a = [L.cells for L in cons.gen_latin(4, "random", seed=11, count=5)]
        b = [L.cells for L in cons.gen_latin(4, "random", seed=11, count=5)]
        assert a == b
        assert all(cons.cyclic_latin(4).is_latin() for _ in a)

    def test_exhaustive_cap(self):
        with pytest.raises(ValueError):
            next(cons.gen_latin(6, "exhaustive"))

    def test_random_requires_seed(self):
        with pytest.raises(ValueError):
            next(cons.gen_latin(3, "random"))


class TestRowLatinStreams:
    def test_normalized_counts(self):
        assert sum(1 for _ in cons.gen_row_latin(2, "exhaustive")) == 2
        assert sum(1 for _ in cons.gen_row_latin(3, "exhaustive")) == 36

    def test_rows_are_permutations_columns_free(self):
        found_column_clash = False
        for L in cons.gen_row_latin(3, "exhaustive"):
            assert L.is_row_latin()
            if not L.is_column_latin():
                found_column_clash = True
        assert found_column_clash

    def test_random_deterministic(self):
        a = [L.cells for L in cons.gen_row_latin(3, "random", seed=4, count=4)]
        b = [L.cells for L in cons.gen_row_latin(3, "random", seed=4, count=4)]
        assert a == b


class TestTheorem19:
    @pytest.mark.parametrize("n", [2, 3])
    def test_hypothesis_predicates(self, n):
        for seed in range(20):
            H = cons.gen_theorem19_instance(n, seed)
            assert H.side_sizes == (2 * n - 1, n, n)
            assert all(degree(H, "A", a) == n for a in range(2 * n - 1))
            assert is_p_simple(H, ("A", "C"), 1)
            assert is_p_simple(H, ("B", "C"), 2)

    def test_nu_reaches_n(self):
        for seed in range(20):
            H = cons.gen_theorem19_instance(3, seed)
            assert max_matching_size(H, target=3).optimum >= 3

    def test_seed_determinism(self):
        assert cons.gen_theorem19_instance(3, 9) == cons.gen_theorem19_instance(3, 9)


class TestRandomGenerators:
    def test_random_family_respects_profile(self):
        rng = random.Random(6)
        F = cons.random_family([1, 2, 3, 3, 3], rng)
        assert F.sizes() == [1, 2, 3, 3, 3]

    def test_family_generation_deterministic(self):
        a = cons.random_family([2, 2], random.Random(3))
        b = cons.random_family([2, 2], random.Random(3))
        assert a == b

    def test_regular_simple_generator(self):
        rng = random.Random(14)
        H = cons.random_regular_simple(3, 3, rng)
        assert H.is_simple() and is_regular(H, 3)

    def test_stein_generator(self):
        rng = random.Random(15)
        H = cons.random_stein_instance(3, rng)
        assert is_regular(H, 3)
        assert is_p_simple(H, ("A", "B"), 1)

    def test_conj_drisko_generator(self):
        from trimatch.structures import max_degree

        rng = random.Random(16)
        H = cons.random_conj_drisko_instance(2, rng)
        assert H.side_sizes[0] == 3
        assert all(degree(H, "A", a) == 2 for a in range(3))
        assert max_degree(H, "B") <= 3 and max_degree(H, "C") <= 3

    def test_bounded_tri_generator(self):
        from trimatch.structures import max_degree, min_degree

        rng = random.Random(18)
        H = cons.random_bounded_tri(rng, 3, 6, 5, 3)
        assert H.is_simple()
        assert min_degree(H, "A") == 5
        assert max_degree(H, "B") <= 3 and max_degree(H, "C") <= 3

    def test_lemma31_graph_meets_profile(self):
        from trimatch.verifier import lemma31_hypothesis_holds

        rng = random.Random(19)
        for ell in (2, 3):
            for _ in range(20):
                G = cons.random_lemma31_graph(ell, rng, 12)
                assert len(G.edges) <= 12
                assert lemma31_hypothesis_holds(G, ell)
