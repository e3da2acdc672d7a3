import random

import pytest
from hypothesis import given, settings, strategies as st

from trimatch import oracle
from trimatch.constructions import (
    cyclic_latin,
    gen_drisko_extremal,
    gen_fracd_sharp,
    gen_p3_family,
    random_family,
)
from trimatch.errors import BudgetExceededError
from trimatch.solver import (
    PartitionedGraph,
    find_bounded_diagonal,
    find_independent_transversal,
    find_rainbow_matching,
    max_matching_size,
)
from trimatch.structures import (
    Graph,
    LatinSquare,
    Matching,
    TriHypergraph,
    family_to_hypergraph,
    latin_to_hypergraph,
)


def random_hypergraph(rng, max_edges=12):
    sides = tuple(rng.randrange(1, 5) for _ in range(3))
    m = rng.randrange(0, max_edges + 1)
    edges = tuple(
        (rng.randrange(sides[0]), rng.randrange(sides[1]), rng.randrange(sides[2]))
        for _ in range(m)
    )
    return TriHypergraph(sides, edges)


class TestMaxMatching:
    def test_empty(self):
        res = max_matching_size(TriHypergraph((2, 2, 2), ()))
        assert res.optimum == 0
        assert len(res.witness) == 0

    def test_cyclic_latin_3(self):
        res = max_matching_size(latin_to_hypergraph(cyclic_latin(3)))
        assert res.optimum == 3

    def test_fracd_sharp_n3(self):
        res = max_matching_size(gen_fracd_sharp(3))
        assert res.optimum == 2

    def test_witness_is_validated_matching(self):
        H = latin_to_hypergraph(cyclic_latin(4))
        res = max_matching_size(H)
        assert isinstance(res.witness, Matching)
        assert len(res.witness) == res.optimum

    def test_budget_exceeded_is_distinct(self):
        H = latin_to_hypergraph(cyclic_latin(4))
        with pytest.raises(BudgetExceededError):
            max_matching_size(H, node_budget=3)

    def test_deterministic_node_counts(self):
        H = latin_to_hypergraph(cyclic_latin(4))
        a = max_matching_size(H)
        b = max_matching_size(H)
        assert a.nodes_explored == b.nodes_explored

    def test_oracle_equivalence_random(self):
        rng = random.Random(12345)
        for _ in range(300):
            H = random_hypergraph(rng)
            assert max_matching_size(H).optimum == oracle.matching_number_oracle(H)


class TestRainbow:
    def test_drisko_extremal_n3_infeasible(self):
        F = gen_drisko_extremal(3)
        res = find_rainbow_matching(F, target=3)
        assert res.optimum == 2

    def test_random_full_families_feasible(self):
        rng = random.Random(7)
        for _ in range(30):
            F = random_family([3] * 5, rng)
            res = find_rainbow_matching(F, target=3)
            assert res.optimum >= 3

    def test_p3_family_unconstrained_optimum(self):
        res = find_rainbow_matching(gen_p3_family(2))
        assert res.optimum == 3

    def test_target_beyond_members_rejected(self):
        F = gen_drisko_extremal(2)
        with pytest.raises(ValueError):
            find_rainbow_matching(F, target=3)

    def test_witness_edges_come_from_their_members(self):
        F = gen_p3_family(2)
        res = find_rainbow_matching(F)
        for i, edge in res.witness:
            assert edge in F.members[i].edges

    def test_matches_family_hypergraph_optimum(self):
        rng = random.Random(99)
        for _ in range(60):
            sizes = [rng.randrange(0, 3) for _ in range(rng.randrange(1, 5))]
            F = random_family(sizes, rng)
            if sum(sizes) > 10:
                continue
            via_hyper = max_matching_size(family_to_hypergraph(F)).optimum
            assert find_rainbow_matching(F).optimum == via_hyper
            assert via_hyper == oracle.rainbow_oracle(F)


class TestDiagonal:
    def test_cyclic_4_bound_1_infeasible(self):
        res = find_bounded_diagonal(cyclic_latin(4), 1)
        assert res.optimum == 3  # best partial transversal of Z_4

    def test_cyclic_4_bound_2_feasible(self):
        res = find_bounded_diagonal(cyclic_latin(4), 2)
        assert res.optimum == 4
        assert res.witness.symbol_counts(cyclic_latin(4)).most_common(1)[0][1] <= 2

    def test_bound_n_always_feasible(self):
        for n in (1, 2, 3, 4):
            L = cyclic_latin(n)
            assert find_bounded_diagonal(L, n).optimum == n

    def test_oracle_agreement(self):
        rng = random.Random(3)
        for _ in range(40):
            n = rng.randrange(1, 5)
            cells = tuple(tuple(rng.randrange(n) for _ in range(n)) for _ in range(n))
            L = LatinSquare(n, cells)
            for bound in (1, 2):
                assert find_bounded_diagonal(L, bound).optimum == oracle.diagonal_oracle(L, bound)

    def test_bound_below_1_rejected(self):
        with pytest.raises(ValueError):
            find_bounded_diagonal(cyclic_latin(2), 0)


class TestTransversal:
    def test_edgeless_graph_full_transversal(self):
        P = PartitionedGraph(Graph(4), (frozenset({0}), frozenset({1, 2}), frozenset({3})))
        res = find_independent_transversal(P)
        assert res.optimum == 3

    def test_two_adjacent_singletons(self):
        P = PartitionedGraph(
            Graph(2, frozenset({(0, 1)})), (frozenset({0}), frozenset({1}))
        )
        res = find_independent_transversal(P)
        assert res.optimum == 1

    @pytest.mark.parametrize("side", [0, 1])
    def test_consistency_with_rainbow_on_drisko(self, side):
        # conflict graph of the member-indexed hypergraph, hyperedges
        # partitioned by one host side; max covered parts = rainbow optimum
        F = gen_drisko_extremal(3)
        H = family_to_hypergraph(F)
        edges = H.support()
        n = len(edges)
        conflicts = set()
        for i in range(n):
            for j in range(i + 1, n):
                if any(edges[i][s] == edges[j][s] for s in range(3)):
                    conflicts.add((i, j))
        parts = {}
        for i, e in enumerate(edges):
            parts.setdefault(e[side], set()).add(i)
        P = PartitionedGraph(
            Graph(n, frozenset(conflicts)),
            tuple(frozenset(v) for _, v in sorted(parts.items())),
        )
        res = find_independent_transversal(P)
        assert res.optimum == find_rainbow_matching(F).optimum
        assert res.optimum == oracle.transversal_oracle(P)

    def test_oracle_agreement_random(self):
        from trimatch.constructions import random_partition_system

        rng = random.Random(21)
        for _ in range(60):
            P = random_partition_system(rng)
            assert find_independent_transversal(P).optimum == oracle.transversal_oracle(P)

    def test_deficiency_bounds_checked(self):
        P = PartitionedGraph(Graph(1), (frozenset({0}),))
        with pytest.raises(ValueError):
            find_independent_transversal(P, deficiency=2)


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=0, max_value=10**9))
def test_nu_matches_subset_enumeration(seed):
    rng = random.Random(seed)
    H = random_hypergraph(rng, max_edges=10)
    assert max_matching_size(H).optimum == oracle.matching_number_oracle(H)
