import random

import pytest

from trimatch import oracle
from trimatch.errors import BudgetExceededError
from trimatch.game import (
    GameState,
    canonical_graph_key,
    delete_edge,
    explode,
    line_graph,
    psi,
    psi_at_least,
    psi_line,
)
from trimatch.structures import BipartiteGraph, Graph, INFINITY
from trimatch.verifier import enumerate_graphs_up_to_iso


def path(n):
    return Graph(n, frozenset((i, i + 1) for i in range(n - 1)))


def cycle(n):
    return Graph(n, frozenset((i, (i + 1) % n) for i in range(n)))


class TestExplode:
    def test_path_center_explodes_everything(self):
        s = GameState.from_graph(path(3))
        after = explode(s, (0, 1))
        assert after.vertices == frozenset()

    def test_k2(self):
        s = GameState.from_graph(path(2))
        assert explode(s, (0, 1)).vertices == frozenset()

    def test_c4_explodes_entirely(self):
        s = GameState.from_graph(cycle(4))
        after = explode(s, (0, 1))
        assert after.vertices == frozenset()

    def test_inactive_edge_rejected(self):
        s = GameState.from_graph(path(3))
        with pytest.raises(ValueError):
            explode(s, (0, 2))

    def test_delete_keeps_vertices(self):
        s = GameState.from_graph(path(2))
        after = delete_edge(s, (0, 1))
        assert after.vertices == frozenset({0, 1})
        assert after.edges == frozenset()


class TestPsi:
    def test_empty_graph(self):
        assert psi(Graph(0)) == 0

    def test_single_vertex_is_infinite(self):
        assert psi(Graph(1)) == INFINITY

    def test_k2_and_short_path(self):
        assert psi(path(2)) == 1
        assert psi(path(3)) == 1

    def test_path_with_three_edges_is_infinite(self):
        # an end edge either isolates the endpoint or strands the far end
        assert psi(path(4)) == INFINITY

    def test_cycles(self):
        assert psi(cycle(4)) == 1
        assert psi(cycle(6)) == 2

    def test_matches_unmemoized_recursion_small(self):
        for n in range(0, 5):
            for G in enumerate_graphs_up_to_iso(n):
                assert psi(G) == oracle.psi_oracle(G)

    def test_minimax_consistency_replay(self):
        # psi equals the best over single moves of min(delete, explode + 1)
        memo = {}
        for n in range(2, 7):
            for G in enumerate_graphs_up_to_iso(n):
                if not G.edges:
                    continue
                s = GameState.from_graph(G)
                replay = max(
                    min(psi(delete_edge(s, e), memo=memo),
                        psi(explode(s, e), memo=memo) + 1)
                    for e in G.edges
                )
                degs = G.degrees()
                expected = INFINITY if 0 in degs else replay
                assert psi(G, memo=memo) == expected

    def test_isomorphism_invariance(self):
        rng = random.Random(4)
        for _ in range(30):
            n = rng.randrange(2, 8)
            edges = frozenset(
                (u, v)
                for u in range(n)
                for v in range(u + 1, n)
                if rng.random() < 0.4
            )
            G = Graph(n, edges)
            perm = list(range(n))
            rng.shuffle(perm)
            H = Graph(n, frozenset((perm[u], perm[v]) for u, v in edges))
            assert psi(G) == psi(H)

    def test_component_additivity(self):
        left = cycle(4)
        shifted = frozenset((u + 4, v + 4) for u, v in cycle(6).edges)
        both = Graph(10, left.edges | shifted)
        assert psi(both) == psi(left) + psi(cycle(6))

    def test_shared_memo_gives_same_values(self):
        memo = {}
        vals = [psi(cycle(6), memo=memo), psi(cycle(4), memo=memo), psi(path(3), memo=memo)]
        assert vals == [psi(cycle(6)), psi(cycle(4)), psi(path(3))]

    def test_memo_cap_reported(self):
        with pytest.raises(BudgetExceededError):
            psi(cycle(8), memo_limit=2)


class TestPsiAtLeast:
    def test_agrees_with_value_exhaustively(self):
        for n in range(0, 6):
            for G in enumerate_graphs_up_to_iso(n):
                v = psi(G)
                for k in range(0, 5):
                    assert psi_at_least(G, k) == (v >= k)

    def test_infinite_cases(self):
        assert psi_at_least(Graph(1), 10)
        assert psi_at_least(path(4), 7)


class TestLineGraph:
    def test_single_edge(self):
        L = line_graph(BipartiteGraph(1, 1, frozenset({(0, 0)})))
        assert L.n == 1 and not L.edges

    def test_two_edge_path(self):
        L = line_graph(BipartiteGraph(2, 1, frozenset({(0, 0), (1, 0)})))
        assert L.n == 2 and L.edges == frozenset({(0, 1)})

    def test_c6_line_graph_is_c6(self):
        host = BipartiteGraph(3, 3, frozenset({(0, 0), (1, 0), (1, 1), (2, 1), (2, 2), (0, 2)}))
        L = line_graph(host)
        assert L.n == 6
        assert sorted(L.degrees()) == [2] * 6
        assert psi(L) == psi(cycle(6))

    def test_perfect_matching_gives_infinity(self):
        host = BipartiteGraph(3, 3, frozenset({(0, 0), (1, 1), (2, 2)}))
        assert psi_line(host) == INFINITY

    def test_lemma_degree_profile_reaches_2(self):
        # left degrees (1, 2, 2) force at least two explosions
        host = BipartiteGraph(
            3, 3, frozenset({(0, 0), (1, 0), (1, 1), (2, 1), (2, 2)})
        )
        assert psi_line(host) >= 2


class TestCanonicalKey:
    def test_iso_graphs_same_key(self):
        rng = random.Random(8)
        for _ in range(50):
            n = rng.randrange(1, 8)
            edges = [
                (u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.5
            ]
            perm = list(range(n))
            rng.shuffle(perm)
            permuted = [(min(perm[u], perm[v]), max(perm[u], perm[v])) for u, v in edges]
            assert canonical_graph_key(n, edges) == canonical_graph_key(n, permuted)

    def test_non_iso_graphs_differ(self):
        a = canonical_graph_key(4, [(0, 1), (1, 2), (2, 3)])
        b = canonical_graph_key(4, [(0, 1), (1, 2), (1, 3)])
        assert a != b

    def test_complete_graphs_fast(self):
        # twin collapsing keeps K_10 linear rather than factorial
        edges = [(u, v) for u in range(10) for v in range(u + 1, 10)]
        key = canonical_graph_key(10, edges)
        assert key[1] == 10
