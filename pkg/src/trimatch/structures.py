"""Core combinatorial structures and their JSON wire formats.

Sides of a tripartite hypergraph are always ordered (A, B, C).  For
hypergraphs built from Latin squares the convention is (symbols, columns,
rows); for hypergraphs built from matching families it is (left host
vertices, right host vertices, family members).  All indices are 0-based.

Every type here is immutable after construction and safe to share across
parallel workers.
"""

from collections import Counter
from dataclasses import dataclass

INFINITY = float("inf")

SIDES = ("A", "B", "C")
SIDE_PAIRS = (("A", "B"), ("A", "C"), ("B", "C"))


def side_index(side):
    if side not in SIDES:
        raise ValueError(f"unknown side {side!r}, expected one of {SIDES}")
    return SIDES.index(side)


@dataclass(frozen=True)
class BipartiteGraph:
    """Simple bipartite graph; edges are (left, right) index pairs."""

    left_size: int
    right_size: int
    edges: frozenset = frozenset()

    def __post_init__(self):
        if self.left_size < 0 or self.right_size < 0:
            raise ValueError("side sizes must be non-negative")
        edges = frozenset((int(u), int(w)) for u, w in self.edges)
        for u, w in edges:
            if not (0 <= u < self.left_size and 0 <= w < self.right_size):
                raise ValueError(f"edge ({u}, {w}) out of bounds")
        object.__setattr__(self, "edges", edges)

    def sorted_edges(self):
        return sorted(self.edges)

    def left_degrees(self):
        degs = [0] * self.left_size
        for u, _ in self.edges:
            degs[u] += 1
        return degs

    def right_degrees(self):
        degs = [0] * self.right_size
        for _, w in self.edges:
            degs[w] += 1
        return degs


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 0..n-1 (not necessarily bipartite)."""

    n: int
    edges: frozenset = frozenset()

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        norm = set()
        for u, v in self.edges:
            u, v = int(u), int(v)
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u}, {v}) out of bounds")
            norm.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", frozenset(norm))

    def sorted_edges(self):
        return sorted(self.edges)

    def adjacency(self):
        adj = {v: set() for v in range(self.n)}
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def degrees(self):
        degs = [0] * self.n
        for u, v in self.edges:
            degs[u] += 1
            degs[v] += 1
        return degs


@dataclass(frozen=True)
class TriHypergraph:
    """3-partite 3-uniform hypergraph; the edge list is a multiset."""

    side_sizes: tuple
    edges: tuple = ()

    def __post_init__(self):
        sizes = tuple(int(s) for s in self.side_sizes)
        if len(sizes) != 3 or any(s < 0 for s in sizes):
            raise ValueError("side_sizes must be three non-negative counts")
        edges = tuple(sorted(tuple(int(x) for x in e) for e in self.edges))
        for e in edges:
            if len(e) != 3:
                raise ValueError(f"edge {e} is not a triple")
            for x, bound in zip(e, sizes):
                if not (0 <= x < bound):
                    raise ValueError(f"edge {e} out of bounds for sides {sizes}")
        object.__setattr__(self, "side_sizes", sizes)
        object.__setattr__(self, "edges", edges)

    @property
    def n_edges(self):
        return len(self.edges)

    def multiplicities(self):
        return Counter(self.edges)

    def is_simple(self):
        """True iff no edge repeats."""
        return all(m == 1 for m in self.multiplicities().values())

    def support(self):
        """Distinct edges, sorted."""
        return sorted(set(self.edges))


@dataclass(frozen=True)
class Matching:
    """Set of pairwise-disjoint edges (pairs or triples, uniform arity)."""

    edges: frozenset = frozenset()

    def __post_init__(self):
        edges = frozenset(tuple(int(x) for x in e) for e in self.edges)
        arities = {len(e) for e in edges}
        if len(arities) > 1:
            raise ValueError("mixed edge arities in matching")
        if edges:
            arity = arities.pop()
            for pos in range(arity):
                seen = [e[pos] for e in edges]
                if len(seen) != len(set(seen)):
                    raise ValueError("edges share a vertex in one side")
        object.__setattr__(self, "edges", edges)

    def __len__(self):
        return len(self.edges)

    def sorted_edges(self):
        return sorted(self.edges)


@dataclass(frozen=True)
class MatchingFamily:
    """Ordered family F_1..F_m of matchings in a bipartite host graph.

    Members may repeat; the family is a multiset.
    """

    host: BipartiteGraph
    members: tuple = ()

    def __post_init__(self):
        members = tuple(
            m if isinstance(m, Matching) else Matching(frozenset(m))
            for m in self.members
        )
        for i, member in enumerate(members):
            for e in member.edges:
                if len(e) != 2:
                    raise ValueError("family members must consist of pairs")
                if e not in self.host.edges:
                    raise ValueError(f"member {i} uses edge {e} outside the host")
        object.__setattr__(self, "members", members)

    def __len__(self):
        return len(self.members)

    def sizes(self):
        return [len(m) for m in self.members]


@dataclass(frozen=True)
class LatinSquare:
    """n x n grid of symbol indices in [0, n)."""

    order: int
    cells: tuple = ()

    def __post_init__(self):
        n = self.order
        if n < 0:
            raise ValueError("order must be non-negative")
        cells = tuple(tuple(int(x) for x in row) for row in self.cells)
        if len(cells) != n or any(len(row) != n for row in cells):
            raise ValueError("cells must form an n x n grid")
        for row in cells:
            for x in row:
                if not (0 <= x < n):
                    raise ValueError(f"symbol {x} out of range [0, {n})")
        object.__setattr__(self, "cells", cells)

    def is_row_latin(self):
        """No symbol twice in any row."""
        return all(len(set(row)) == self.order for row in self.cells)

    def is_column_latin(self):
        """No symbol twice in any column."""
        n = self.order
        return all(len({self.cells[i][j] for i in range(n)}) == n for j in range(n))

    def is_latin(self):
        return self.is_row_latin() and self.is_column_latin()


@dataclass(frozen=True)
class Diagonal:
    """Permutation sigma of [0, n), read as the cell set {(i, sigma(i))}."""

    entries: tuple

    def __post_init__(self):
        entries = tuple(int(x) for x in self.entries)
        n = len(entries)
        if sorted(entries) != list(range(n)):
            raise ValueError("entries must be a permutation of 0..n-1")
        object.__setattr__(self, "entries", entries)

    @property
    def order(self):
        return len(self.entries)

    def cells(self):
        return frozenset((i, c) for i, c in enumerate(self.entries))

    def symbol_counts(self, square):
        if square.order != self.order:
            raise ValueError("diagonal and square orders differ")
        return Counter(square.cells[i][c] for i, c in enumerate(self.entries))


# ---------------------------------------------------------------------------
# Operations


def degree(H, side, v):
    """Number of edges of H (with multiplicity) containing vertex v of a side."""
    pos = side_index(side)
    if not (0 <= v < H.side_sizes[pos]):
        raise IndexError(f"vertex {v} out of range for side {side}")
    return sum(1 for e in H.edges if e[pos] == v)


def min_degree(H, side):
    """Smallest degree over a side; 0 for an empty side."""
    pos = side_index(side)
    if H.side_sizes[pos] == 0:
        return 0
    counts = Counter(e[pos] for e in H.edges)
    return min(counts.get(v, 0) for v in range(H.side_sizes[pos]))


def max_degree(H, side):
    """Largest degree over a side; 0 for an empty side."""
    pos = side_index(side)
    counts = Counter(e[pos] for e in H.edges)
    return max(counts.values(), default=0)


def is_p_simple(H, pair, p):
    """True iff no cross-pair of the two given sides lies in more than p edges."""
    if p < 1:
        raise ValueError("p must be at least 1")
    pair = tuple(pair)
    if pair not in SIDE_PAIRS:
        raise ValueError(f"pair must be one of {SIDE_PAIRS}")
    i, j = side_index(pair[0]), side_index(pair[1])
    counts = Counter((e[i], e[j]) for e in H.edges)
    return all(m <= p for m in counts.values())


def is_regular(H, d):
    """True iff every vertex of every side has degree exactly d."""
    for side in SIDES:
        pos = side_index(side)
        counts = Counter(e[pos] for e in H.edges)
        if any(counts.get(v, 0) != d for v in range(H.side_sizes[pos])):
            return False
    return True


def latin_to_hypergraph(L):
    """One edge (symbol, column, row) per cell of the grid.

    Works for arbitrary grids; the (B, C) pair is always simple because a
    cell holds one symbol.
    """
    n = L.order
    edges = [(L.cells[r][c], c, r) for r in range(n) for c in range(n)]
    return TriHypergraph((n, n, n), tuple(edges))


def family_to_hypergraph(F):
    """Third side indexes the family members; edge (u, w, i) for (u, w) in F_i."""
    edges = []
    for i, member in enumerate(F.members):
        for u, w in member.edges:
            edges.append((u, w, i))
    return TriHypergraph(
        (F.host.left_size, F.host.right_size, len(F.members)), tuple(edges)
    )


def c_fibers(H):
    """Edge pairs grouped by the C coordinate; inverse view of family_to_hypergraph."""
    fibers = [set() for _ in range(H.side_sizes[2])]
    for a, b, c in H.edges:
        fibers[c].add((a, b))
    return fibers


# ---------------------------------------------------------------------------
# JSON wire formats (the contract for every CLI command)


def bipartite_graph_to_json(G):
    return {"left": G.left_size, "right": G.right_size, "edges": [list(e) for e in G.sorted_edges()]}


def bipartite_graph_from_json(data):
    return BipartiteGraph(data["left"], data["right"], frozenset(tuple(e) for e in data["edges"]))


def graph_to_json(G):
    return {"vertices": G.n, "edges": [list(e) for e in G.sorted_edges()]}


def graph_from_json(data):
    return Graph(data["vertices"], frozenset(tuple(e) for e in data["edges"]))


def hypergraph_to_json(H):
    return {"sides": list(H.side_sizes), "edges": [list(e) for e in H.edges]}


def hypergraph_from_json(data):
    return TriHypergraph(tuple(data["sides"]), tuple(tuple(e) for e in data["edges"]))


def family_to_json(F):
    return {
        "graph": bipartite_graph_to_json(F.host),
        "members": [[list(e) for e in m.sorted_edges()] for m in F.members],
    }


def family_from_json(data):
    host = bipartite_graph_from_json(data["graph"])
    members = tuple(Matching(frozenset(tuple(e) for e in m)) for m in data["members"])
    return MatchingFamily(host, members)


def square_to_json(L):
    return {"n": L.order, "cells": [list(row) for row in L.cells]}


def square_from_json(data):
    return LatinSquare(data["n"], tuple(tuple(row) for row in data["cells"]))
