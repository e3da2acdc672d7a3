"""Exact solvers: hypergraph matching number, rainbow matchings, bounded
diagonals and partial independent transversals.

All solvers are branch-and-bound searches that return the true optimum
together with a witness; every witness is re-checked by an independent
validator before it is returned.  Hitting the node budget raises
BudgetExceededError instead of returning a possibly wrong answer.
"""

from dataclasses import dataclass

from .errors import BudgetExceededError
from .structures import (
    Diagonal,
    Graph,
    Matching,
    family_to_hypergraph,
    graph_from_json,
    graph_to_json,
)

DEFAULT_NODE_BUDGET = 10_000_000


@dataclass(frozen=True)
class SolveResult:
    optimum: int
    witness: object
    nodes_explored: int


@dataclass(frozen=True)
class PartitionedGraph:
    """A graph together with vertex sets V_1..V_m (not necessarily disjoint)."""

    graph: Graph
    parts: tuple = ()

    def __post_init__(self):
        parts = tuple(frozenset(int(v) for v in p) for p in self.parts)
        for p in parts:
            for v in p:
                if not (0 <= v < self.graph.n):
                    raise ValueError(f"part vertex {v} out of range")
        object.__setattr__(self, "parts", parts)


def partitioned_graph_to_json(P):
    return {
        "graph": graph_to_json(P.graph),
        "parts": [sorted(p) for p in P.parts],
    }


def partitioned_graph_from_json(data):
    return PartitionedGraph(
        graph_from_json(data["graph"]),
        tuple(frozenset(p) for p in data["parts"]),
    )


# ---------------------------------------------------------------------------
# Maximum matching in a tripartite hypergraph


def max_matching_size(H, *, target=None, node_budget=DEFAULT_NODE_BUDGET):
    """Exact maximum matching of a tripartite hypergraph.

    Branches on the most constrained uncovered vertex (fewest active
    incident edges, ties by lowest (side, index)); each branch either uses
    one of its edges or gives the vertex up.  The admissible bound is the
    current size plus the smallest per-side count of still-coverable
    vertices.  With `target` set, the search stops as soon as a matching of
    that size is found; the reported optimum is then at least `target`,
    and exact whenever the target was unreachable.
    """
    edges = H.support()
    sizes = H.side_sizes
    blocked = [bytearray(s) for s in sizes]
    nodes = 0
    best = 0
    best_edges = []
    cur = []
    done = False

    def rec():
        nonlocal nodes, best, best_edges, done
        nodes += 1
        if nodes > node_budget:
            raise BudgetExceededError(f"matching search exceeded {node_budget} nodes", nodes=nodes)
        if len(cur) > best:
            best = len(cur)
            best_edges = list(cur)
            if target is not None and best >= target:
                done = True
                return
        active = [
            e for e in edges
            if not (blocked[0][e[0]] or blocked[1][e[1]] or blocked[2][e[2]])
        ]
        if not active:
            return
        avail = [set(), set(), set()]
        for e in active:
            for s in range(3):
                avail[s].add(e[s])
        if len(cur) + min(len(a) for a in avail) <= best:
            return
        counts = {}
        for e in active:
            for s in range(3):
                key = (s, e[s])
                counts[key] = counts.get(key, 0) + 1
        side, v = min(counts, key=lambda k: (counts[k], k))
        branch_edges = [e for e in active if e[side] == v]
        for e in branch_edges:
            for s in range(3):
                blocked[s][e[s]] += 1
            cur.append(e)
            rec()
            cur.pop()
            for s in range(3):
                blocked[s][e[s]] -= 1
            if done:
                return
        blocked[side][v] += 1
        rec()
        blocked[side][v] -= 1

    rec()
    witness = Matching(frozenset(best_edges))
    _validate_hyper_matching(H, witness, best)
    return SolveResult(optimum=best, witness=witness, nodes_explored=nodes)


def _validate_hyper_matching(H, matching, claimed):
    if len(matching) != claimed:
        raise AssertionError("witness size does not match the reported optimum")
    support = set(H.support())
    for e in matching.edges:
        if e not in support:
            raise AssertionError(f"witness edge {e} is not in the hypergraph")
    # Matching() already rejects edges sharing a vertex in any side.


# ---------------------------------------------------------------------------
# Rainbow matchings


def find_rainbow_matching(F, target=None, *, node_budget=DEFAULT_NODE_BUDGET):
    """Largest set of disjoint edges using pairwise distinct family members.

    Reduces to maximum matching of the member-indexed hypergraph: a rainbow
    matching of size t exists iff that hypergraph has a matching of size t.
    The witness is a sorted list of (member index, edge) choices.
    """
    if target is not None and target > len(F.members):
        raise ValueError("target exceeds the number of family members")
    H = family_to_hypergraph(F)
    result = max_matching_size(H, target=target, node_budget=node_budget)
    witness = sorted((c, (a, b)) for a, b, c in result.witness.edges)
    _validate_rainbow(F, witness, result.optimum)
    return SolveResult(optimum=result.optimum, witness=witness, nodes_explored=result.nodes_explored)


def _validate_rainbow(F, witness, claimed):
    if len(witness) != claimed:
        raise AssertionError("rainbow witness size mismatch")
    members = [i for i, _ in witness]
    if len(set(members)) != len(members):
        raise AssertionError("rainbow witness repeats a family member")
    for i, edge in witness:
        if edge not in F.members[i].edges:
            raise AssertionError(f"edge {edge} not in member {i}")
    Matching(frozenset(edge for _, edge in witness))  # disjointness


# ---------------------------------------------------------------------------
# Bounded-multiplicity diagonals


def find_bounded_diagonal(L, bound, *, node_budget=DEFAULT_NODE_BUDGET):
    """Largest partial diagonal whose symbols each appear at most `bound` times.

    The witness is a full Diagonal when the optimum is the order of the
    square, otherwise the best partial cell set; feasibility of a full
    diagonal is exactly `optimum == L.order`.
    """
    if bound < 1:
        raise ValueError("bound must be at least 1")
    n = L.order
    used_col = bytearray(n)
    sym_count = [0] * n
    nodes = 0
    best = 0
    best_cells = []
    cur = []

    def rec(row):
        nonlocal nodes, best, best_cells
        nodes += 1
        if nodes > node_budget:
            raise BudgetExceededError(f"diagonal search exceeded {node_budget} nodes", nodes=nodes)
        if len(cur) > best:
            best = len(cur)
            best_cells = list(cur)
        if row == n or best == n:
            return
        if len(cur) + (n - row) <= best:
            return
        for col in range(n):
            if used_col[col]:
                continue
            sym = L.cells[row][col]
            if sym_count[sym] >= bound:
                continue
            used_col[col] = 1
            sym_count[sym] += 1
            cur.append((row, col))
            rec(row + 1)
            cur.pop()
            sym_count[sym] -= 1
            used_col[col] = 0
            if best == n:
                return
        rec(row + 1)  # leave this row unused

    rec(0)
    if best == n:
        entries = [0] * n
        for row, col in best_cells:
            entries[row] = col
        witness = Diagonal(tuple(entries))
    else:
        witness = tuple(sorted(best_cells))
    _validate_diagonal(L, best_cells, bound, best)
    return SolveResult(optimum=best, witness=witness, nodes_explored=nodes)


def _validate_diagonal(L, cells, bound, claimed):
    if len(cells) != claimed:
        raise AssertionError("diagonal witness size mismatch")
    rows = [r for r, _ in cells]
    cols = [c for _, c in cells]
    if len(set(rows)) != len(rows) or len(set(cols)) != len(cols):
        raise AssertionError("diagonal witness repeats a row or column")
    counts = {}
    for r, c in cells:
        s = L.cells[r][c]
        counts[s] = counts.get(s, 0) + 1
        if counts[s] > bound:
            raise AssertionError("diagonal witness exceeds the symbol bound")


# ---------------------------------------------------------------------------
# Partial independent transversals


def find_independent_transversal(P, deficiency=0, *, node_budget=DEFAULT_NODE_BUDGET):
    """Maximum number of parts an independent set can meet.

    Coverage is monotone under taking supersets, so the optimum is attained
    at a maximal independent set; these are enumerated exactly with a
    pivoting Bron-Kerbosch recursion over the complement graph.  Feasibility
    for a deficiency d means optimum >= (number of parts) - d.
    """
    if deficiency < 0:
        raise ValueError("deficiency must be non-negative")
    if deficiency > len(P.parts):
        raise ValueError("deficiency exceeds the number of parts")
    n = P.graph.n
    full = (1 << n) - 1
    adj = [0] * n
    for u, v in P.graph.edges:
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    comp = [~(adj[v] | (1 << v)) & full for v in range(n)]
    part_masks = []
    for p in P.parts:
        m = 0
        for v in p:
            m |= 1 << v
        part_masks.append(m)

    nodes = 0
    best = -1
    best_set = 0
    m_parts = len(P.parts)

    def coverage(r):
        return sum(1 for pm in part_masks if pm & r)

    def bk(r, p, x):
        nonlocal nodes, best, best_set
        nodes += 1
        if nodes > node_budget:
            raise BudgetExceededError(f"transversal search exceeded {node_budget} nodes", nodes=nodes)
        if p == 0 and x == 0:
            cov = coverage(r)
            if cov > best:
                best = cov
                best_set = r
            return
        pool = p | x
        pivot = None
        pivot_gain = -1
        mm = pool
        while mm:
            b = mm & -mm
            u = b.bit_length() - 1
            mm ^= b
            gain = bin(p & comp[u]).count("1")
            if gain > pivot_gain:
                pivot_gain = gain
                pivot = u
        cand = p & ~comp[pivot]
        while cand:
            b = cand & -cand
            v = b.bit_length() - 1
            cand ^= b
            bk(r | b, p & comp[v], x & comp[v])
            if best == m_parts:
                return
            p &= ~b
            x |= b

    if n == 0:
        best = 0
        best_set = 0
        nodes = 1
    else:
        bk(0, full, 0)
    witness = tuple(v for v in range(n) if best_set >> v & 1)
    _validate_transversal(P, witness, best)
    return SolveResult(optimum=best, witness=witness, nodes_explored=nodes)


def _validate_transversal(P, vertices, claimed):
    chosen = set(vertices)
    for u, v in P.graph.edges:
        if u in chosen and v in chosen:
            raise AssertionError("transversal witness is not independent")
    covered = sum(1 for p in P.parts if chosen & p)
    if covered != claimed:
        raise AssertionError("transversal witness coverage mismatch")
