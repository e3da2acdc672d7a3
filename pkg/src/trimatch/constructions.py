"""Generators for extremal constructions and random hypothesis-satisfying
instances.

Deterministic generators are pure functions of their parameters; random
generators are pure functions of (parameters, seed).  Exhaustive streams
emit in lexicographic cell order.  Every generator's output is validated
against the hypothesis it targets by the tests, not assumed.
"""

import itertools
import random

from .errors import ConstructionError
from .structures import (
    BipartiteGraph,
    Graph,
    LatinSquare,
    Matching,
    MatchingFamily,
    TriHypergraph,
)

EXHAUSTIVE_LATIN_CAP = 5
EXHAUSTIVE_ROW_LATIN_CAP = 4


def _cycle_host(n):
    """C_{2n} as a bipartite graph: left i joins right i and right i-1."""
    edges = set()
    for i in range(n):
        edges.add((i, i))
        edges.add(((i + 1) % n, i))
    return BipartiteGraph(n, n, frozenset(edges))


def cycle_even_matching(n):
    return Matching(frozenset((i, i) for i in range(n)))


def cycle_odd_matching(n):
    return Matching(frozenset(((i + 1) % n, i) for i in range(n)))


def gen_drisko_extremal(n):
    """2n-2 matchings of size n in C_{2n} with no rainbow matching of size n.

    The family repeats the even-edge matching and the odd-edge matching of
    the cycle n-1 times each.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    host = _cycle_host(n)
    even = cycle_even_matching(n)
    odd = cycle_odd_matching(n)
    members = tuple([even] * (n - 1) + [odd] * (n - 1))
    return MatchingFamily(host, members)


def gen_accommodating_counterexample(a, n):
    """A family with |F_i| >= a_i and no rainbow matching of size n.

    Requires an ascending sequence of length 2n-1 with entries in [0, n]
    failing the accommodating threshold, i.e. a_k <= k-1 for some k <= n.
    The first n members are nested prefixes of the odd edges of C_{2n}, the
    rest are copies of the even-edge matching.
    """
    a = tuple(int(x) for x in a)
    if len(a) != 2 * n - 1:
        raise ValueError("sequence must have length 2n-1")
    if list(a) != sorted(a):
        raise ValueError("sequence must be ascending")
    if any(x < 0 or x > n for x in a):
        raise ValueError("entries must lie in [0, n]")
    if not any(a[k - 1] <= k - 1 for k in range(1, n + 1)):
        raise ConstructionError(
            "sequence is accommodating-shaped; no counterexample exists"
        )
    host = _cycle_host(n)
    even = cycle_even_matching(n)
    odd_edges = sorted(cycle_odd_matching(n).edges)
    members = []
    for i in range(1, n + 1):
        members.append(Matching(frozenset(odd_edges[: min(n, a[i - 1])])))
    for _ in range(n + 1, 2 * n):
        members.append(even)
    return MatchingFamily(host, tuple(members))


def gen_p3_family(k):
    """2k matchings over 2k disjoint 3-edge paths; |F_i| >= i for all i.

    Member i <= k is the set of all middle edges; beyond that, middle edges
    are swapped pairwise for outer-edge pairs.  The largest rainbow matching
    has size floor(3k/2).
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    copies = 2 * k
    edges = set()
    outer = []
    middle = []
    for j in range(copies):
        l0, l1 = 2 * j, 2 * j + 1
        r0, r1 = 2 * j, 2 * j + 1
        edges.update({(l0, r0), (l1, r0), (l1, r1)})
        outer.append(frozenset({(l0, r0), (l1, r1)}))
        middle.append((l1, r0))
    host = BipartiteGraph(2 * copies, 2 * copies, frozenset(edges))
    members = []
    base = frozenset(middle[:k])
    for i in range(1, k + 1):
        members.append(Matching(base))
    for i in range(k + 1, copies + 1):
        chosen = set()
        for j in range(i - k):
            chosen |= outer[j]
        for j in range(i - k, k):
            chosen.add(middle[j])
        members.append(Matching(frozenset(chosen)))
    return MatchingFamily(host, tuple(members))


def double_side_A(H):
    """Append a duplicate copy of side A; every edge gains a shifted twin."""
    a, b, c = H.side_sizes
    doubled = list(H.edges) + [(x + a, y, z) for x, y, z in H.edges]
    return TriHypergraph((2 * a, b, c), tuple(doubled))


def gen_fracd_sharp(n, *, node_budget=2_000_000):
    """(2n-2)-regular simple hypergraph on sides of size n with nu = n-1.

    Three forced stars pin one vertex per side so that no single matching
    covers all three; the rest of the grid is completed to regularity by an
    exact-cover style search over the residual triples.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    forced = []
    for x in range(1, n):
        forced.append((0, 0, x))
        forced.append((0, x, 0))
        forced.append((x, 0, 0))
    residual_degree = 2 * n - 3
    others = list(range(1, n))
    candidates = [
        (x, y, z) for x in others for y in others for z in others
    ]
    need = {}
    for side in range(3):
        for v in others:
            need[(side, v)] = residual_degree

    chosen = []
    nodes = 0

    def remaining_capacity(idx):
        cap = {key: 0 for key in need}
        for t in candidates[idx:]:
            for side in range(3):
                cap[(side, t[side])] += 1
        return cap

    def rec(idx):
        nonlocal nodes
        nodes += 1
        if nodes > node_budget:
            raise ConstructionError("completion search exhausted its budget")
        if all(v == 0 for v in need.values()):
            return True
        if idx == len(candidates):
            return False
        cap = remaining_capacity(idx)
        for key, remaining in need.items():
            if remaining > cap[key]:
                return False
        t = candidates[idx]
        keys = [(side, t[side]) for side in range(3)]
        if all(need[k] > 0 for k in keys):
            for k in keys:
                need[k] -= 1
            chosen.append(t)
            if rec(idx + 1):
                return True
            chosen.pop()
            for k in keys:
                need[k] += 1
        return rec(idx + 1)

    if not rec(0):
        raise ConstructionError(
            f"no completion to a {2 * n - 2}-regular hypergraph was found"
        )
    return TriHypergraph((n, n, n), tuple(forced + chosen))


# ---------------------------------------------------------------------------
# Latin square generators


def cyclic_latin(n):
    return LatinSquare(n, tuple(tuple((i + j) % n for j in range(n)) for i in range(n)))


def gen_latin(n, mode, seed=None, count=None):
    """Stream of Latin squares: cyclic, seeded random, or exhaustive.

    The exhaustive stream yields every Latin square of order n exactly once,
    in lexicographic cell order; it is capped at order 5.
    """
    if mode == "cyclic":
        yield cyclic_latin(n)
        return
    if mode == "random":
        if seed is None:
            raise ValueError("random mode requires a seed")
        rng = random.Random(seed)
        emitted = 0
        while count is None or emitted < count:
            yield _random_latin(n, rng)
            emitted += 1
            if count is None:
                return
        return
    if mode == "exhaustive":
        if n > EXHAUSTIVE_LATIN_CAP:
            raise ValueError(f"exhaustive stream capped at order {EXHAUSTIVE_LATIN_CAP}")
        emitted = 0
        for square in _exhaustive_latin(n):
            yield square
            emitted += 1
            if count is not None and emitted >= count:
                return
        return
    raise ValueError(f"unknown mode {mode!r}")


def _exhaustive_latin(n):
    cells = [[-1] * n for _ in range(n)]
    row_used = [set() for _ in range(n)]
    col_used = [set() for _ in range(n)]

    def rec(pos):
        if pos == n * n:
            yield LatinSquare(n, tuple(tuple(row) for row in cells))
            return
        r, c = divmod(pos, n)
        for s in range(n):
            if s in row_used[r] or s in col_used[c]:
                continue
            cells[r][c] = s
            row_used[r].add(s)
            col_used[c].add(s)
            yield from rec(pos + 1)
            row_used[r].remove(s)
            col_used[c].remove(s)
            cells[r][c] = -1

    yield from rec(0)


def _random_latin(n, rng):
    """Backtracking fill with per-cell candidate order drawn from the rng."""
    cells = [[-1] * n for _ in range(n)]
    row_used = [set() for _ in range(n)]
    col_used = [set() for _ in range(n)]

    def rec(pos):
        if pos == n * n:
            return True
        r, c = divmod(pos, n)
        options = [s for s in range(n) if s not in row_used[r] and s not in col_used[c]]
        rng.shuffle(options)
        for s in options:
            cells[r][c] = s
            row_used[r].add(s)
            col_used[c].add(s)
            if rec(pos + 1):
                return True
            row_used[r].remove(s)
            col_used[c].remove(s)
            cells[r][c] = -1
        return False

    if not rec(0):
        raise ConstructionError("Latin square backtracking failed")
    return LatinSquare(n, tuple(tuple(row) for row in cells))


def gen_row_latin(n, mode, seed=None, count=None, normalized=True):
    """Stream of row-Latin squares (each row an independent permutation).

    The exhaustive stream fixes the first row to the identity when
    `normalized` is set and is capped at order 4.
    """
    if mode == "random":
        if seed is None:
            raise ValueError("random mode requires a seed")
        rng = random.Random(seed)
        emitted = 0
        while count is None or emitted < count:
            rows = []
            for _ in range(n):
                row = list(range(n))
                rng.shuffle(row)
                rows.append(tuple(row))
            yield LatinSquare(n, tuple(rows))
            emitted += 1
            if count is None:
                return
        return
    if mode == "exhaustive":
        if n > EXHAUSTIVE_ROW_LATIN_CAP:
            raise ValueError(
                f"exhaustive stream capped at order {EXHAUSTIVE_ROW_LATIN_CAP}"
            )
        perms = list(itertools.permutations(range(n)))
        first_rows = [tuple(range(n))] if normalized and n > 0 else perms
        if n == 0:
            yield LatinSquare(0, ())
            return
        emitted = 0
        for first in first_rows:
            for rest in itertools.product(perms, repeat=n - 1):
                yield LatinSquare(n, (first,) + rest)
                emitted += 1
                if count is not None and emitted >= count:
                    return
        return
    raise ValueError(f"unknown mode {mode!r}")


# ---------------------------------------------------------------------------
# Random hypothesis-satisfying instances


def gen_theorem19_instance(n, seed, max_repair_passes=1000):
    """Random hypergraph with |A| = 2n-1, |B| = |C| = n, deg(a) = n.

    Each A-vertex contributes one edge per C-vertex (a random function from
    rows to columns), which makes (A, C) simple; the per-column assignments
    are then repaired until every (b, c) pair is used at most twice.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    rng = random.Random(seed)
    a_size = 2 * n - 1
    edges = []
    for c in range(n):
        assign = [rng.randrange(n) for _ in range(a_size)]
        passes = 0
        while True:
            counts = [0] * n
            for b in assign:
                counts[b] += 1
            overloaded = [b for b in range(n) if counts[b] > 2]
            if not overloaded:
                break
            passes += 1
            if passes > max_repair_passes:
                raise ConstructionError("degree repair did not converge; re-seed")
            b_bad = overloaded[0]
            movable = [i for i, b in enumerate(assign) if b == b_bad]
            under = [b for b in range(n) if counts[b] < 2]
            assign[rng.choice(movable)] = rng.choice(under)
        for a, b in enumerate(assign):
            edges.append((a, b, c))
    return TriHypergraph((a_size, n, n), tuple(edges))


def random_matching(left_size, right_size, size, rng):
    """Uniform random partial pairing of `size` left and right vertices."""
    if size > min(left_size, right_size):
        raise ValueError("matching size exceeds a side")
    lefts = rng.sample(range(left_size), size)
    rights = rng.sample(range(right_size), size)
    return Matching(frozenset(zip(lefts, rights)))


def random_family(sizes, rng, host_size=None):
    """Random matchings of the given sizes; the host is their union."""
    m = max(sizes, default=0)
    side = host_size if host_size is not None else m + rng.randrange(0, m + 1)
    members = [random_matching(side, side, s, rng) for s in sizes]
    edges = frozenset(e for mm in members for e in mm.edges)
    host = BipartiteGraph(side, side, edges)
    return MatchingFamily(host, tuple(members))


def drisko_profile(n):
    """Member sizes (min(i, n) for i = 1..2n-1); the tight threshold profile."""
    return [min(i, n) for i in range(1, 2 * n)]


def random_regular_simple(n, d, rng, max_attempts=200):
    """Random simple d-regular tripartite hypergraph with sides of size n.

    Built as a union of d random full grid matchings {(i, s(i), t(i))};
    resampled until no triple repeats.
    """
    if d > n * n:
        raise ValueError("regularity exceeds the grid capacity")
    for _ in range(max_attempts):
        edges = set()
        ok = True
        for _ in range(d):
            sigma = list(range(n))
            tau = list(range(n))
            rng.shuffle(sigma)
            rng.shuffle(tau)
            layer = {(i, sigma[i], tau[i]) for i in range(n)}
            if edges & layer:
                ok = False
                break
            edges |= layer
        if ok:
            return TriHypergraph((n, n, n), tuple(sorted(edges)))
    raise ConstructionError("could not sample a simple regular hypergraph")


def random_stein_instance(n, rng):
    """n-regular hypergraph, sides n, with only the (A, B) pair simple.

    Every (symbol, column) pair carries exactly one row, and every row
    appears exactly n times overall.
    """
    rows = [c for c in range(n) for _ in range(n)]
    rng.shuffle(rows)
    edges = []
    i = 0
    for a in range(n):
        for b in range(n):
            edges.append((a, b, rows[i]))
            i += 1
    return TriHypergraph((n, n, n), tuple(edges))


def random_conj_drisko_instance(n, rng, max_repair_passes=10000):
    """|A| = 2n-1, deg(a) = n, and every B or C degree at most 2n-1.

    Each A-vertex takes one edge per C-vertex through a random C -> B
    function; B-degrees are then repaired down to the 2n-1 cap.
    """
    a_size = 2 * n - 1
    assign = {(a, c): rng.randrange(n) for a in range(a_size) for c in range(n)}
    cap = 2 * n - 1
    passes = 0
    while True:
        counts = [0] * n
        for b in assign.values():
            counts[b] += 1
        over = [b for b in range(n) if counts[b] > cap]
        if not over:
            break
        passes += 1
        if passes > max_repair_passes:
            raise ConstructionError("degree repair did not converge")
        b_bad = over[0]
        keys = [k for k, b in assign.items() if b == b_bad]
        under = [b for b in range(n) if counts[b] < cap]
        assign[rng.choice(keys)] = rng.choice(under)
    edges = [(a, b, c) for (a, c), b in assign.items()]
    return TriHypergraph((a_size, n, n), tuple(sorted(edges)))


def random_bounded_tri(rng, a_size, bc_size, deg_a, cap, max_repair_passes=10000):
    """Simple tripartite hypergraph: every A-degree exactly deg_a and every
    B or C degree at most cap.  Raises when the cap is impossible to meet."""
    if a_size * deg_a > bc_size * cap:
        raise ValueError("cap too small for the requested A-degrees")
    if deg_a > bc_size * bc_size:
        raise ValueError("deg_a exceeds the grid capacity")
    pairs = [(b, c) for b in range(bc_size) for c in range(bc_size)]
    edges = set()
    for a in range(a_size):
        for b, c in rng.sample(pairs, deg_a):
            edges.add((a, b, c))
    passes = 0
    while True:
        counts_b = [0] * bc_size
        counts_c = [0] * bc_size
        for _, b, c in edges:
            counts_b[b] += 1
            counts_c[c] += 1
        bad = [
            e for e in edges if counts_b[e[1]] > cap or counts_c[e[2]] > cap
        ]
        if not bad:
            break
        passes += 1
        if passes > max_repair_passes:
            raise ConstructionError("degree repair did not converge")
        old = sorted(bad)[rng.randrange(len(bad))]
        a = old[0]
        options = [
            (a, b, c)
            for b, c in pairs
            if counts_b[b] < cap and counts_c[c] < cap and (a, b, c) not in edges
        ]
        if not options:
            raise ConstructionError("repair dead end; widen the sides")
        edges.remove(old)
        edges.add(options[rng.randrange(len(options))])
    return TriHypergraph((a_size, bc_size, bc_size), tuple(sorted(edges)))


def random_lemma31_graph(ell, rng, max_edges=12):
    """Bipartite graph with left degrees at least (min(i, ell))_{i=1..2l-1}."""
    u_size = 2 * ell - 1
    w_size = ell + rng.randrange(0, ell + 1)
    degrees = [min(i, ell) for i in range(1, u_size + 1)]
    budget = max_edges - sum(degrees)
    if budget < 0:
        raise ValueError("profile alone exceeds the edge budget")
    while budget > 0 and rng.random() < 0.5:
        i = rng.randrange(u_size)
        if degrees[i] < w_size:
            degrees[i] += 1
            budget -= 1
        else:
            break
    edges = set()
    for u, d in enumerate(degrees):
        for w in rng.sample(range(w_size), d):
            edges.add((u, w))
    return BipartiteGraph(u_size, w_size, frozenset(edges))


def random_graph(n, rng, p=0.5):
    """Labelled random graph, each pair joined independently."""
    edges = set()
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                edges.add((u, v))
    return Graph(n, frozenset(edges))


def random_partition_system(rng, max_vertices=8, max_parts=4, p=0.35):
    """Random graph plus disjoint nonempty vertex parts, for transversal checks."""
    from .solver import PartitionedGraph

    n = rng.randrange(2, max_vertices + 1)
    graph = random_graph(n, rng, p)
    vertices = list(range(n))
    rng.shuffle(vertices)
    m = rng.randrange(1, min(max_parts, n) + 1)
    parts = []
    idx = 0
    for i in range(m):
        take = rng.randrange(1, max(2, (n - idx) // max(1, m - i) + 1))
        part = vertices[idx : idx + take]
        if not part:
            break
        parts.append(frozenset(part))
        idx += take
    return PartitionedGraph(graph, tuple(parts))
