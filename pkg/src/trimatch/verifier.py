"""Theorem and conjecture harness.

Every catalogued statement pairs a hypothesis predicate with a conclusion
predicate over a documented instance domain.  `verify` sweeps a scope
(exhaustive at tiny sizes, seeded randomized at small sizes) and records
every hypothesis-true, conclusion-false instance as a violation; `hunt`
does the same for conjectures with a trial budget.  Vacuous instances
(hypothesis false) are counted but never judged, so a sweep can never
"confirm" a statement it never actually tested.

Violations are re-validated from their serialized form before being
reported, and cross-checked against the brute-force oracles when the
instance is small enough.
"""

import itertools
import json
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import constructions as cons
from . import oracle
from .errors import InfeasibleScopeError
from .game import canonical_graph_key, line_graph, psi, psi_at_least
from .homology import check_topological_hall, eta_homological, independence_complex
from .solver import (
    PartitionedGraph,
    find_bounded_diagonal,
    find_rainbow_matching,
    max_matching_size,
    partitioned_graph_from_json,
    partitioned_graph_to_json,
)
from .structures import (
    Graph,
    bipartite_graph_from_json,
    bipartite_graph_to_json,
    family_from_json,
    family_to_json,
    graph_from_json,
    graph_to_json,
    hypergraph_from_json,
    hypergraph_to_json,
    is_p_simple,
    is_regular,
    latin_to_hypergraph,
    max_degree,
    min_degree,
    square_from_json,
    square_to_json,
)

THEOREM_IDS = (
    "DRISKO_1_5",
    "IMPROVED_1_7",
    "ACCOMMODATING_1_8",
    "ALMOST_DRISKO_1_9",
    "CAMWAN_1_10",
    "STRONG_CAMWAN_1_12",
    "TOPHALL_2_3",
    "TOPHALL_DEF_2_4",
    "ETA_GE_PSI_2_5",
    "LEMMA_3_1",
)

CONJECTURE_IDS = (
    "CONJ_RBS_1_1",
    "CONJ_STEIN_1_2",
    "CONJ_SYM_1_3",
    "CONJ_AB_1_4",
    "CONJ_DRISKO_1_6",
    "CONJ_FRACD_5_1",
    "CONJ_ASYM_5_2",
    "CONJ_GEN_5_3",
    "REMARK_5_DOUBLE_DELTA",
)

ALL_STATEMENT_IDS = THEOREM_IDS + CONJECTURE_IDS


@dataclass(frozen=True)
class Scope:
    """Either exhaustive(params) or randomized(trials, seed, params)."""

    mode: str  # "exhaustive" | "randomized" | "stdin"
    trials: int = 0
    seed: int = None
    params: dict = field(default_factory=dict)

    def describe(self):
        if self.mode == "exhaustive":
            return {"mode": "exhaustive", "params": dict(self.params)}
        if self.mode == "randomized":
            return {
                "mode": "randomized",
                "trials": self.trials,
                "seed": self.seed,
                "params": dict(self.params),
            }
        return {"mode": self.mode}


@dataclass
class VerificationReport:
    statement: str
    scope: dict
    instances_checked: int = 0
    hypothesis_hits: int = 0
    violations: list = field(default_factory=list)
    wall_time: float = 0.0
    seed: int = None

    def to_json(self):
        return {
            "statement": self.statement,
            "scope": self.scope,
            "instances_checked": self.instances_checked,
            "hypothesis_hits": self.hypothesis_hits,
            "violations": self.violations,
            "wall_time": round(self.wall_time, 3),
            "seed": self.seed,
        }


# ---------------------------------------------------------------------------
# Instance serialization (one tagged dict shape per statement family)


def serialize_instance(statement, inst):
    kind = _INSTANCE_KIND[statement]
    if kind == "family":
        return {"family": family_to_json(inst["family"]), "n": inst["n"],
                "expect": inst.get("expect", True)}
    if kind == "hyper":
        return {"hyper": hypergraph_to_json(inst["hyper"]), "n": inst.get("n"),
                "d": inst.get("d")}
    if kind == "square":
        return {"square": square_to_json(inst["square"])}
    if kind == "graph":
        return {"graph": graph_to_json(inst["graph"])}
    if kind == "partition":
        return {"pgraph": partitioned_graph_to_json(inst["pgraph"]),
                "deficiency": inst["deficiency"]}
    if kind == "lemma":
        return {"bipartite": bipartite_graph_to_json(inst["bipartite"]),
                "ell": inst["ell"]}
    raise AssertionError(f"unknown instance kind {kind}")


def deserialize_instance(statement, data):
    kind = _INSTANCE_KIND[statement]
    if kind == "family":
        return {"family": family_from_json(data["family"]), "n": data["n"],
                "expect": data.get("expect", True)}
    if kind == "hyper":
        return {"hyper": hypergraph_from_json(data["hyper"]), "n": data.get("n"),
                "d": data.get("d")}
    if kind == "square":
        return {"square": square_from_json(data["square"])}
    if kind == "graph":
        return {"graph": graph_from_json(data["graph"])}
    if kind == "partition":
        return {"pgraph": partitioned_graph_from_json(data["pgraph"]),
                "deficiency": data["deficiency"]}
    if kind == "lemma":
        return {"bipartite": bipartite_graph_from_json(data["bipartite"]),
                "ell": data["ell"]}
    raise AssertionError(f"unknown instance kind {kind}")


_INSTANCE_KIND = {
    "DRISKO_1_5": "family",
    "IMPROVED_1_7": "family",
    "ACCOMMODATING_1_8": "family",
    "CONJ_AB_1_4": "family",
    "ALMOST_DRISKO_1_9": "hyper",
    "CONJ_RBS_1_1": "hyper",
    "CONJ_STEIN_1_2": "hyper",
    "CONJ_SYM_1_3": "hyper",
    "CONJ_DRISKO_1_6": "hyper",
    "CONJ_FRACD_5_1": "hyper",
    "CONJ_ASYM_5_2": "hyper",
    "CONJ_GEN_5_3": "hyper",
    "REMARK_5_DOUBLE_DELTA": "hyper",
    "CAMWAN_1_10": "square",
    "STRONG_CAMWAN_1_12": "square",
    "TOPHALL_2_3": "partition",
    "TOPHALL_DEF_2_4": "partition",
    "ETA_GE_PSI_2_5": "graph",
    "LEMMA_3_1": "lemma",
}


# ---------------------------------------------------------------------------
# Hypothesis predicates


def _hyp_drisko(inst):
    n = inst["n"]
    fam = inst["family"]
    return len(fam.members) >= 2 * n - 1 and all(len(m) >= n for m in fam.members)


def _hyp_improved(inst):
    n = inst["n"]
    sizes = inst["family"].sizes()
    if len(sizes) != 2 * n - 1:
        return False
    for i, s in enumerate(sizes, start=1):
        if i < n and s < i:
            return False
        if i >= n and s != n:
            return False
    return True


def _hyp_accommodating(inst):
    # instances are pre-filtered: any family whose sizes match its sequence
    return True


def _hyp_ab(inst):
    n = inst["n"]
    fam = inst["family"]
    return len(fam.members) >= n and all(len(m) >= n for m in fam.members)


def _hyp_almost_drisko(inst):
    H = inst["hyper"]
    n = inst["n"]
    a, b, c = H.side_sizes
    if a < 2 * n - 1 or b != n or c != n:
        return False
    if any(sum(1 for e in H.edges if e[0] == v) != n for v in range(a)):
        return False
    return is_p_simple(H, ("A", "C"), 1) and is_p_simple(H, ("B", "C"), 2)


def _hyp_camwan(inst):
    return inst["square"].is_latin()


def _hyp_strong_camwan(inst):
    return inst["square"].is_row_latin()


def _hyp_tophall(inst):
    return check_topological_hall(inst["pgraph"], inst["deficiency"]).hypothesis_holds


def _hyp_eta_psi(inst):
    return True


def lemma31_hypothesis_holds(G, ell):
    """Greedy check that 2*ell-1 left vertices can meet deg >= min(i, ell)."""
    degs = sorted(G.left_degrees(), reverse=True)[: 2 * ell - 1]
    if len(degs) < 2 * ell - 1:
        return False
    degs.reverse()
    return all(d >= min(i, ell) for i, d in enumerate(degs, start=1))


def _hyp_lemma31(inst):
    return lemma31_hypothesis_holds(inst["bipartite"], inst["ell"])


def _hyp_rbs(inst):
    H = inst["hyper"]
    n = inst["n"]
    return (
        H.side_sizes == (n, n, n)
        and is_regular(H, n)
        and all(is_p_simple(H, pair, 1) for pair in (("A", "B"), ("A", "C"), ("B", "C")))
    )


def _hyp_stein(inst):
    H = inst["hyper"]
    n = inst["n"]
    return H.side_sizes == (n, n, n) and is_regular(H, n) and is_p_simple(H, ("A", "B"), 1)


def _hyp_sym(inst):
    H = inst["hyper"]
    n = inst["n"]
    return H.side_sizes == (n, n, n) and is_regular(H, n) and H.is_simple()


def _hyp_conj_drisko(inst):
    H = inst["hyper"]
    n = inst["n"]
    a = H.side_sizes[0]
    if a < 2 * n - 1:
        return False
    if any(sum(1 for e in H.edges if e[0] == v) < n for v in range(a)):
        return False
    return max_degree(H, "B") <= 2 * n - 1 and max_degree(H, "C") <= 2 * n - 1


def _hyp_conj_gen(inst):
    H = inst["hyper"]
    n = inst["n"]
    return H.is_simple() and H.side_sizes[0] == 2 * n - 1 and _hyp_conj_drisko(inst)


def _hyp_fracd(inst):
    H = inst["hyper"]
    n, d = inst["n"], inst["d"]
    if H.side_sizes != (n, n, n) or not H.is_simple() or not is_regular(H, d):
        return False
    return d <= n or d >= 2 * n - 1  # one of the two clauses must apply


def _hyp_asym(inst):
    H = inst["hyper"]
    if not H.is_simple() or H.side_sizes[0] == 0:
        return False
    d = min_degree(H, "A")
    return d >= 1 and d >= max(max_degree(H, "B"), max_degree(H, "C"))


def _hyp_double_delta(inst):
    H = inst["hyper"]
    if not H.is_simple() or H.side_sizes[0] == 0:
        return False
    d = min_degree(H, "A")
    big = max(max_degree(H, "B"), max_degree(H, "C"))
    # d >= 1 excludes the degenerate edgeless case, where the bound
    # 2*max-1 = -1 would hold vacuously while no transversal can exist
    return d >= 1 and d >= 2 * big - 1


# ---------------------------------------------------------------------------
# Conclusion predicates


def _con_rainbow_n(inst):
    res = find_rainbow_matching(inst["family"], target=inst["n"])
    return res.optimum >= inst["n"]


def _con_accommodating(inst):
    res = find_rainbow_matching(inst["family"], target=inst["n"])
    return (res.optimum >= inst["n"]) == inst["expect"]


def _con_rainbow_n_minus_1(inst):
    target = inst["n"] - 1
    res = find_rainbow_matching(inst["family"], target=target)
    return res.optimum >= target


def _con_nu_at_least_n(inst):
    n = inst["n"]
    return max_matching_size(inst["hyper"], target=n).optimum >= n


def _con_nu_at_least_n_minus_1(inst):
    target = inst["n"] - 1
    return max_matching_size(inst["hyper"], target=target).optimum >= target


def _con_bounded_diagonal(inst):
    L = inst["square"]
    return find_bounded_diagonal(L, 2).optimum == L.order


def _con_tophall(inst):
    return check_topological_hall(inst["pgraph"], inst["deficiency"]).conclusion_holds


def _con_eta_psi(inst):
    G = inst["graph"]
    eta = eta_homological(independence_complex(G))
    return eta >= psi(G)


def _con_lemma31(inst):
    # exact decision for psi(L(G)) >= ell; the full value is not needed
    return psi_at_least(line_graph(inst["bipartite"]), inst["ell"])


def _con_fracd(inst):
    H = inst["hyper"]
    n, d = inst["n"], inst["d"]
    nu = max_matching_size(H).optimum
    if d >= 2 * n - 1:
        return nu == n
    return Fraction(nu) >= Fraction(d - 1, d) * n


def _con_asym(inst):
    H = inst["hyper"]
    a = H.side_sizes[0]
    d = min_degree(H, "A")
    nu = max_matching_size(H).optimum
    if d >= max(2 * a - 1, 1):
        return nu == a
    return Fraction(nu) >= Fraction(d - 1, d) * a


def _con_nu_equals_a(inst):
    H = inst["hyper"]
    return max_matching_size(H).optimum == H.side_sizes[0]


_HYPOTHESES = {
    "DRISKO_1_5": _hyp_drisko,
    "IMPROVED_1_7": _hyp_improved,
    "ACCOMMODATING_1_8": _hyp_accommodating,
    "ALMOST_DRISKO_1_9": _hyp_almost_drisko,
    "CAMWAN_1_10": _hyp_camwan,
    "STRONG_CAMWAN_1_12": _hyp_strong_camwan,
    "TOPHALL_2_3": _hyp_tophall,
    "TOPHALL_DEF_2_4": _hyp_tophall,
    "ETA_GE_PSI_2_5": _hyp_eta_psi,
    "LEMMA_3_1": _hyp_lemma31,
    "CONJ_RBS_1_1": _hyp_rbs,
    "CONJ_STEIN_1_2": _hyp_stein,
    "CONJ_SYM_1_3": _hyp_sym,
    "CONJ_AB_1_4": _hyp_ab,
    "CONJ_DRISKO_1_6": _hyp_conj_drisko,
    "CONJ_FRACD_5_1": _hyp_fracd,
    "CONJ_ASYM_5_2": _hyp_asym,
    "CONJ_GEN_5_3": _hyp_conj_gen,
    "REMARK_5_DOUBLE_DELTA": _hyp_double_delta,
}

_CONCLUSIONS = {
    "DRISKO_1_5": _con_rainbow_n,
    "IMPROVED_1_7": _con_rainbow_n,
    "ACCOMMODATING_1_8": _con_accommodating,
    "ALMOST_DRISKO_1_9": _con_nu_at_least_n,
    "CAMWAN_1_10": _con_bounded_diagonal,
    "STRONG_CAMWAN_1_12": _con_bounded_diagonal,
    "TOPHALL_2_3": _con_tophall,
    "TOPHALL_DEF_2_4": _con_tophall,
    "ETA_GE_PSI_2_5": _con_eta_psi,
    "LEMMA_3_1": _con_lemma31,
    "CONJ_RBS_1_1": _con_nu_at_least_n_minus_1,
    "CONJ_STEIN_1_2": _con_nu_at_least_n_minus_1,
    "CONJ_SYM_1_3": _con_nu_at_least_n_minus_1,
    "CONJ_AB_1_4": _con_rainbow_n_minus_1,
    "CONJ_DRISKO_1_6": _con_nu_at_least_n,
    "CONJ_FRACD_5_1": _con_fracd,
    "CONJ_ASYM_5_2": _con_asym,
    "CONJ_GEN_5_3": _con_nu_at_least_n,
    "REMARK_5_DOUBLE_DELTA": _con_nu_equals_a,
}


def statement_kind(statement):
    if statement in THEOREM_IDS:
        return "theorem"
    if statement in CONJECTURE_IDS:
        return "conjecture"
    raise KeyError(f"unknown statement {statement!r}")


# ---------------------------------------------------------------------------
# Instance streams


def enumerate_graphs_up_to_iso(n):
    """All graphs on exactly n labelled vertices, one per isomorphism class.

    Built by extending every (n-1)-vertex class with one new vertex attached
    in all possible ways, deduplicating by canonical form; every n-vertex
    graph arises this way because deleting any vertex leaves a smaller graph.
    """
    if n <= 0:
        return [Graph(0)]
    seen = {}
    for smaller in enumerate_graphs_up_to_iso(n - 1):
        base = tuple(sorted(smaller.edges))
        for mask in range(1 << (n - 1)):
            edges = base + tuple(
                (v, n - 1) for v in range(n - 1) if mask >> v & 1
            )
            key = canonical_graph_key(n, edges)
            if key not in seen:
                seen[key] = Graph(n, frozenset(edges))
    return [seen[k] for k in sorted(seen)]


def enumerate_regular_simple(n, d):
    """All simple d-regular tripartite hypergraphs with sides of size n."""
    from .structures import TriHypergraph

    triples = [
        (a, b, c) for a in range(n) for b in range(n) for c in range(n)
    ]
    need_total = n * d
    results = []
    degrees = [[0] * n for _ in range(3)]
    chosen = []

    def rec(idx, count):
        if count == need_total:
            results.append(TriHypergraph((n, n, n), tuple(chosen)))
            return
        if idx == len(triples):
            return
        remaining = len(triples) - idx
        if count + remaining < need_total:
            return
        t = triples[idx]
        if all(degrees[s][t[s]] < d for s in range(3)):
            for s in range(3):
                degrees[s][t[s]] += 1
            chosen.append(t)
            rec(idx + 1, count + 1)
            chosen.pop()
            for s in range(3):
                degrees[s][t[s]] -= 1
        # skipping is pointless when a vertex could never recover its degree
        a, b, c = t
        if (
            _can_still_fill(degrees[0], a, d, triples, idx + 1, 0)
            and _can_still_fill(degrees[1], b, d, triples, idx + 1, 1)
            and _can_still_fill(degrees[2], c, d, triples, idx + 1, 2)
        ):
            rec(idx + 1, count)

    rec(0, 0)
    return results


def _can_still_fill(side_degrees, v, d, triples, idx, pos):
    deficit = d - side_degrees[v]
    if deficit <= 0:
        return True
    avail = sum(1 for t in triples[idx:] if t[pos] == v)
    return avail >= deficit


def ascending_sequences(n, lo=0):
    """All ascending sequences of length 2n-1 with entries in [lo, n]."""
    length = 2 * n - 1
    return [
        seq
        for seq in itertools.combinations_with_replacement(range(lo, n + 1), length)
    ]


def is_accommodating_shaped(a, n):
    return all(a[i - 1] >= min(i, n) for i in range(1, len(a) + 1))


def _family_meeting_profile(a, n, rng):
    sizes = [min(x + rng.randrange(0, 2), n) if x < n else n for x in a]
    sizes = [max(s, x) for s, x in zip(sizes, a)]
    return cons.random_family(sizes, rng)


# exhaustive stream builders (statement -> params -> iterator of instances)


def _ex_eta_psi(params):
    max_v = params.get("max_vertices", 6)
    if max_v > _CAPS["ETA_GE_PSI_2_5"]["max_vertices"]:
        raise InfeasibleScopeError("exhaustive eta/psi capped at 7 vertices")
    for n in range(0, max_v + 1):
        for G in enumerate_graphs_up_to_iso(n):
            yield {"graph": G}


def _ex_camwan(params):
    max_order = params.get("max_order", 4)
    if max_order > _CAPS["CAMWAN_1_10"]["max_order"]:
        raise InfeasibleScopeError("exhaustive Latin sweep capped at order 4")
    for n in range(1, max_order + 1):
        for L in cons.gen_latin(n, "exhaustive"):
            yield {"square": L}


def _ex_strong_camwan(params):
    max_order = params.get("max_order", 4)
    if max_order > _CAPS["STRONG_CAMWAN_1_12"]["max_order"]:
        raise InfeasibleScopeError("exhaustive row-Latin sweep capped at order 4")
    for n in range(1, max_order + 1):
        for L in cons.gen_row_latin(n, "exhaustive", normalized=True):
            yield {"square": L}


def _ex_accommodating(params):
    n = params.get("n", 2)
    if n > _CAPS["ACCOMMODATING_1_8"]["max_n"]:
        raise InfeasibleScopeError("exhaustive sequence sweep capped at n = 3")
    # necessity direction only: each non-accommodating sequence yields its
    # constructed counterexample, expected to lack a rainbow n-matching
    for a in ascending_sequences(n):
        if is_accommodating_shaped(a, n):
            continue
        fam = cons.gen_accommodating_counterexample(a, n)
        yield {"family": fam, "n": n, "expect": False}


def _ex_fracd(params):
    n = params.get("n", 3)
    d = params.get("d", 2)
    caps = _CAPS["CONJ_FRACD_5_1"]
    if n > caps["max_n"] or d > caps["max_d"]:
        raise InfeasibleScopeError("exhaustive regular sweep capped at n=3, d=2")
    for H in enumerate_regular_simple(n, d):
        yield {"hyper": H, "n": n, "d": d}


_EXHAUSTIVE = {
    "ETA_GE_PSI_2_5": _ex_eta_psi,
    "CAMWAN_1_10": _ex_camwan,
    "STRONG_CAMWAN_1_12": _ex_strong_camwan,
    "ACCOMMODATING_1_8": _ex_accommodating,
    "CONJ_FRACD_5_1": _ex_fracd,
}


# randomized stream builders (statement -> (rng, trials, params) -> iterator)


def _rand_family_profile(profile_fn):
    def stream(rng, trials, params):
        n_values = params.get("n_values", [2, 3])
        for _ in range(trials):
            n = n_values[rng.randrange(len(n_values))]
            sizes = profile_fn(n, rng)
            yield {"family": cons.random_family(sizes, rng), "n": n}

    return stream


def _drisko_sizes(n, rng):
    return [n + rng.randrange(0, 2) for _ in range(2 * n - 1)]


def _improved_sizes(n, rng):
    return cons.drisko_profile(n)


def _ab_sizes(n, rng):
    return [n for _ in range(n)]


def _rand_accommodating(rng, trials, params):
    n = params.get("n", 2)
    sequences = ascending_sequences(n)
    for _ in range(trials):
        a = sequences[rng.randrange(len(sequences))]
        if is_accommodating_shaped(a, n):
            yield {"family": _family_meeting_profile(a, n, rng), "n": n,
                   "expect": True}
        else:
            yield {
                "family": cons.gen_accommodating_counterexample(a, n),
                "n": n,
                "expect": False,
            }


def _rand_almost_drisko(rng, trials, params):
    n_values = params.get("n_values", [2, 3])
    for _ in range(trials):
        n = n_values[rng.randrange(len(n_values))]
        yield {"hyper": cons.gen_theorem19_instance(n, rng.getrandbits(48)), "n": n}


def _rand_latin(rng, trials, params):
    n = params.get("n", 4)
    for _ in range(trials):
        yield {"square": cons._random_latin(n, rng)}


def _rand_row_latin(rng, trials, params):
    n = params.get("n", 4)
    stream = cons.gen_row_latin(n, "random", seed=rng.getrandbits(48), count=trials)
    for L in stream:
        yield {"square": L}


def _rand_tophall(deficiency_choices):
    def stream(rng, trials, params):
        for _ in range(trials):
            P = cons.random_partition_system(
                rng,
                max_vertices=params.get("max_vertices", 7),
                max_parts=params.get("max_parts", 4),
            )
            d = deficiency_choices[rng.randrange(len(deficiency_choices))]
            yield {"pgraph": P, "deficiency": min(d, len(P.parts))}

    return stream


def _rand_eta_psi(rng, trials, params):
    n = params.get("vertices", 7)
    if n > _CAPS["ETA_GE_PSI_2_5"]["max_vertices"]:
        raise InfeasibleScopeError("random eta/psi capped at 7 vertices")
    for _ in range(trials):
        yield {"graph": cons.random_graph(n, rng)}


def _rand_lemma31(rng, trials, params):
    ells = params.get("ells", [2, 3])
    max_edges = params.get("max_edges", 12)
    for _ in range(trials):
        ell = ells[rng.randrange(len(ells))]
        yield {"bipartite": cons.random_lemma31_graph(ell, rng, max_edges), "ell": ell}


def _rand_rbs(rng, trials, params):
    n = params.get("n", 3)
    for _ in range(trials):
        yield {"hyper": latin_to_hypergraph(cons._random_latin(n, rng)), "n": n}


def _rand_stein(rng, trials, params):
    n = params.get("n", 3)
    for _ in range(trials):
        yield {"hyper": cons.random_stein_instance(n, rng), "n": n}


def _rand_sym(rng, trials, params):
    n = params.get("n", 3)
    d = params.get("d", n)
    for _ in range(trials):
        yield {"hyper": cons.random_regular_simple(n, d, rng), "n": n}


def _rand_conj_drisko(rng, trials, params):
    n = params.get("n", 2)
    for _ in range(trials):
        yield {"hyper": cons.random_conj_drisko_instance(n, rng), "n": n}


def _rand_fracd(rng, trials, params):
    n = params.get("n", 3)
    d = params.get("d", 2)
    for _ in range(trials):
        yield {"hyper": cons.random_regular_simple(n, d, rng), "n": n, "d": d}


def _rand_asym(rng, trials, params):
    a_size = params.get("a_size", 3)
    deg_a = params.get("deg_a", 3)
    bc = params.get("bc_size", 2 * deg_a)
    for _ in range(trials):
        yield {"hyper": cons.random_bounded_tri(rng, a_size, bc, deg_a, deg_a)}


def _rand_double_delta(rng, trials, params):
    a_size = params.get("a_size", 3)
    deg_a = params.get("deg_a", 5)
    cap = (deg_a + 1) // 2
    bc = params.get("bc_size", max(2 * deg_a, (a_size * deg_a + cap - 1) // cap))
    for _ in range(trials):
        yield {"hyper": cons.random_bounded_tri(rng, a_size, bc, deg_a, cap)}


_RANDOMIZED = {
    "DRISKO_1_5": _rand_family_profile(_drisko_sizes),
    "IMPROVED_1_7": _rand_family_profile(_improved_sizes),
    "ACCOMMODATING_1_8": _rand_accommodating,
    "ALMOST_DRISKO_1_9": _rand_almost_drisko,
    "CAMWAN_1_10": _rand_latin,
    "STRONG_CAMWAN_1_12": _rand_row_latin,
    "TOPHALL_2_3": _rand_tophall([0]),
    "TOPHALL_DEF_2_4": _rand_tophall([1, 2]),
    "ETA_GE_PSI_2_5": _rand_eta_psi,
    "LEMMA_3_1": _rand_lemma31,
    "CONJ_RBS_1_1": _rand_rbs,
    "CONJ_STEIN_1_2": _rand_stein,
    "CONJ_SYM_1_3": _rand_sym,
    "CONJ_AB_1_4": _rand_family_profile(_ab_sizes),
    "CONJ_DRISKO_1_6": _rand_conj_drisko,
    "CONJ_FRACD_5_1": _rand_fracd,
    "CONJ_ASYM_5_2": _rand_asym,
    "CONJ_GEN_5_3": _rand_conj_drisko,
    "REMARK_5_DOUBLE_DELTA": _rand_double_delta,
}


# Per-statement feasibility caps, shipped as data.
_CAPS = {
    "ETA_GE_PSI_2_5": {"max_vertices": 7},
    "CAMWAN_1_10": {"max_order": 4},
    "STRONG_CAMWAN_1_12": {"max_order": 4},
    "ACCOMMODATING_1_8": {"max_n": 3},
    "CONJ_FRACD_5_1": {"max_n": 3, "max_d": 2},
    "MAX_RANDOM_TRIALS": 1_000_000,
}


def feasibility_caps():
    return {k: dict(v) if isinstance(v, dict) else v for k, v in _CAPS.items()}


# ---------------------------------------------------------------------------
# The harness


def _revalidate(statement, payload):
    """Re-check a candidate violation from its serialized form."""
    inst = deserialize_instance(statement, payload)
    hyp = _HYPOTHESES[statement](inst)
    con = _CONCLUSIONS[statement](inst)
    result = {"hypothesis": hyp, "conclusion": con}
    oracle_view = _oracle_conclusion(statement, inst)
    if oracle_view is not None:
        result["oracle_agrees"] = oracle_view == con
    return result


def _oracle_conclusion(statement, inst):
    """Brute-force version of the conclusion, where instance size permits."""
    kind = _INSTANCE_KIND[statement]
    try:
        if kind == "hyper":
            H = inst["hyper"]
            if len(H.support()) > oracle.ORACLE_EDGE_LIMIT:
                return None
            nu = oracle.matching_number_oracle(H)
            return _conclusion_from_nu(statement, inst, nu)
        if kind == "family":
            fam = inst["family"]
            if sum(len(m) for m in fam.members) > 14:
                return None
            opt = oracle.rainbow_oracle(fam)
            if statement == "ACCOMMODATING_1_8":
                return (opt >= inst["n"]) == inst["expect"]
            if statement == "CONJ_AB_1_4":
                return opt >= inst["n"] - 1
            return opt >= inst["n"]
        if kind == "square":
            L = inst["square"]
            if L.order > 6:
                return None
            return oracle.diagonal_oracle(L, 2) == L.order
        if kind == "partition":
            P = inst["pgraph"]
            if P.graph.n > 16:
                return None
            opt = oracle.transversal_oracle(P)
            return opt >= len(P.parts) - inst["deficiency"]
    except ValueError:
        return None
    return None


def _conclusion_from_nu(statement, inst, nu):
    if statement in ("ALMOST_DRISKO_1_9", "CONJ_DRISKO_1_6", "CONJ_GEN_5_3"):
        return nu >= inst["n"]
    if statement in ("CONJ_RBS_1_1", "CONJ_STEIN_1_2", "CONJ_SYM_1_3"):
        return nu >= inst["n"] - 1
    if statement == "CONJ_FRACD_5_1":
        n, d = inst["n"], inst["d"]
        if d >= 2 * n - 1:
            return nu == n
        return Fraction(nu) >= Fraction(d - 1, d) * n
    if statement == "CONJ_ASYM_5_2":
        H = inst["hyper"]
        a = H.side_sizes[0]
        d = min_degree(H, "A")
        if d >= max(2 * a - 1, 1):
            return nu == a
        return Fraction(nu) >= Fraction(d - 1, d) * a
    if statement == "REMARK_5_DOUBLE_DELTA":
        return nu == inst["hyper"].side_sizes[0]
    return None


def _record_violation(statement, payload, report, cert_dir):
    recheck = _revalidate(statement, payload)
    if recheck["hypothesis"] and not recheck["conclusion"]:
        record = {"instance": payload, "recheck": recheck}
        report.violations.append(record)
        if cert_dir is not None:
            path = Path(cert_dir)
            path.mkdir(parents=True, exist_ok=True)
            name = f"{statement}_{len(report.violations):04d}.json"
            (path / name).write_text(json.dumps(record, indent=2))


def _judge_stream(statement, instances, report, cert_dir=None):
    hyp_fn = _HYPOTHESES[statement]
    con_fn = _CONCLUSIONS[statement]
    for inst in instances:
        report.instances_checked += 1
        if not hyp_fn(inst):
            continue
        report.hypothesis_hits += 1
        if con_fn(inst):
            continue
        _record_violation(statement, serialize_instance(statement, inst), report, cert_dir)
    return report


def _judge_payload(task):
    """Worker entry for parallel sweeps: judge one serialized instance."""
    statement, payload = task
    inst = deserialize_instance(statement, payload)
    if not _HYPOTHESES[statement](inst):
        return payload, False, True
    return payload, True, _CONCLUSIONS[statement](inst)


def _judge_stream_parallel(statement, instances, report, cert_dir, jobs):
    """Parallel variant; counts aggregate associatively, so the report is
    identical to the single-process sweep regardless of scheduling."""
    import multiprocessing

    tasks = [(statement, serialize_instance(statement, inst)) for inst in instances]
    ctx = multiprocessing.get_context("fork")
    with ctx.Pool(jobs) as pool:
        for payload, hyp, con in pool.imap(_judge_payload, tasks, chunksize=16):
            report.instances_checked += 1
            if not hyp:
                continue
            report.hypothesis_hits += 1
            if not con:
                _record_violation(statement, payload, report, cert_dir)
    return report


def verify(statement, scope, *, cert_dir=None, instances=None, jobs=1):
    """Sweep a scope and report hypothesis hits and re-validated violations."""
    if statement not in ALL_STATEMENT_IDS:
        raise KeyError(f"unknown statement {statement!r}")
    start = time.monotonic()
    report = VerificationReport(statement=statement, scope=scope.describe(), seed=scope.seed)
    if instances is not None:
        stream = instances
    elif scope.mode == "exhaustive":
        if statement not in _EXHAUSTIVE:
            raise InfeasibleScopeError(
                f"{statement} has no exhaustive instance domain; use a randomized scope"
            )
        stream = _EXHAUSTIVE[statement](scope.params)
    elif scope.mode == "randomized":
        if scope.seed is None:
            raise ValueError("randomized scope requires a seed")
        if scope.trials > _CAPS["MAX_RANDOM_TRIALS"]:
            raise InfeasibleScopeError("trial budget beyond the cap table")
        rng = random.Random(scope.seed)
        stream = _RANDOMIZED[statement](rng, scope.trials, scope.params)
    else:
        raise ValueError(f"unknown scope mode {scope.mode!r}")
    if jobs > 1:
        _judge_stream_parallel(statement, stream, report, cert_dir, jobs)
    else:
        _judge_stream(statement, stream, report, cert_dir)
    report.wall_time = time.monotonic() - start
    return report


def adapt_payload(statement, data):
    """Accept either a serialized instance or a raw core-format object.

    Raw objects straight out of `gen` are wrapped and their statement
    parameters derived from the object itself (e.g. n from the number of
    family members or the side sizes), so generator output pipes directly
    into the verifier.
    """
    kind = _INSTANCE_KIND[statement]
    wrapper_key = {"family": "family", "hyper": "hyper", "square": "square",
                   "graph": "graph", "partition": "pgraph", "lemma": "bipartite"}[kind]
    if wrapper_key in data:
        return data
    if kind == "square" and {"n", "cells"} <= set(data):
        return {"square": data}
    if kind == "graph" and "vertices" in data:
        return {"graph": data}
    if kind == "family" and {"graph", "members"} <= set(data):
        members = len(data["members"])
        if statement == "CONJ_AB_1_4":
            n = members
        else:
            n = (members + 1) // 2
        return {"family": data, "n": n}
    if kind == "hyper" and "sides" in data:
        sides = data["sides"]
        payload = {"hyper": data}
        if statement in ("ALMOST_DRISKO_1_9",):
            payload["n"] = sides[1]
        elif statement in ("CONJ_DRISKO_1_6", "CONJ_GEN_5_3"):
            payload["n"] = (sides[0] + 1) // 2
        elif statement == "CONJ_FRACD_5_1":
            H = hypergraph_from_json(data)
            payload["n"] = sides[0]
            payload["d"] = min_degree(H, "A")
        else:
            payload["n"] = sides[0]
        return payload
    if kind == "partition" and "graph" in data and "parts" in data:
        return {"pgraph": data, "deficiency": 0}
    if kind == "lemma" and {"left", "right", "edges"} <= set(data):
        return {"bipartite": data, "ell": 2}
    raise ValueError(f"cannot interpret payload for {statement}: keys {sorted(data)}")


def verify_serialized_stream(statement, payloads, *, cert_dir=None):
    """Judge already-serialized instances (the stdin pipe mode)."""
    instances = (
        deserialize_instance(statement, adapt_payload(statement, p)) for p in payloads
    )
    report = VerificationReport(statement=statement, scope={"mode": "stdin"})
    start = time.monotonic()
    _judge_stream(statement, instances, report, cert_dir)
    report.wall_time = time.monotonic() - start
    return report


def hunt(statement, budget, seed, *, params=None, cert_dir=None, jobs=1):
    """Randomized counterexample hunt for a conjecture.

    Absence of violations means only "none found within the budget".
    """
    if statement not in CONJECTURE_IDS:
        raise ValueError(f"{statement} is not a conjecture id")
    scope = Scope("randomized", trials=budget, seed=seed, params=params or {})
    return verify(statement, scope, cert_dir=cert_dir, jobs=jobs)


def check_accommodating(a, n, *, trials=50, seed=0, cert_dir=None):
    """Both directions of the threshold characterization for one sequence.

    Accommodating-shaped sequences are probed with random compliant families
    (none may lack a rainbow n-matching); other sequences must be defeated
    by the explicit constructed family.
    """
    a = tuple(int(x) for x in a)
    if len(a) != 2 * n - 1 or list(a) != sorted(a):
        raise ValueError("sequence must be ascending of length 2n-1")
    report = VerificationReport(
        statement="ACCOMMODATING_1_8",
        scope={"mode": "sequence", "a": list(a), "n": n, "trials": trials, "seed": seed},
        seed=seed,
    )
    start = time.monotonic()
    rng = random.Random(seed)
    if is_accommodating_shaped(a, n):
        instances = (
            {"family": _family_meeting_profile(a, n, rng), "n": n, "expect": True}
            for _ in range(trials)
        )
    else:
        instances = iter(
            [{"family": cons.gen_accommodating_counterexample(a, n), "n": n,
              "expect": False}]
        )
    _judge_stream("ACCOMMODATING_1_8", instances, report, cert_dir)
    report.wall_time = time.monotonic() - start
    return report


# ---------------------------------------------------------------------------
# Shipped theorem-suite scopes: every id here must report zero violations.

SHIPPED_SCOPES = {
    "DRISKO_1_5": Scope("randomized", trials=300, seed=190041, params={"n_values": [2, 3]}),
    "IMPROVED_1_7": Scope("randomized", trials=300, seed=190042, params={"n_values": [2, 3]}),
    "ACCOMMODATING_1_8": Scope("randomized", trials=120, seed=190043, params={"n": 2}),
    "ALMOST_DRISKO_1_9": Scope("randomized", trials=300, seed=190044, params={"n_values": [2, 3]}),
    "CAMWAN_1_10": Scope("exhaustive", params={"max_order": 4}),
    "STRONG_CAMWAN_1_12": Scope("exhaustive", params={"max_order": 4}),
    "TOPHALL_2_3": Scope("randomized", trials=120, seed=190045, params={}),
    "TOPHALL_DEF_2_4": Scope("randomized", trials=120, seed=190046, params={}),
    "ETA_GE_PSI_2_5": Scope("exhaustive", params={"max_vertices": 6}),
    "LEMMA_3_1": Scope("randomized", trials=200, seed=190047, params={"ells": [2, 3]}),
}


def run_theorem_suite(*, cert_dir=None, progress=None, jobs=1):
    """Run every theorem at its shipped scope; returns (reports, all_clean)."""
    reports = []
    clean = True
    for statement in THEOREM_IDS:
        scope = SHIPPED_SCOPES[statement]
        report = verify(statement, scope, cert_dir=cert_dir, jobs=jobs)
        reports.append(report)
        if report.violations:
            clean = False
        if progress is not None:
            progress(report)
    return reports, clean
