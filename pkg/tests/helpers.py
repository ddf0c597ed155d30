"""Shared brute-force oracles and instance generators.

Oracles here deliberately use different algorithms than the library (plain
subset enumeration instead of branch and bound, ordered-tuple scans instead
of bitmask neighborhoods, frozenset unions instead of sorted-mask lookups)
so the two routes check each other rather than sharing bugs.
"""
from __future__ import annotations

from itertools import combinations, permutations, product

import numpy as np

from blowup_lab import (
    Graph,
    OrientedGraph,
    SetFamily,
    SimplexWeights,
    WeightedOrientation,
)


def brute_clique_number(g: Graph) -> int:
    for size in range(g.n, 0, -1):
        for sub in combinations(range(g.n), size):
            if all(g.has_edge(u, v) for u, v in combinations(sub, 2)):
                return size
    return 0


def brute_has_c4(d: OrientedGraph) -> bool:
    s = d.arc_set
    for a, b, c, e in permutations(range(d.n), 4):
        if (a, b) in s and (b, c) in s and (c, e) in s and (e, a) in s:
            return True
    return False


def brute_k34(t) -> bool:
    ts = t.triple_set
    for quad in combinations(range(t.n), 4):
        if all(tr in ts for tr in combinations(quad, 3)):
            return True
    return False


def brute_union_closed(f: SetFamily) -> bool:
    members = [frozenset(m) for m in f.members()]
    have = set(members)
    return all((a | b) in have for a in members for b in members)


def graph_lagrangian_raw(g: Graph, w) -> float:
    return sum(w[u] * w[v] for u, v in g.edges)


# ---------------------------------------------------------------------------
# exhaustive populations


def all_graphs(n: int):
    pairs = list(combinations(range(n), 2))
    for bits in product((0, 1), repeat=len(pairs)):
        yield Graph(n, tuple(p for p, b in zip(pairs, bits) if b))


def all_oriented(n: int):
    """All strictly oriented digraphs on n labeled vertices (3 states per pair)."""
    pairs = list(combinations(range(n), 2))
    for states in product((0, 1, 2), repeat=len(pairs)):
        arcs = []
        for (u, v), s in zip(pairs, states):
            if s == 1:
                arcs.append((u, v))
            elif s == 2:
                arcs.append((v, u))
        yield OrientedGraph.from_arcs(n, arcs)


def _min_codes(n: int, states: np.ndarray, flip: list[int]) -> np.ndarray:
    """Per-row minimum relabeling code: pair j holds a state; a vertex
    permutation moves it to another pair slot, flipping the state when the
    pair order reverses.  The code of a row is sum(state_j * base^slot_j)."""
    pairs = list(combinations(range(n), 2))
    index = {p: i for i, p in enumerate(pairs)}
    base = len(flip)
    powers = base ** np.arange(len(pairs), dtype=np.int64)
    flip_arr = np.asarray(flip, dtype=states.dtype)
    best: np.ndarray | None = None
    wide = states.astype(np.int64)
    for perm in permutations(range(n)):
        slot = np.empty(len(pairs), dtype=np.int64)
        flipped = np.zeros(len(pairs), dtype=bool)
        for j, (u, v) in enumerate(pairs):
            a, b = perm[u], perm[v]
            slot[j] = index[(a, b) if a < b else (b, a)]
            flipped[j] = a > b
        m = wide
        if flipped.any():
            m = states.copy()
            m[:, flipped] = flip_arr[m[:, flipped]]
            m = m.astype(np.int64)
        codes = m @ powers[slot]
        best = codes if best is None else np.minimum(best, codes)
    return best


def _first_per_code(codes: np.ndarray) -> list[int]:
    _, first = np.unique(codes, return_index=True)
    return sorted(int(i) for i in first)


def iso_distinct_graphs(n: int) -> list[Graph]:
    pairs = list(combinations(range(n), 2))
    states = np.array(list(product((0, 1), repeat=len(pairs))), dtype=np.int8)
    reps = []
    for i in _first_per_code(_min_codes(n, states, [0, 1])):
        row = states[i]
        reps.append(Graph(n, tuple(p for p, s in zip(pairs, row) if s)))
    return reps


def iso_distinct_oriented(n: int) -> list[OrientedGraph]:
    pairs = list(combinations(range(n), 2))
    states = np.array(list(product((0, 1, 2), repeat=len(pairs))), dtype=np.int8)
    reps = []
    for i in _first_per_code(_min_codes(n, states, [0, 2, 1])):
        arcs = []
        for (u, v), s in zip(pairs, states[i]):
            if s == 1:
                arcs.append((u, v))
            elif s == 2:
                arcs.append((v, u))
        reps.append(OrientedGraph.from_arcs(n, arcs))
    return reps


# ---------------------------------------------------------------------------
# random instances


def random_graph(n: int, rng: np.random.Generator, p: float = 0.5) -> Graph:
    edges = [pair for pair in combinations(range(n), 2) if rng.random() < p]
    return Graph(n, tuple(edges))


def random_oriented(n: int, rng: np.random.Generator) -> OrientedGraph:
    arcs = []
    for u, v in combinations(range(n), 2):
        s = int(rng.integers(0, 3))
        if s == 1:
            arcs.append((u, v))
        elif s == 2:
            arcs.append((v, u))
    return OrientedGraph.from_arcs(n, arcs)


def random_simplex(n: int, rng: np.random.Generator) -> SimplexWeights:
    return SimplexWeights.normalized(rng.dirichlet(np.ones(n)))


def random_weighted_orientation(
    n: int, rng: np.random.Generator, p_edge: float = 0.6
) -> WeightedOrientation:
    forward = {}
    for u, v in combinations(range(n), 2):
        if rng.random() < p_edge:
            forward[(u, v)] = float(rng.random())
    return WeightedOrientation.from_pairs(n, forward)


# ---------------------------------------------------------------------------
# named fixtures


def complete_graph(n: int) -> Graph:
    return Graph(n, tuple(combinations(range(n), 2)))


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return Graph(n, tuple((i, i + 1) for i in range(n - 1)))


def petersen() -> Graph:
    edges = []
    for i in range(5):
        edges.append((i, (i + 1) % 5))
        edges.append((5 + i, 5 + (i + 2) % 5))
        edges.append((i, 5 + i))
    return Graph.from_edges(10, edges)


def complete_multipartite(parts: list[int]) -> Graph:
    bounds = np.cumsum([0, *parts])
    n = int(bounds[-1])
    block = np.zeros(n, dtype=int)
    for b in range(len(parts)):
        block[bounds[b] : bounds[b + 1]] = b
    edges = [
        (u, v) for u, v in combinations(range(n), 2) if block[u] != block[v]
    ]
    return Graph(n, tuple(edges))


def directed_cycle(n: int) -> OrientedGraph:
    return OrientedGraph.from_arcs(n, [(i, (i + 1) % n) for i in range(n)])


def transitive_tournament(n: int) -> OrientedGraph:
    return OrientedGraph.from_arcs(n, list(combinations(range(n), 2)))
