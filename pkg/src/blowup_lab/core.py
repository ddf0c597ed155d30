"""Combinatorial ground types and exact decision oracles.

Vertices and ground-set elements are 0-indexed everywhere.  Every type is
an immutable dataclass validated at construction time, and every operation
is a pure function, so instances can be shared freely between threads.

The decision oracles (clique number, K^3_4 containment, directed 4-cycle
detection) run exhaustive searches over bitmask adjacency and refuse
instances with more than 64 vertices rather than silently degrade into
heuristics.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable

import numpy as np

from .errors import ConstraintError, InputError

EXACT_ORACLE_LIMIT = 64

SUM_TOLERANCE = 1e-9          # simplex weights must sum to 1 within this
PAIR_WEIGHT_TOLERANCE = 1e-12  # p(u->v) + p(v->u) must equal 1 within this


def _check_oracle_size(n: int) -> None:
    if n > EXACT_ORACLE_LIMIT:
        raise ConstraintError("instance too large for exact oracle")


def mask_of(elements: Iterable[int]) -> int:
    """Bitmask encoding of a set of nonnegative integers."""
    m = 0
    for e in elements:
        m |= 1 << e
    return m


def elements_of(mask: int) -> tuple[int, ...]:
    """Sorted elements of a bitmask-encoded set."""
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return tuple(out)


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph; edges are stored as sorted (u, v) pairs with u < v."""

    n: int
    edges: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        if self.n < 0:
            raise InputError("vertex count must be nonnegative")
        prev = None
        for e in self.edges:
            u, v = e
            if not (0 <= u < v < self.n):
                raise InputError(f"edge {e} out of range for n={self.n}")
            if prev is not None and e <= prev:
                raise InputError("edges must be sorted and distinct")
            prev = e

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        canon = set()
        for u, v in edges:
            if u == v:
                raise InputError(f"self-loop at vertex {u}")
            canon.add((u, v) if u < v else (v, u))
        return cls(n, tuple(sorted(canon)))

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @cached_property
    def edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return ((u, v) if u < v else (v, u)) in self.edge_set

    @cached_property
    def adjacency_masks(self) -> tuple[int, ...]:
        masks = [0] * self.n
        for u, v in self.edges:
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        return tuple(masks)


@dataclass(frozen=True)
class TripleSystem:
    """3-uniform hypergraph; triples are sorted (u, v, w) with u < v < w."""

    n: int
    triples: tuple[tuple[int, int, int], ...] = ()

    def __post_init__(self) -> None:
        if self.n < 0:
            raise InputError("vertex count must be nonnegative")
        prev = None
        for t in self.triples:
            u, v, w = t
            if not (0 <= u < v < w < self.n):
                raise InputError(f"triple {t} out of range for n={self.n}")
            if prev is not None and t <= prev:
                raise InputError("triples must be sorted and distinct")
            prev = t

    @classmethod
    def from_triples(cls, n: int, triples: Iterable[Iterable[int]]) -> "TripleSystem":
        canon = set()
        for t in triples:
            t = tuple(sorted(t))
            if len(t) != 3 or len(set(t)) != 3:
                raise InputError(f"triple {t} must have three distinct vertices")
            canon.add(t)
        return cls(n, tuple(sorted(canon)))

    @property
    def triple_count(self) -> int:
        return len(self.triples)

    @cached_property
    def triple_set(self) -> frozenset[tuple[int, int, int]]:
        return frozenset(self.triples)


@dataclass(frozen=True)
class OrientedGraph:
    """Directed graph without loops.  Opposite arc pairs are representable;
    operations that require a strict orientation check `is_oriented` themselves."""

    n: int
    arcs: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        if self.n < 0:
            raise InputError("vertex count must be nonnegative")
        prev = None
        for a in self.arcs:
            u, v = a
            if u == v:
                raise InputError(f"loop arc at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise InputError(f"arc {a} out of range for n={self.n}")
            if prev is not None and a <= prev:
                raise InputError("arcs must be sorted and distinct")
            prev = a

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable[tuple[int, int]]) -> "OrientedGraph":
        return cls(n, tuple(sorted(set(map(tuple, arcs)))))

    @property
    def arc_count(self) -> int:
        return len(self.arcs)

    @cached_property
    def arc_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.arcs)

    @cached_property
    def is_oriented(self) -> bool:
        """True when no pair of vertices carries arcs in both directions."""
        s = self.arc_set
        return all((v, u) not in s for u, v in self.arcs if u < v)

    @cached_property
    def out_masks(self) -> tuple[int, ...]:
        masks = [0] * self.n
        for u, v in self.arcs:
            masks[u] |= 1 << v
        return tuple(masks)

    @cached_property
    def in_masks(self) -> tuple[int, ...]:
        masks = [0] * self.n
        for u, v in self.arcs:
            masks[v] |= 1 << u
        return tuple(masks)


@dataclass(frozen=True)
class WeightedEdge:
    """Carried pair {u, v} with directional weights; forward is the weight of u->v."""

    u: int
    v: int
    forward: float
    backward: float


@dataclass(frozen=True)
class WeightedOrientation:
    """Fractional orientation: each carried pair {u, v} holds weights p(u->v)
    and p(v->u) summing to 1.  Pairs that are not carried have weight 0 in
    both directions."""

    n: int
    edges: tuple[WeightedEdge, ...] = ()

    def __post_init__(self) -> None:
        if self.n < 0:
            raise InputError("vertex count must be nonnegative")
        prev = None
        for e in self.edges:
            if not (0 <= e.u < e.v < self.n):
                raise InputError(f"pair ({e.u}, {e.v}) out of range for n={self.n}")
            if prev is not None and (e.u, e.v) <= prev:
                raise InputError("weighted pairs must be sorted and distinct")
            if not (0.0 <= e.forward <= 1.0 and 0.0 <= e.backward <= 1.0):
                raise InputError(f"directional weights on ({e.u}, {e.v}) must lie in [0, 1]")
            if abs(e.forward + e.backward - 1.0) > PAIR_WEIGHT_TOLERANCE:
                raise InputError(
                    f"directional weights on ({e.u}, {e.v}) must sum to 1"
                )
            prev = (e.u, e.v)

    @classmethod
    def from_pairs(cls, n: int, forward: dict[tuple[int, int], float]) -> "WeightedOrientation":
        """Build from a map (u, v) -> p(u->v); the reverse weight is 1 - p."""
        canon: dict[tuple[int, int], float] = {}
        for (u, v), p in forward.items():
            if u == v:
                raise InputError(f"loop pair at vertex {u}")
            key = (u, v) if u < v else (v, u)
            if key in canon:
                raise InputError(f"pair {key} specified twice")
            canon[key] = float(p) if u < v else 1.0 - float(p)
        edges = tuple(
            WeightedEdge(u, v, p, 1.0 - p) for (u, v), p in sorted(canon.items())
        )
        return cls(n, edges)

    @classmethod
    def from_arcs(cls, d: OrientedGraph) -> "WeightedOrientation":
        """All-or-nothing orientation: weight 1 along each arc of a strictly
        oriented digraph."""
        if not d.is_oriented:
            raise InputError("digraph must be strictly oriented")
        return cls.from_pairs(d.n, {(u, v): 1.0 for u, v in d.arcs})

    @cached_property
    def _weight_table(self) -> dict[tuple[int, int], float]:
        table: dict[tuple[int, int], float] = {}
        for e in self.edges:
            table[(e.u, e.v)] = e.forward
            table[(e.v, e.u)] = e.backward
        return table

    def weight(self, a: int, b: int) -> float:
        """Directional weight p(a->b); 0 for pairs that are not carried."""
        return self._weight_table.get((a, b), 0.0)

    @cached_property
    def support(self) -> Graph:
        """Undirected graph of carried pairs."""
        return Graph(self.n, tuple((e.u, e.v) for e in self.edges))


@dataclass(frozen=True)
class SimplexWeights:
    """Point of the probability simplex: nonnegative entries summing to 1."""

    x: tuple[float, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "x", tuple(float(v) for v in self.x))
        if len(self.x) == 0:
            raise InputError("simplex weights need at least one coordinate")
        if any(v < 0.0 for v in self.x):
            raise InputError("simplex weights must be nonnegative")
        if abs(sum(self.x) - 1.0) > SUM_TOLERANCE:
            raise InputError("simplex weights must sum to 1")

    @classmethod
    def uniform(cls, n: int) -> "SimplexWeights":
        if n < 1:
            raise InputError("uniform simplex point needs n >= 1")
        return cls((1.0 / n,) * n)

    @classmethod
    def normalized(cls, values: Iterable[float]) -> "SimplexWeights":
        vals = [float(v) for v in values]
        total = sum(vals)
        if total <= 0.0:
            raise InputError("cannot normalize a nonpositive weight vector")
        return cls(tuple(v / total for v in vals))

    def __len__(self) -> int:
        return len(self.x)

    def __getitem__(self, i: int) -> float:
        return self.x[i]

    def as_array(self) -> np.ndarray:
        return np.asarray(self.x, dtype=float)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(i for i, v in enumerate(self.x) if v > 0.0)


def _family_sort_key(mask: int) -> tuple[int, int]:
    return (mask.bit_count(), mask)


@dataclass(frozen=True)
class SetFamily:
    """Family of distinct subsets of {0, ..., n-1}, each stored as a bitmask.
    Members are kept sorted by (cardinality, mask value)."""

    n: int
    sets: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.n < 0:
            raise InputError("ground set size must be nonnegative")
        limit = 1 << self.n
        prev_key = None
        for m in self.sets:
            if not (0 <= m < limit):
                raise InputError(f"member set {m:#b} out of range for n={self.n}")
            key = _family_sort_key(m)
            if prev_key is not None and key <= prev_key:
                raise InputError("member sets must be sorted and distinct")
            prev_key = key

    @classmethod
    def from_masks(cls, n: int, masks: Iterable[int]) -> "SetFamily":
        return cls(n, tuple(sorted(set(masks), key=_family_sort_key)))

    @classmethod
    def from_sets(cls, n: int, sets: Iterable[Iterable[int]]) -> "SetFamily":
        return cls.from_masks(n, (mask_of(s) for s in sets))

    def __len__(self) -> int:
        return len(self.sets)

    @cached_property
    def mask_set(self) -> frozenset[int]:
        return frozenset(self.sets)

    def members(self) -> tuple[tuple[int, ...], ...]:
        return tuple(elements_of(m) for m in self.sets)


def maximum_clique(g: Graph) -> tuple[int, ...]:
    """Deterministic maximum clique of `g` found by bitmask branch and bound.

    The search explores vertices in ascending index order and keeps the first
    clique of each improved size, so the witness depends only on the graph.
    """
    _check_oracle_size(g.n)
    if g.n == 0:
        return ()
    adj = g.adjacency_masks
    best: list[int] = []
    clique: list[int] = []

    def grow(cand: int) -> None:
        nonlocal best
        if len(clique) + cand.bit_count() <= len(best):
            return
        if cand == 0:
            best = clique.copy()
            return
        v = (cand & -cand).bit_length() - 1
        clique.append(v)
        grow(cand & adj[v])
        clique.pop()
        grow(cand & (cand - 1))

    grow((1 << g.n) - 1)
    return tuple(best)


def clique_number(g: Graph) -> int:
    """Exact clique number; 0 for the empty vertex set."""
    return len(maximum_clique(g))


def is_kr1_free(g: Graph, r: int) -> bool:
    """True when `g` has no complete subgraph on r + 1 vertices."""
    if r < 1:
        raise InputError("clique order bound r must be at least 1")
    return clique_number(g) <= r


def contains_k34(t: TripleSystem) -> bool:
    """True when some 4 vertices carry all 4 of their triples (a complete
    3-graph on 4 vertices)."""
    _check_oracle_size(t.n)
    if t.triple_count < 4:
        return False
    tri = t.triple_set
    degree = Counter(v for tr in t.triples for v in tr)
    candidates = sorted(v for v, c in degree.items() if c >= 3)
    for a, b, c, d in combinations(candidates, 4):
        if (
            (a, b, c) in tri
            and (a, b, d) in tri
            and (a, c, d) in tri
            and (b, c, d) in tri
        ):
            return True
    return False


def has_directed_4cycle(d: OrientedGraph) -> bool:
    """True when there are distinct vertices a, x, c, y with arcs
    a->x->c->y->a.  Chords are irrelevant: the cycle is a subgraph, not an
    induced one."""
    _check_oracle_size(d.n)
    succ = d.out_masks
    pred = d.in_masks
    for a in range(d.n):
        if not succ[a] or not pred[a]:
            continue
        for c in range(d.n):
            if c == a:
                continue
            excl = ~((1 << a) | (1 << c))
            fwd = succ[a] & pred[c] & excl
            if not fwd:
                continue
            back = succ[c] & pred[a] & excl
            if not back:
                continue
            if fwd != back or fwd.bit_count() > 1:
                return True
    return False


def is_union_closed(f: SetFamily) -> bool:
    """True when the union of any two member sets is a member."""
    if not f.sets:
        raise InputError("family must be non-empty")
    masks = f.sets
    if len(masks) <= 64:
        have = f.mask_set
        for i, a in enumerate(masks):
            for b in masks[i + 1 :]:
                if (a | b) not in have:
                    return False
        return True
    # quadratically many unions; do the membership test vectorized
    arr = np.sort(np.asarray(masks, dtype=np.int64))
    unions = arr[:, None] | arr[None, :]
    pos = np.searchsorted(arr, unions)
    pos[pos == len(arr)] = len(arr) - 1
    return bool((arr[pos] == unions).all())


def union_closure(f: SetFamily) -> SetFamily:
    """Smallest union-closed family containing `f`; idempotent."""
    if not f.sets:
        raise InputError("family must be non-empty")
    members = set(f.sets)
    frontier = list(members)
    while frontier:
        snapshot = list(members)
        fresh = []
        for a in frontier:
            for b in snapshot:
                u = a | b
                if u not in members:
                    members.add(u)
                    fresh.append(u)
        frontier = fresh
    return SetFamily.from_masks(f.n, members)
