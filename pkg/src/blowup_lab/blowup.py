"""Blow-up constructions.

A blow-up replaces each vertex v by an independent block I_v of c_v fresh
vertices.  Blocks are assigned contiguously in vertex order, so vertex v
occupies indices [start_v, start_v + c_v); a zero size deletes the vertex
without renumbering the blocks that precede it.

For 3-uniform systems the blow-up takes an extra directed augmentation
D = (V, A): besides the triples with one vertex in each of three blocks of a
carried triple, every arc u->v contributes the triples made of two distinct
vertices of I_u and one of I_v.  The augmentation is only sound when D has
no opposite arc pair and no arc pair u->v, u->w whose endpoints {u, v, w}
form a carried triple; either configuration blows up into a complete
3-graph on 4 vertices.

`fdf_construct` builds the classical 3-graph of an oriented graph in which
a triple is an edge exactly when it induces at least two arcs and no vertex
of the triple has out-degree 2 within it (so directed paths, in-stars and
directed triangles are edges; out-stars and transitive triangles are not).
"""
from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from math import comb

from .core import Graph, OrientedGraph, TripleSystem
from .errors import ConstraintError, InputError

VIOLATION_OPPOSITE_ARCS = "opposite-arcs"
VIOLATION_OUT_PAIR = "out-pair-on-triple"


@dataclass(frozen=True)
class BlowupSpec:
    """Block sizes c_v >= 0, one per original vertex."""

    sizes: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "sizes", tuple(int(c) for c in self.sizes))
        if any(c < 0 for c in self.sizes):
            raise InputError("block sizes must be nonnegative")

    def __len__(self) -> int:
        return len(self.sizes)


@dataclass(frozen=True)
class VertexMap:
    """Assignment of contiguous, disjoint index ranges to original vertices."""

    sizes: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "sizes", tuple(int(c) for c in self.sizes))
        if any(c < 0 for c in self.sizes):
            raise InputError("block sizes must be nonnegative")

    @cached_property
    def starts(self) -> tuple[int, ...]:
        acc = [0]
        for c in self.sizes:
            acc.append(acc[-1] + c)
        return tuple(acc)

    @property
    def total(self) -> int:
        return self.starts[-1]

    def block(self, v: int) -> range:
        """New indices of the block that replaced original vertex v."""
        return range(self.starts[v], self.starts[v + 1])

    def origin(self, vertex: int) -> int:
        """Original vertex whose block contains `vertex`."""
        if not (0 <= vertex < self.total):
            raise InputError(f"vertex {vertex} outside the blown-up range")
        return bisect_right(self.starts, vertex) - 1


@dataclass(frozen=True)
class AugmentationViolation:
    """One reason a directed augmentation is refused.

    kind 'opposite-arcs' carries the pair (u, v) with both arcs present;
    kind 'out-pair-on-triple' carries (u, v, w) where u->v and u->w are arcs
    and {u, v, w} is already a carried triple.
    """

    kind: str
    vertices: tuple[int, ...]


def _blowup_pre(n: int, spec: BlowupSpec) -> VertexMap:
    if len(spec.sizes) != n:
        raise InputError(
            f"size vector has {len(spec.sizes)} entries for {n} vertices"
        )
    return VertexMap(spec.sizes)


def blow_up_graph(g: Graph, spec: BlowupSpec) -> tuple[Graph, VertexMap]:
    """Graph blow-up: blocks are independent sets, and each original edge uv
    becomes the complete bipartite pattern between I_u and I_v, giving
    sum(c_u * c_v) edges over the original edge set."""
    vm = _blowup_pre(g.n, spec)
    edges = []
    for u, v in g.edges:
        for a in vm.block(u):
            for b in vm.block(v):
                edges.append((a, b) if a < b else (b, a))
    return Graph(vm.total, tuple(sorted(edges))), vm


def validate_augmentation(
    t: TripleSystem, d: OrientedGraph
) -> list[AugmentationViolation]:
    """All violations that make the pair (t, d) unsafe to blow up, in a
    deterministic order: opposite arc pairs sorted by pair, then arc pairs
    u->v, u->w lying on a carried triple sorted by (u, v, w)."""
    if t.n != d.n:
        raise InputError("triple system and digraph must share a vertex set")
    arcs = d.arc_set
    out: list[AugmentationViolation] = []
    for u, v in sorted(arcs):
        if u < v and (v, u) in arcs:
            out.append(AugmentationViolation(VIOLATION_OPPOSITE_ARCS, (u, v)))
    tri = t.triple_set
    for u in range(d.n):
        heads = sorted(v for (a, v) in arcs if a == u)
        for v, w in combinations(heads, 2):
            if tuple(sorted((u, v, w))) in tri:
                out.append(AugmentationViolation(VIOLATION_OUT_PAIR, (u, v, w)))
    return out


def blow_up_3graph(
    t: TripleSystem,
    d: OrientedGraph,
    spec: BlowupSpec,
    *,
    force: bool = False,
) -> tuple[TripleSystem, VertexMap]:
    """Augmented 3-graph blow-up.

    Carried triples contribute one triple per choice of a vertex from each
    of their three blocks; each arc u->v contributes the triples made of two
    distinct vertices of I_u and one vertex of I_v.  The resulting count is
    exactly sum(c_u c_v c_w) over triples plus sum(C(c_u, 2) c_v) over arcs.

    Refuses an invalid augmentation unless `force` is set.
    """
    if t.n != d.n:
        raise InputError("triple system and digraph must share a vertex set")
    vm = _blowup_pre(t.n, spec)
    if not force:
        violations = validate_augmentation(t, d)
        if violations:
            detail = "; ".join(
                f"{v.kind} at {v.vertices}" for v in violations
            )
            raise ConstraintError(f"augmentation refused: {detail}")
    triples = []
    for u, v, w in t.triples:
        for a in vm.block(u):
            for b in vm.block(v):
                for c in vm.block(w):
                    triples.append(tuple(sorted((a, b, c))))
    for u, v in d.arcs:
        for a, b in combinations(vm.block(u), 2):
            for c in vm.block(v):
                triples.append(tuple(sorted((a, b, c))))
    return TripleSystem(vm.total, tuple(sorted(triples))), vm


def fdf_construct(d: OrientedGraph) -> TripleSystem:
    """3-graph of a strictly oriented digraph: a triple is an edge when it
    induces at least two arcs and no vertex of the triple has out-degree 2
    within it."""
    if not d.is_oriented:
        raise ConstraintError("digraph must be strictly oriented (no opposite arcs)")
    arcs = d.arc_set
    triples = []
    for a, b, c in combinations(range(d.n), 3):
        count = 0
        star = False
        for x, y, z in ((a, b, c), (b, a, c), (c, a, b)):
            first = (x, y) in arcs
            second = (x, z) in arcs
            count += first + second
            if first and second:
                star = True
        if count >= 2 and not star:
            triples.append((a, b, c))
    return TripleSystem(d.n, tuple(triples))


def edge_density(t: TripleSystem) -> float:
    """Fraction of the C(n, 3) possible triples that are present; needs n >= 3."""
    if t.n < 3:
        raise InputError("edge density needs at least 3 vertices")
    return t.triple_count / comb(t.n, 3)
