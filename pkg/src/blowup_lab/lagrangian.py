"""Simplex-constrained density objectives and the merging reduction.

`graph_lagrangian` is the edge polynomial sum x_u x_v over edges, maximized
over the probability simplex.  Its maximum is (1 - 1/w)/2 where w is the
clique number: `ms_reduce` realizes the constructive half by repeatedly
absorbing the weight of one vertex of a positive non-adjacent pair into the
other, never decreasing the value, until the support is a clique.

The remaining objectives score a directed augmentation:

* `lambda1(t, d, x)`  = sum_{uvw in t} x_u x_v x_w + (1/2) sum_{u->v} x_u^2 x_v
* `lambda2(w, x)`     replaces the hard orientation by directional weights
  p(u->v) + p(v->u) = 1 on carried pairs: every triple with at least two
  carried pairs enters with coefficient 1 - sum over its vertices z of
  p(z->a) p(z->b), and each carried pair adds
  (1/2)(p(u->v)^2 x_u^2 x_v + p(v->u)^2 x_v^2 x_u).
* `lambda_intermediate(w, x)` keeps the triple and pair sums of lambda2 with
  coefficient 1 but subtracts (1/2) sum_u x_u (sum_v p(u->v) x_v)^2.
* `lambda3(w, x)`     subtracts instead (1/2)(sum of x_u x_v over carried
  pairs)^2, which no longer depends on the directional weights.

Pointwise, lambda2 <= lambda_intermediate <= lambda3: the first gap equals
sum over carried pairs of p(u->v) p(v->u) x_u x_v (x_u + x_v), the second is
an application of the Cauchy-Schwarz inequality with weights x.

Every objective has an analytic gradient function next to it; the optimizer
cross-checks these against central finite differences.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .core import (
    Graph,
    OrientedGraph,
    SimplexWeights,
    TripleSystem,
    WeightedOrientation,
    maximum_clique,
)
from .errors import ConstraintError, InputError


@dataclass(frozen=True)
class ObjectiveValue:
    """Achieved objective value together with the point that achieves it.
    `orientation` carries the directional weights when the objective has
    them (lambda2); it is None otherwise."""

    value: float
    witness: SimplexWeights
    orientation: WeightedOrientation | None = None


@dataclass(frozen=True)
class ReductionStep:
    """One merge: the weight of `removed` was absorbed into `absorber`."""

    removed: int
    absorber: int
    value_before: float
    value_after: float


@dataclass(frozen=True)
class ReductionTrace:
    steps: tuple[ReductionStep, ...]
    support: tuple[int, ...]
    weights: SimplexWeights


def _check_dims(n: int, x: SimplexWeights) -> None:
    if len(x) != n:
        raise InputError(f"weight vector has {len(x)} entries for {n} vertices")


def graph_lagrangian(g: Graph, x: SimplexWeights) -> float:
    """Edge polynomial sum of x_u x_v over the edges of g."""
    _check_dims(g.n, x)
    return sum(x[u] * x[v] for u, v in g.edges)


def graph_lagrangian_grad(g: Graph, x: SimplexWeights) -> tuple[float, ...]:
    _check_dims(g.n, x)
    grad = [0.0] * g.n
    for u, v in g.edges:
        grad[u] += x[v]
        grad[v] += x[u]
    return tuple(grad)


def ms_reduce(g: Graph, x: SimplexWeights) -> ReductionTrace:
    """Merge weight across non-adjacent pairs until the support is a clique.

    Scans positive non-adjacent pairs (a, b) in lexicographic order and
    resolves the first one found: of the two ways to shift the combined
    weight onto a single vertex, the one with the larger resulting value is
    kept, ties going to the lower-indexed vertex.  Each step satisfies
    (x_a + x_b) L(x) = x_a L(x with b absorbed) + x_b L(x with a absorbed),
    so the kept value never decreases.
    """
    _check_dims(g.n, x)
    w = list(x.x)
    edge_set = g.edge_set

    def value(vec: list[float]) -> float:
        return sum(vec[u] * vec[v] for u, v in g.edges)

    steps: list[ReductionStep] = []
    while True:
        pair = None
        for a, b in combinations(range(g.n), 2):
            if w[a] > 0.0 and w[b] > 0.0 and (a, b) not in edge_set:
                pair = (a, b)
                break
        if pair is None:
            break
        a, b = pair
        before = value(w)
        keep_a = w.copy()
        keep_a[a] += keep_a[b]
        keep_a[b] = 0.0
        keep_b = w.copy()
        keep_b[b] += keep_b[a]
        keep_b[a] = 0.0
        value_a = value(keep_a)
        value_b = value(keep_b)
        if value_a >= value_b:
            w = keep_a
            steps.append(ReductionStep(b, a, before, value_a))
        else:
            w = keep_b
            steps.append(ReductionStep(a, b, before, value_b))
    support = tuple(v for v in range(g.n) if w[v] > 0.0)
    return ReductionTrace(tuple(steps), support, SimplexWeights(tuple(w)))


def graph_lagrangian_max(g: Graph) -> ObjectiveValue:
    """Closed-form simplex maximum (1 - 1/w)/2 of the edge polynomial, where
    w is the clique number, witnessed by the uniform point on a maximum
    clique."""
    if g.n == 0:
        raise InputError("graph has an empty vertex set")
    clique = maximum_clique(g)
    omega = len(clique)
    member = set(clique)
    witness = SimplexWeights.normalized(
        tuple(1.0 if v in member else 0.0 for v in range(g.n))
    )
    return ObjectiveValue(0.5 * (1.0 - 1.0 / omega), witness)


def lambda1(t: TripleSystem, d: OrientedGraph, x: SimplexWeights) -> float:
    """Triple polynomial plus the arc correction (1/2) sum x_u^2 x_v."""
    if t.n != d.n:
        raise InputError("triple system and digraph must share a vertex set")
    _check_dims(t.n, x)
    if not d.is_oriented:
        raise ConstraintError("digraph must be strictly oriented (no opposite arcs)")
    total = sum(x[u] * x[v] * x[w] for u, v, w in t.triples)
    total += 0.5 * sum(x[u] * x[u] * x[v] for u, v in d.arcs)
    return total


def lambda1_grad(
    t: TripleSystem, d: OrientedGraph, x: SimplexWeights
) -> tuple[float, ...]:
    if t.n != d.n:
        raise InputError("triple system and digraph must share a vertex set")
    _check_dims(t.n, x)
    if not d.is_oriented:
        raise ConstraintError("digraph must be strictly oriented (no opposite arcs)")
    grad = [0.0] * t.n
    for u, v, w in t.triples:
        grad[u] += x[v] * x[w]
        grad[v] += x[u] * x[w]
        grad[w] += x[u] * x[v]
    for u, v in d.arcs:
        grad[u] += x[u] * x[v]
        grad[v] += 0.5 * x[u] * x[u]
    return tuple(grad)


def derive_E_from_support(w: WeightedOrientation) -> TripleSystem:
    """Triples at least two of whose pairs are carried by the orientation."""
    adj = w.support.adjacency_masks
    triples = []
    for a, b, c in combinations(range(w.n), 3):
        carried = (
            (adj[a] >> b & 1) + (adj[a] >> c & 1) + (adj[b] >> c & 1)
        )
        if carried >= 2:
            triples.append((a, b, c))
    return TripleSystem(w.n, tuple(triples))


def _triple_coefficient(w: WeightedOrientation, a: int, b: int, c: int) -> float:
    coeff = 1.0
    for z, s, t in ((a, b, c), (b, a, c), (c, a, b)):
        coeff -= w.weight(z, s) * w.weight(z, t)
    return coeff


def lambda2(w: WeightedOrientation, x: SimplexWeights) -> float:
    """Weighted-orientation objective; the triple set is always derived from
    the support, never supplied by the caller."""
    _check_dims(w.n, x)
    t = derive_E_from_support(w)
    total = sum(
        _triple_coefficient(w, a, b, c) * x[a] * x[b] * x[c]
        for a, b, c in t.triples
    )
    for e in w.edges:
        total += 0.5 * (
            e.forward * e.forward * x[e.u] * x[e.u] * x[e.v]
            + e.backward * e.backward * x[e.v] * x[e.v] * x[e.u]
        )
    return total


def lambda2_grad(w: WeightedOrientation, x: SimplexWeights) -> tuple[float, ...]:
    _check_dims(w.n, x)
    t = derive_E_from_support(w)
    grad = [0.0] * w.n
    for a, b, c in t.triples:
        coeff = _triple_coefficient(w, a, b, c)
        grad[a] += coeff * x[b] * x[c]
        grad[b] += coeff * x[a] * x[c]
        grad[c] += coeff * x[a] * x[b]
    for e in w.edges:
        fwd2 = e.forward * e.forward
        bwd2 = e.backward * e.backward
        grad[e.u] += fwd2 * x[e.u] * x[e.v] + 0.5 * bwd2 * x[e.v] * x[e.v]
        grad[e.v] += 0.5 * fwd2 * x[e.u] * x[e.u] + bwd2 * x[e.v] * x[e.u]
    return tuple(grad)


def _out_sums(w: WeightedOrientation, x: SimplexWeights) -> list[float]:
    s = [0.0] * w.n
    for e in w.edges:
        s[e.u] += e.forward * x[e.v]
        s[e.v] += e.backward * x[e.u]
    return s


def lambda_intermediate(w: WeightedOrientation, x: SimplexWeights) -> float:
    """Between lambda2 and lambda3: subtracts the per-vertex squared
    out-weight (1/2) sum_u x_u (sum_v p(u->v) x_v)^2."""
    _check_dims(w.n, x)
    t = derive_E_from_support(w)
    total = sum(x[a] * x[b] * x[c] for a, b, c in t.triples)
    for e in w.edges:
        total += 0.5 * (
            x[e.u] * x[e.u] * x[e.v] + x[e.v] * x[e.v] * x[e.u]
        )
    s = _out_sums(w, x)
    total -= 0.5 * sum(x[v] * s[v] * s[v] for v in range(w.n))
    return total


def lambda_intermediate_grad(
    w: WeightedOrientation, x: SimplexWeights
) -> tuple[float, ...]:
    _check_dims(w.n, x)
    t = derive_E_from_support(w)
    grad = [0.0] * w.n
    for a, b, c in t.triples:
        grad[a] += x[b] * x[c]
        grad[b] += x[a] * x[c]
        grad[c] += x[a] * x[b]
    for e in w.edges:
        grad[e.u] += x[e.u] * x[e.v] + 0.5 * x[e.v] * x[e.v]
        grad[e.v] += x[e.v] * x[e.u] + 0.5 * x[e.u] * x[e.u]
    s = _out_sums(w, x)
    for v in range(w.n):
        grad[v] -= 0.5 * s[v] * s[v]
    for e in w.edges:
        grad[e.v] -= x[e.u] * s[e.u] * e.forward
        grad[e.u] -= x[e.v] * s[e.v] * e.backward
    return tuple(grad)


def lambda3(w: WeightedOrientation, x: SimplexWeights) -> float:
    """Orientation-free relaxation: subtracts (1/2) of the squared carried
    edge polynomial; directional weights do not enter."""
    _check_dims(w.n, x)
    t = derive_E_from_support(w)
    total = sum(x[a] * x[b] * x[c] for a, b, c in t.triples)
    pair_sum = 0.0
    for e in w.edges:
        total += 0.5 * (
            x[e.u] * x[e.u] * x[e.v] + x[e.v] * x[e.v] * x[e.u]
        )
        pair_sum += x[e.u] * x[e.v]
    return total - 0.5 * pair_sum * pair_sum


def lambda3_grad(w: WeightedOrientation, x: SimplexWeights) -> tuple[float, ...]:
    _check_dims(w.n, x)
    t = derive_E_from_support(w)
    grad = [0.0] * w.n
    for a, b, c in t.triples:
        grad[a] += x[b] * x[c]
        grad[b] += x[a] * x[c]
        grad[c] += x[a] * x[b]
    pair_sum = sum(x[e.u] * x[e.v] for e in w.edges)
    for e in w.edges:
        grad[e.u] += x[e.u] * x[e.v] + 0.5 * x[e.v] * x[e.v]
        grad[e.v] += x[e.v] * x[e.u] + 0.5 * x[e.u] * x[e.u]
        grad[e.u] -= pair_sum * x[e.v]
        grad[e.v] -= pair_sum * x[e.u]
    return tuple(grad)
