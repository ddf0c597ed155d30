"""Simplex optimizers: an exact grid oracle and a multi-start ascent.

Both optimizers act on objective wrappers that bind an instance (graph,
triple system plus digraph, or weighted orientation) and evaluate whole
batches of simplex points as numpy arrays.  The wrappers mirror the scalar
reference implementations next to the objective definitions; tests pin the
two routes against each other.

grid_max enumerates every composition of m into n parts in lexicographic
order and reports the best grid point, breaking ties toward the earliest
point in enumeration order.  The composition count C(m + n - 1, n - 1) is
bounded by an explicit budget; larger requests are refused rather than
subsampled.

ascent_max runs `restarts` independent trajectories in one vectorized
batch: start 0 is the uniform point, the next min(n, restarts - 1) starts
are biased toward one vertex each, and the rest are Dirichlet draws from a
seeded generator.  Each trajectory performs multiplicative (exponentiated
gradient) steps with backtracking step control, so iterates stay in the
simplex and the value never decreases.  For lambda2 the x-ascent alternates
with coordinate-wise exact updates of the directional weights: the
objective is quadratic with nonnegative leading coefficient in each weight
pair, so the exact coordinate maximum sits at an endpoint p in {0, 1}.

The environment variable BLOWUPLAB_THREADS caps the evaluation workers used
by the grid oracle (0 means one per CPU); results are merged in enumeration
order, so the report does not depend on scheduling.
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import comb, inf
from typing import Callable, Iterator

import numpy as np

from . import lagrangian
from .core import (
    Graph,
    OrientedGraph,
    SimplexWeights,
    TripleSystem,
    WeightedOrientation,
)
from .errors import ConstraintError, InputError
from .lagrangian import ObjectiveValue, derive_E_from_support

GRID_BUDGET = 10**8

KIND_GRAPH_LAGRANGIAN = "graph-lagrangian"
KIND_LAMBDA1 = "lambda1"
KIND_LAMBDA2 = "lambda2"
KIND_LAMBDA3 = "lambda3"
KIND_LAMBDA_INTERMEDIATE = "lambda-intermediate"

GRID_KINDS = (KIND_GRAPH_LAGRANGIAN, KIND_LAMBDA1, KIND_LAMBDA3)
ASCENT_KINDS = (KIND_GRAPH_LAGRANGIAN, KIND_LAMBDA1, KIND_LAMBDA2, KIND_LAMBDA3)


def worker_count(env: dict | None = None) -> int:
    """Worker cap from BLOWUPLAB_THREADS; 0 requests one worker per CPU and
    an unset variable means sequential evaluation."""
    source = os.environ if env is None else env
    raw = source.get("BLOWUPLAB_THREADS", "1")
    try:
        k = int(raw)
    except ValueError:
        raise InputError("BLOWUPLAB_THREADS must be an integer") from None
    if k < 0:
        raise InputError("BLOWUPLAB_THREADS must be nonnegative")
    if k == 0:
        return os.cpu_count() or 1
    return k


@dataclass(frozen=True)
class GridResolution:
    """Denominator of the rational grid: points are compositions of m over m."""

    m: int

    def __post_init__(self) -> None:
        if self.m < 1:
            raise InputError("grid resolution must be at least 1")


@dataclass(frozen=True)
class AscentConfig:
    """Multi-start ascent parameters; identical seeds give identical runs."""

    restarts: int = 64
    max_iters: int = 10000
    tol: float = 1e-10
    seed: int = 0

    def __post_init__(self) -> None:
        if self.restarts < 1:
            raise InputError("ascent needs at least one restart")
        if self.max_iters < 1:
            raise InputError("ascent needs a positive iteration budget")
        if self.tol < 0.0:
            raise InputError("improvement tolerance must be nonnegative")


# ---------------------------------------------------------------------------
# objective wrappers


def _need_vertices(n: int) -> None:
    if n < 1:
        raise InputError("objective needs at least one vertex")


class GraphLagrangianObjective:
    """Batched edge polynomial of an undirected graph."""

    kind = KIND_GRAPH_LAGRANGIAN

    def __init__(self, graph: Graph):
        _need_vertices(graph.n)
        self.graph = graph
        self.n = graph.n
        a = np.zeros((graph.n, graph.n))
        for u, v in graph.edges:
            a[u, v] = a[v, u] = 1.0
        self._adj = a

    def value_batch(self, x: np.ndarray) -> np.ndarray:
        return 0.5 * np.einsum("ri,ij,rj->r", x, self._adj, x)

    def gradient_batch(self, x: np.ndarray) -> np.ndarray:
        return x @ self._adj

    def reference_value(self, x: SimplexWeights) -> float:
        return lagrangian.graph_lagrangian(self.graph, x)


def _scatter_add(grad: np.ndarray, cols: np.ndarray, vals: np.ndarray) -> None:
    # accumulate vals[:, j] into grad[:, cols[j]] with repeated columns allowed
    if cols.size:
        rows = np.arange(grad.shape[0])[:, None]
        np.add.at(grad, (rows, cols[None, :]), vals)


class Lambda1Objective:
    """Batched triple polynomial with the directed arc correction."""

    kind = KIND_LAMBDA1

    def __init__(self, triples: TripleSystem, digraph: OrientedGraph):
        if triples.n != digraph.n:
            raise InputError("triple system and digraph must share a vertex set")
        if not digraph.is_oriented:
            raise ConstraintError(
                "digraph must be strictly oriented (no opposite arcs)"
            )
        _need_vertices(triples.n)
        self.triples = triples
        self.digraph = digraph
        self.n = triples.n
        t = np.asarray(triples.triples, dtype=np.int64).reshape(-1, 3)
        a = np.asarray(digraph.arcs, dtype=np.int64).reshape(-1, 2)
        self._t0, self._t1, self._t2 = t[:, 0], t[:, 1], t[:, 2]
        self._a0, self._a1 = a[:, 0], a[:, 1]

    def value_batch(self, x: np.ndarray) -> np.ndarray:
        tri = (x[:, self._t0] * x[:, self._t1] * x[:, self._t2]).sum(axis=1)
        arc = (x[:, self._a0] ** 2 * x[:, self._a1]).sum(axis=1)
        return tri + 0.5 * arc

    def gradient_batch(self, x: np.ndarray) -> np.ndarray:
        grad = np.zeros_like(x)
        _scatter_add(grad, self._t0, x[:, self._t1] * x[:, self._t2])
        _scatter_add(grad, self._t1, x[:, self._t0] * x[:, self._t2])
        _scatter_add(grad, self._t2, x[:, self._t0] * x[:, self._t1])
        _scatter_add(grad, self._a0, x[:, self._a0] * x[:, self._a1])
        _scatter_add(grad, self._a1, 0.5 * x[:, self._a0] ** 2)
        return grad

    def reference_value(self, x: SimplexWeights) -> float:
        return lagrangian.lambda1(self.triples, self.digraph, x)


class Lambda3Objective:
    """Batched orientation-free relaxation over a carried-pair support."""

    kind = KIND_LAMBDA3

    def __init__(self, orientation: WeightedOrientation):
        _need_vertices(orientation.n)
        self.orientation = orientation
        self.n = orientation.n
        t = np.asarray(
            derive_E_from_support(orientation).triples, dtype=np.int64
        ).reshape(-1, 3)
        e = np.asarray(
            [(we.u, we.v) for we in orientation.edges], dtype=np.int64
        ).reshape(-1, 2)
        self._t0, self._t1, self._t2 = t[:, 0], t[:, 1], t[:, 2]
        self._e0, self._e1 = e[:, 0], e[:, 1]

    def value_batch(self, x: np.ndarray) -> np.ndarray:
        tri = (x[:, self._t0] * x[:, self._t1] * x[:, self._t2]).sum(axis=1)
        xu, xv = x[:, self._e0], x[:, self._e1]
        aug = (xu**2 * xv + xv**2 * xu).sum(axis=1)
        s = (xu * xv).sum(axis=1)
        return tri + 0.5 * aug - 0.5 * s * s

    def gradient_batch(self, x: np.ndarray) -> np.ndarray:
        grad = np.zeros_like(x)
        _scatter_add(grad, self._t0, x[:, self._t1] * x[:, self._t2])
        _scatter_add(grad, self._t1, x[:, self._t0] * x[:, self._t2])
        _scatter_add(grad, self._t2, x[:, self._t0] * x[:, self._t1])
        xu, xv = x[:, self._e0], x[:, self._e1]
        s = (xu * xv).sum(axis=1, keepdims=True)
        _scatter_add(grad, self._e0, xu * xv + 0.5 * xv**2 - s * xv)
        _scatter_add(grad, self._e1, xv * xu + 0.5 * xu**2 - s * xu)
        return grad

    def reference_value(self, x: SimplexWeights) -> float:
        return lagrangian.lambda3(self.orientation, x)


class LambdaIntermediateObjective:
    """Batched middle member of the lambda2 <= ... <= lambda3 chain; exposed
    for gradient checking and the chain tests, not for the optimizers."""

    kind = KIND_LAMBDA_INTERMEDIATE

    def __init__(self, orientation: WeightedOrientation):
        _need_vertices(orientation.n)
        self.orientation = orientation
        self.n = orientation.n
        t = np.asarray(
            derive_E_from_support(orientation).triples, dtype=np.int64
        ).reshape(-1, 3)
        e = np.asarray(
            [(we.u, we.v) for we in orientation.edges], dtype=np.int64
        ).reshape(-1, 2)
        self._t0, self._t1, self._t2 = t[:, 0], t[:, 1], t[:, 2]
        self._e0, self._e1 = e[:, 0], e[:, 1]
        self._fw = np.asarray([we.forward for we in orientation.edges])
        self._bw = np.asarray([we.backward for we in orientation.edges])

    def _out_sums(self, x: np.ndarray) -> np.ndarray:
        s = np.zeros_like(x)
        _scatter_add(s, self._e0, self._fw[None, :] * x[:, self._e1])
        _scatter_add(s, self._e1, self._bw[None, :] * x[:, self._e0])
        return s

    def value_batch(self, x: np.ndarray) -> np.ndarray:
        tri = (x[:, self._t0] * x[:, self._t1] * x[:, self._t2]).sum(axis=1)
        xu, xv = x[:, self._e0], x[:, self._e1]
        aug = (xu**2 * xv + xv**2 * xu).sum(axis=1)
        s = self._out_sums(x)
        return tri + 0.5 * aug - 0.5 * (x * s * s).sum(axis=1)

    def gradient_batch(self, x: np.ndarray) -> np.ndarray:
        grad = np.zeros_like(x)
        _scatter_add(grad, self._t0, x[:, self._t1] * x[:, self._t2])
        _scatter_add(grad, self._t1, x[:, self._t0] * x[:, self._t2])
        _scatter_add(grad, self._t2, x[:, self._t0] * x[:, self._t1])
        xu, xv = x[:, self._e0], x[:, self._e1]
        _scatter_add(grad, self._e0, xu * xv + 0.5 * xv**2)
        _scatter_add(grad, self._e1, xv * xu + 0.5 * xu**2)
        s = self._out_sums(x)
        grad -= 0.5 * s * s
        _scatter_add(
            grad, self._e1, -x[:, self._e0] * s[:, self._e0] * self._fw[None, :]
        )
        _scatter_add(
            grad, self._e0, -x[:, self._e1] * s[:, self._e1] * self._bw[None, :]
        )
        return grad

    def reference_value(self, x: SimplexWeights) -> float:
        return lagrangian.lambda_intermediate(self.orientation, x)


class Lambda2Objective:
    """Batched weighted-orientation objective with variable directional
    weights.  Evaluation takes an explicit weight matrix P of shape
    (restarts, carried pairs) holding p(u->v) for each pair u < v; the
    instance's own weights are the starting point for scalar calls."""

    kind = KIND_LAMBDA2

    def __init__(self, orientation: WeightedOrientation):
        _need_vertices(orientation.n)
        self.orientation = orientation
        self.n = orientation.n
        edges = orientation.edges
        self.pair_count = len(edges)
        self.pairs = tuple((we.u, we.v) for we in edges)
        index = {pair: i for i, pair in enumerate(self.pairs)}
        self._p0 = np.asarray([we.forward for we in edges])
        trips = derive_E_from_support(orientation).triples
        t = np.asarray(trips, dtype=np.int64).reshape(-1, 3)
        self._t0, self._t1, self._t2 = t[:, 0], t[:, 1], t[:, 2]
        e = np.asarray(self.pairs, dtype=np.int64).reshape(-1, 2)
        self._e0, self._e1 = e[:, 0], e[:, 1]

        def lookup(a: int, b: int) -> tuple[int, bool]:
            key = (a, b) if a < b else (b, a)
            i = index.get(key, -1)
            return i, a < b

        # per triple, per vertex slot, the two ordered pairs leaving it
        eidx = np.full((len(trips), 3, 2), -1, dtype=np.int64)
        edir = np.zeros((len(trips), 3, 2), dtype=bool)
        for ti, (a, b, c) in enumerate(trips):
            for j, (z, s, t2) in enumerate(((a, b, c), (b, a, c), (c, a, b))):
                eidx[ti, j, 0], edir[ti, j, 0] = lookup(z, s)
                eidx[ti, j, 1], edir[ti, j, 1] = lookup(z, t2)
        self._eidx = eidx
        self._edir = edir
        # per carried pair, the triples through it and the companion pairs
        per_edge: list[tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray, np.ndarray]] = []
        for u, v in self.pairs:
            zs, iu, du, iv, dv = [], [], [], [], []
            for a, b, c in trips:
                if u in (a, b, c) and v in (a, b, c):
                    z = a + b + c - u - v
                    zs.append(z)
                    i1, d1 = lookup(u, z)
                    i2, d2 = lookup(v, z)
                    iu.append(i1)
                    du.append(d1)
                    iv.append(i2)
                    dv.append(d2)
            per_edge.append(
                (
                    np.asarray(zs, dtype=np.int64),
                    np.asarray(iu, dtype=np.int64),
                    np.asarray(du, dtype=bool),
                    np.asarray(iv, dtype=np.int64),
                    np.asarray(dv, dtype=bool),
                )
            )
        self._per_edge = per_edge

    def initial_p(self) -> np.ndarray:
        return self._p0.copy()

    def _directional(
        self, p: np.ndarray, idx: np.ndarray, fwd: np.ndarray
    ) -> np.ndarray:
        vals = p[:, idx.clip(min=0)]
        vals = np.where(fwd, vals, 1.0 - vals)
        return np.where(idx < 0, 0.0, vals)

    def _coefficients(self, p: np.ndarray) -> np.ndarray:
        d = self._directional(p, self._eidx, self._edir)  # (R, T, 3, 2)
        return 1.0 - (d[..., 0] * d[..., 1]).sum(axis=2)

    def value_batch_p(self, x: np.ndarray, p: np.ndarray) -> np.ndarray:
        coeff = self._coefficients(p)
        tri = (coeff * x[:, self._t0] * x[:, self._t1] * x[:, self._t2]).sum(axis=1)
        xu, xv = x[:, self._e0], x[:, self._e1]
        aug = (p**2 * xu**2 * xv + (1.0 - p) ** 2 * xv**2 * xu).sum(axis=1)
        return tri + 0.5 * aug

    def gradient_x_batch(self, x: np.ndarray, p: np.ndarray) -> np.ndarray:
        coeff = self._coefficients(p)
        grad = np.zeros_like(x)
        _scatter_add(grad, self._t0, coeff * x[:, self._t1] * x[:, self._t2])
        _scatter_add(grad, self._t1, coeff * x[:, self._t0] * x[:, self._t2])
        _scatter_add(grad, self._t2, coeff * x[:, self._t0] * x[:, self._t1])
        xu, xv = x[:, self._e0], x[:, self._e1]
        fwd2, bwd2 = p**2, (1.0 - p) ** 2
        _scatter_add(grad, self._e0, fwd2 * xu * xv + 0.5 * bwd2 * xv**2)
        _scatter_add(grad, self._e1, 0.5 * fwd2 * xu**2 + bwd2 * xv * xu)
        return grad

    def sweep_p(self, x: np.ndarray, p: np.ndarray) -> np.ndarray:
        """One pass of exact coordinate updates over the directional weights.

        Restricted to one pair, the objective is quadratic in p with leading
        coefficient x_u x_v (x_u + x_v) / 2 >= 0, so the maximum over [0, 1]
        is attained at an endpoint; ties go to 1.
        """
        p = p.copy()
        for i, (u, v) in enumerate(self.pairs):
            zs, iu, du, iv, dv = self._per_edge[i]
            xu, xv = x[:, u], x[:, v]
            if zs.size:
                pu = self._directional(p, iu, du)
                pv = self._directional(p, iv, dv)
                xz = x[:, zs]
                alpha = xu * xv * (pu * xz).sum(axis=1)
                beta = xu * xv * (pv * xz).sum(axis=1)
            else:
                alpha = beta = np.zeros(x.shape[0])
            delta = 0.5 * xu * xv * (xu - xv) - alpha + beta
            p[:, i] = (delta >= 0.0).astype(float)
        return p

    def orientation_from(self, p_row: np.ndarray) -> WeightedOrientation:
        forward = {pair: float(p_row[i]) for i, pair in enumerate(self.pairs)}
        return WeightedOrientation.from_pairs(self.n, forward)

    def reference_value(
        self, x: SimplexWeights, orientation: WeightedOrientation | None = None
    ) -> float:
        w = self.orientation if orientation is None else orientation
        return lagrangian.lambda2(w, x)


# ---------------------------------------------------------------------------
# grid oracle


def _compositions(total: int, parts: int) -> Iterator[np.ndarray]:
    """Blocks of all compositions of `total` into `parts` nonnegative parts,
    concatenating to lexicographic order."""
    if parts == 1:
        yield np.asarray([[total]], dtype=np.int64)
        return
    if parts == 2:
        first = np.arange(total + 1, dtype=np.int64)
        yield np.stack([first, total - first], axis=1)
        return
    for head in range(total + 1):
        for block in _compositions(total - head, parts - 1):
            full = np.empty((block.shape[0], parts), dtype=np.int64)
            full[:, 0] = head
            full[:, 1:] = block
            yield full


def _batched(blocks: Iterator[np.ndarray], rows: int) -> Iterator[np.ndarray]:
    pending: list[np.ndarray] = []
    held = 0
    for block in blocks:
        pending.append(block)
        held += block.shape[0]
        if held >= rows:
            yield np.concatenate(pending, axis=0)
            pending, held = [], 0
    if pending:
        yield np.concatenate(pending, axis=0)


def grid_max(objective, res: GridResolution) -> ObjectiveValue:
    """Exact maximum of the objective over the rational simplex grid with
    denominator res.m.

    Parameters
    ----------
    objective : GraphLagrangianObjective, Lambda1Objective, or
        Lambda3Objective; the weight-dependent lambda2 has no fixed grid
        value and is rejected.
    res : GridResolution

    Returns the best grid point in enumeration order; the composition count
    C(m + n - 1, n - 1) must not exceed 10^8.
    """
    if getattr(objective, "kind", None) not in GRID_KINDS:
        raise InputError("unknown objective for the grid oracle")
    m, n = res.m, objective.n
    points = comb(m + n - 1, n - 1)
    if points > GRID_BUDGET:
        raise ConstraintError(
            f"grid budget exceeded: {points} compositions of {m} into {n} parts"
        )

    def evaluate(offset_block: tuple[int, np.ndarray]) -> tuple[float, int, np.ndarray]:
        offset, block = offset_block
        values = objective.value_batch(block / m)
        i = int(np.argmax(values))
        return float(values[i]), offset + i, block[i]

    tasks = []
    offset = 0
    for block in _batched(_compositions(m, n), 16384):
        tasks.append((offset, block))
        offset += block.shape[0]

    workers = worker_count()
    if workers > 1 and len(tasks) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(evaluate, tasks))
    else:
        results = [evaluate(t) for t in tasks]

    best_value, best_index, best_row = -inf, -1, None
    for value, index, row in results:
        if value > best_value or (value == best_value and index < best_index):
            best_value, best_index, best_row = value, index, row
    witness = SimplexWeights.normalized(best_row / m)
    return ObjectiveValue(objective.reference_value(witness), witness)


# ---------------------------------------------------------------------------
# multi-start ascent


def _start_points(n: int, cfg: AscentConfig, rng: np.random.Generator) -> np.ndarray:
    rows = [np.full((1, n), 1.0 / n)]
    for v in range(min(n, cfg.restarts - 1)):
        biased = np.full((1, n), 0.1 / n)
        biased[0, v] += 0.9
        rows.append(biased)
    remaining = cfg.restarts - sum(r.shape[0] for r in rows)
    if remaining > 0:
        rows.append(rng.dirichlet(np.ones(n), size=remaining))
    return np.concatenate(rows, axis=0)


def _ascend(
    value_batch: Callable[[np.ndarray], np.ndarray],
    gradient_batch: Callable[[np.ndarray], np.ndarray],
    x: np.ndarray,
    v: np.ndarray,
    budget: int,
    tol: float,
) -> tuple[np.ndarray, np.ndarray, int]:
    """Backtracking exponentiated-gradient ascent on a batch of trajectories.
    Returns the updated batch and the number of iterations consumed; stops
    early once every trajectory has converged."""
    restarts = x.shape[0]
    eta = np.full(restarts, 1.0)
    done = np.zeros(restarts, dtype=bool)
    used = 0
    while used < budget and not done.all():
        used += 1
        g = gradient_batch(x)
        step = eta[:, None] * (g - g.max(axis=1, keepdims=True))
        y = x * np.exp(step)
        norm = y.sum(axis=1, keepdims=True)
        bad = ~np.isfinite(norm[:, 0]) | (norm[:, 0] <= 0.0)
        norm[bad] = 1.0
        y = y / norm
        y[bad] = x[bad]
        vy = value_batch(y)
        vy[bad] = -inf
        accept = (vy >= v) & ~done
        gain = np.where(accept, vy - v, 0.0)
        x[accept] = y[accept]
        v[accept] = vy[accept]
        grew = accept & (gain > tol)
        eta[grew] = np.minimum(eta[grew] * 1.5, 1e3)
        eta[~accept & ~done] *= 0.5
        done |= (accept & (gain <= tol)) | (eta < 1e-14)
    return x, v, used


def _snap_faces(
    value_batch: Callable[[np.ndarray], np.ndarray], x: np.ndarray, v: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """Zero out near-dead coordinates when that does not lower the value."""
    snapped = np.where(x < 1e-12, 0.0, x)
    norm = snapped.sum(axis=1, keepdims=True)
    ok = norm[:, 0] > 0.0
    snapped[ok] /= norm[ok]
    vs = value_batch(snapped)
    keep = ok & (vs >= v)
    x[keep] = snapped[keep]
    v[keep] = vs[keep]
    return x, v


def ascent_max(objective, cfg: AscentConfig | None = None) -> ObjectiveValue:
    """Best value over cfg.restarts monotone ascent trajectories.

    Parameters
    ----------
    objective : GraphLagrangianObjective, Lambda1Objective, Lambda2Objective,
        or Lambda3Objective.
    cfg : AscentConfig; defaults to 64 restarts, 10000 iterations, 1e-10
        improvement tolerance, seed 0.

    The reported value is never below the value at the uniform point
    (trajectory 0 starts there), the winner on ties is the lowest restart
    index, and the witness re-evaluates to the reported value exactly.
    For lambda2 the witness includes the optimized directional weights.
    """
    kind = getattr(objective, "kind", None)
    if kind not in ASCENT_KINDS:
        raise InputError("unknown objective for the ascent")
    if cfg is None:
        cfg = AscentConfig()
    rng = np.random.default_rng(cfg.seed)
    x = _start_points(objective.n, cfg, rng)

    if kind != KIND_LAMBDA2:
        v = objective.value_batch(x)
        x, v, _ = _ascend(
            objective.value_batch, objective.gradient_batch, x, v, cfg.max_iters, cfg.tol
        )
        x, v = _snap_faces(objective.value_batch, x, v)
        winner = int(np.argmax(v))
        witness = SimplexWeights.normalized(x[winner])
        return ObjectiveValue(objective.reference_value(witness), witness)

    pairs = objective.pair_count
    p = np.tile(objective.initial_p(), (cfg.restarts, 1)).reshape(cfg.restarts, pairs)
    if cfg.restarts > 1 and pairs:
        p[1:] = rng.uniform(0.0, 1.0, size=(cfg.restarts - 1, pairs))
    v = objective.value_batch_p(x, p)
    used = 0
    while used < cfg.max_iters:
        x, v, k = _ascend(
            lambda xx: objective.value_batch_p(xx, p),
            lambda xx: objective.gradient_x_batch(xx, p),
            x,
            v,
            cfg.max_iters - used,
            cfg.tol,
        )
        used += k
        x_converged = used < cfg.max_iters
        p = objective.sweep_p(x, p)
        v2 = objective.value_batch_p(x, p)
        sweep_gain = v2 - v
        v = v2
        if x_converged and (sweep_gain <= cfg.tol).all():
            break
    x, v = _snap_faces(lambda xx: objective.value_batch_p(xx, p), x, v)
    winner = int(np.argmax(v))
    witness = SimplexWeights.normalized(x[winner])
    orientation = objective.orientation_from(p[winner])
    return ObjectiveValue(
        objective.reference_value(witness, orientation), witness, orientation
    )


def check_gradient(objective, x: SimplexWeights, h: float = 1e-5) -> float:
    """Largest deviation between the analytic gradient and central finite
    differences at a strictly interior point (every coordinate above h)."""
    base = x.as_array() if isinstance(x, SimplexWeights) else np.asarray(x, float)
    if base.ndim != 1 or base.shape[0] != objective.n:
        raise InputError("point dimension does not match the objective")
    if h <= 0.0:
        raise InputError("step size must be positive")
    if (base <= h).any():
        raise InputError("boundary point: every coordinate must exceed h")
    if objective.kind == KIND_LAMBDA2:
        p0 = objective.initial_p()[None, :]
        value = lambda row: float(objective.value_batch_p(row[None, :], p0)[0])
        analytic = objective.gradient_x_batch(base[None, :], p0)[0]
    else:
        value = lambda row: float(objective.value_batch(row[None, :])[0])
        analytic = objective.gradient_batch(base[None, :])[0]
    worst = 0.0
    for i in range(base.shape[0]):
        hi = base.copy()
        lo = base.copy()
        hi[i] += h
        lo[i] -= h
        numeric = (value(hi) - value(lo)) / (2.0 * h)
        worst = max(worst, abs(float(analytic[i]) - numeric))
    return worst
