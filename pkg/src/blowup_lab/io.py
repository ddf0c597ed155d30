"""Plain-text instance files, one object per file.

Every format starts with a header line `<kind> <n>` and continues with one
body line per item:

    graph <n>      edges `u v` with 0 <= u < v < n on render
    3graph <n>     triples `u v w`, ascending on render
    digraph <n>    arcs `u v` meaning u -> v
    wdigraph <n>   lines `u v p` meaning p(u -> v) = p, p(v -> u) = 1 - p
    family <n>     one set per line, ascending elements; the empty set is `-`
    weights <n>    one line of n space-separated reals
    sizes <n>      one line of n nonnegative integers

Lines that are blank or start with `#` are skipped.  Parsers raise InputError
with the offending line number; renderers emit canonical order, so
parse(render(obj)) == obj and render(parse(text)) is a fixed point.  Weight
entries written without a decimal point parse as exact integers; fractional
values render via repr and round-trip bit-for-bit.
"""
from __future__ import annotations

from math import isfinite

from .core import (
    Graph,
    OrientedGraph,
    SetFamily,
    TripleSystem,
    WeightedOrientation,
    elements_of,
)
from .errors import InputError

FORMAT_KINDS = ("graph", "3graph", "digraph", "wdigraph", "family", "weights", "sizes")


def _logical_lines(text: str) -> list[tuple[int, str]]:
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        lines.append((lineno, stripped))
    return lines


def _int(token: str, lineno: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise InputError(f"line {lineno}: {what} {token!r} is not an integer") from None


def _number(token: str, lineno: int) -> int | float:
    try:
        return int(token)
    except ValueError:
        pass
    try:
        value = float(token)
    except ValueError:
        raise InputError(f"line {lineno}: {token!r} is not a number") from None
    if not isfinite(value):
        raise InputError(f"line {lineno}: {token!r} is not finite")
    return value


def _header(text: str, kind: str) -> tuple[int, list[tuple[int, str]]]:
    lines = _logical_lines(text)
    if not lines:
        raise InputError(f"empty input: missing header line '{kind} <n>'")
    lineno, line = lines[0]
    parts = line.split()
    if len(parts) != 2 or parts[0] != kind:
        raise InputError(f"line {lineno}: expected header '{kind} <n>', got {line!r}")
    n = _int(parts[1], lineno, "size")
    if n < 0:
        raise InputError(f"line {lineno}: size must be nonnegative")
    return n, lines[1:]


def _check_vertex(v: int, n: int, lineno: int) -> None:
    if not (0 <= v < n):
        raise InputError(f"line {lineno}: vertex {v} outside range 0..{n - 1}")


def sniff_kind(text: str) -> str:
    """First word of the header line; used to dispatch on file contents."""
    lines = _logical_lines(text)
    if not lines:
        raise InputError("missing header line")
    kind = lines[0][1].split()[0]
    if kind not in FORMAT_KINDS:
        raise InputError(f"line {lines[0][0]}: unknown instance kind {kind!r}")
    return kind


def _pair_rows(
    body: list[tuple[int, str]], what: str
) -> list[tuple[int, int, int]]:
    rows = []
    for lineno, line in body:
        parts = line.split()
        if len(parts) != 2:
            raise InputError(f"line {lineno}: expected '{what}', got {line!r}")
        rows.append(
            (lineno, _int(parts[0], lineno, "vertex"), _int(parts[1], lineno, "vertex"))
        )
    return rows


def parse_graph(text: str) -> Graph:
    n, body = _header(text, "graph")
    seen: set[tuple[int, int]] = set()
    edges = []
    for lineno, u, v in _pair_rows(body, "u v"):
        _check_vertex(u, n, lineno)
        _check_vertex(v, n, lineno)
        if u == v:
            raise InputError(f"line {lineno}: loop edge at vertex {u}")
        key = (u, v) if u < v else (v, u)
        if key in seen:
            raise InputError(f"line {lineno}: duplicate edge {u} {v}")
        seen.add(key)
        edges.append((u, v))
    try:
        return Graph.from_edges(n, edges)
    except InputError as exc:
        raise InputError(f"graph body: {exc}") from None


def render_graph(g: Graph) -> str:
    lines = [f"graph {g.n}"]
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def parse_3graph(text: str) -> TripleSystem:
    n, body = _header(text, "3graph")
    seen: set[tuple[int, ...]] = set()
    triples = []
    for lineno, line in body:
        parts = line.split()
        if len(parts) != 3:
            raise InputError(f"line {lineno}: expected 'u v w', got {line!r}")
        t = tuple(_int(p, lineno, "vertex") for p in parts)
        for v in t:
            _check_vertex(v, n, lineno)
        if len(set(t)) != 3:
            raise InputError(f"line {lineno}: triple has a repeated vertex")
        key = tuple(sorted(t))
        if key in seen:
            raise InputError(f"line {lineno}: duplicate triple {line!r}")
        seen.add(key)
        triples.append(t)
    try:
        return TripleSystem.from_triples(n, triples)
    except InputError as exc:
        raise InputError(f"3graph body: {exc}") from None


def render_3graph(t: TripleSystem) -> str:
    lines = [f"3graph {t.n}"]
    lines.extend(f"{a} {b} {c}" for a, b, c in t.triples)
    return "\n".join(lines) + "\n"


def parse_digraph(text: str) -> OrientedGraph:
    n, body = _header(text, "digraph")
    seen: set[tuple[int, int]] = set()
    arcs = []
    for lineno, u, v in _pair_rows(body, "u v"):
        _check_vertex(u, n, lineno)
        _check_vertex(v, n, lineno)
        if u == v:
            raise InputError(f"line {lineno}: loop arc at vertex {u}")
        if (u, v) in seen:
            raise InputError(f"line {lineno}: duplicate arc {u} {v}")
        seen.add((u, v))
        arcs.append((u, v))
    try:
        return OrientedGraph.from_arcs(n, arcs)
    except InputError as exc:
        raise InputError(f"digraph body: {exc}") from None


def render_digraph(d: OrientedGraph) -> str:
    lines = [f"digraph {d.n}"]
    lines.extend(f"{u} {v}" for u, v in d.arcs)
    return "\n".join(lines) + "\n"


def parse_wdigraph(text: str) -> WeightedOrientation:
    n, body = _header(text, "wdigraph")
    forward: dict[tuple[int, int], float] = {}
    seen: set[tuple[int, int]] = set()
    for lineno, line in body:
        parts = line.split()
        if len(parts) != 3:
            raise InputError(f"line {lineno}: expected 'u v p', got {line!r}")
        u = _int(parts[0], lineno, "vertex")
        v = _int(parts[1], lineno, "vertex")
        p = _number(parts[2], lineno)
        _check_vertex(u, n, lineno)
        _check_vertex(v, n, lineno)
        if u == v:
            raise InputError(f"line {lineno}: loop pair at vertex {u}")
        if not (0.0 <= float(p) <= 1.0):
            raise InputError(f"line {lineno}: weight {p!r} must lie in [0, 1]")
        key = (u, v) if u < v else (v, u)
        if key in seen:
            raise InputError(f"line {lineno}: duplicate pair {u} {v}")
        seen.add(key)
        forward[(u, v)] = float(p)
    try:
        return WeightedOrientation.from_pairs(n, forward)
    except InputError as exc:
        raise InputError(f"wdigraph body: {exc}") from None


def render_wdigraph(w: WeightedOrientation) -> str:
    lines = [f"wdigraph {w.n}"]
    lines.extend(f"{e.u} {e.v} {repr(e.forward)}" for e in w.edges)
    return "\n".join(lines) + "\n"


def parse_family(text: str) -> SetFamily:
    n, body = _header(text, "family")
    masks = []
    seen: set[int] = set()
    for lineno, line in body:
        if line == "-":
            mask = 0
        else:
            elems = [_int(p, lineno, "element") for p in line.split()]
            if any(b <= a for a, b in zip(elems, elems[1:])):
                raise InputError(f"line {lineno}: elements must be strictly ascending")
            if any(not (0 <= e < n) for e in elems):
                raise InputError(f"line {lineno}: element outside ground set of {n}")
            mask = 0
            for e in elems:
                mask |= 1 << e
        if mask in seen:
            raise InputError(f"line {lineno}: duplicate set {line!r}")
        seen.add(mask)
        masks.append(mask)
    try:
        return SetFamily.from_masks(n, masks)
    except InputError as exc:
        raise InputError(f"family body: {exc}") from None


def render_family(f: SetFamily) -> str:
    lines = [f"family {f.n}"]
    for mask in f.sets:
        lines.append(" ".join(map(str, elements_of(mask))) if mask else "-")
    return "\n".join(lines) + "\n"


def parse_weights(text: str) -> tuple[int | float, ...]:
    """Weight vector as written: integer tokens stay ints, others floats."""
    n, body = _header(text, "weights")
    if n < 1:
        raise InputError("weight vector needs at least one entry")
    if len(body) != 1:
        raise InputError("weights body must be a single line")
    lineno, line = body[0]
    values = tuple(_number(tok, lineno) for tok in line.split())
    if len(values) != n:
        raise InputError(f"line {lineno}: expected {n} weights, got {len(values)}")
    return values


def render_weights(values: tuple[int | float, ...] | list[int | float]) -> str:
    if not values:
        raise InputError("weight vector needs at least one entry")
    body = " ".join(str(v) if isinstance(v, int) else repr(float(v)) for v in values)
    return f"weights {len(values)}\n{body}\n"


def parse_sizes(text: str) -> tuple[int, ...]:
    n, body = _header(text, "sizes")
    if n < 1:
        raise InputError("size vector needs at least one entry")
    if len(body) != 1:
        raise InputError("sizes body must be a single line")
    lineno, line = body[0]
    sizes = tuple(_int(tok, lineno, "size") for tok in line.split())
    if len(sizes) != n:
        raise InputError(f"line {lineno}: expected {n} sizes, got {len(sizes)}")
    if any(c < 0 for c in sizes):
        raise InputError(f"line {lineno}: sizes must be nonnegative")
    return sizes


def render_sizes(sizes: tuple[int, ...] | list[int]) -> str:
    if not sizes:
        raise InputError("size vector needs at least one entry")
    return f"sizes {len(sizes)}\n" + " ".join(map(str, sizes)) + "\n"
