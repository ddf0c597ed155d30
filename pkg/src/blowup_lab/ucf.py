"""Union-closed set families: blow-ups, abundance counts, weighted margins.

Blowing up a union-closed family replaces each ground element k by a block
of c_k fresh elements; every member set S expands to all sets obtained by
substituting a nonempty subset of the corresponding block for each element
of S.  The blown-up family is union-closed again and its size is

    sum over S in F of  prod over k in S of  (2^c_k - 1),

because the original S can be read back off any blown-up set.

The weighted margin of element k under weights x (each at least 1) is

    sum_{S: k in S} prod_{m in S, m != k} x_m
    - sum_{S: k not in S} prod_{m in S} x_m,

with empty products equal to 1.  Substituting x_m = 2^c_m - 1 makes this
margin exactly the membership surplus (sets containing v minus sets
avoiding v) of any blown-up copy v of k; blowup_equivalence_check verifies
that identity against explicit counts on the constructed blow-up.  All
margin arithmetic stays in exact integers whenever the weights are
integers.

search_weighted sweeps small ground sets for weighted counterexamples,
i.e. families where every element has negative margin under some weight
vector.  Ground sets up to 3 elements are swept exhaustively; 4 elements
are sampled through union closures of small generator sets.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import prod

import numpy as np

from .blowup import VertexMap
from .core import SetFamily, elements_of, is_union_closed, union_closure
from .errors import ConstraintError, InputError

BLOWN_ELEMENT_LIMIT = 20
SEARCH_ELEMENT_LIMIT = 4


@dataclass(frozen=True)
class FamilyBlowupSpec:
    """Block sizes c_k >= 1, one per ground element."""

    sizes: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "sizes", tuple(int(c) for c in self.sizes))
        if any(c < 1 for c in self.sizes):
            raise InputError("family block sizes must be at least 1")

    def __len__(self) -> int:
        return len(self.sizes)


@dataclass(frozen=True)
class ElementWeights:
    """Per-element weights, each at least 1; integer entries stay exact."""

    x: tuple[int | float, ...]

    def __post_init__(self) -> None:
        vals = tuple(v if isinstance(v, int) else float(v) for v in self.x)
        object.__setattr__(self, "x", vals)
        if not all(v >= 1 for v in vals):
            raise InputError("element weights must be at least 1")

    @classmethod
    def ones(cls, n: int) -> "ElementWeights":
        return cls((1,) * n)

    def __len__(self) -> int:
        return len(self.x)

    def __getitem__(self, k: int) -> int | float:
        return self.x[k]


@dataclass(frozen=True)
class AbundanceReport:
    """Membership counts per ground element; an element is abundant when it
    lies in at least half of the member sets."""

    counts: tuple[int, ...]
    family_size: int

    @property
    def abundant(self) -> tuple[int, ...]:
        return tuple(
            k for k, c in enumerate(self.counts) if 2 * c >= self.family_size
        )

    @property
    def has_abundant(self) -> bool:
        return bool(self.abundant)


@dataclass(frozen=True)
class WeightedWitness:
    """Best weighted margin over the ground elements; the family is a
    counterexample to the weighted statement when even the best is negative."""

    element: int
    margin: int | float
    margins: tuple[int | float, ...]

    @property
    def is_counterexample(self) -> bool:
        return self.margin < 0


@dataclass(frozen=True)
class ElementEquivalence:
    element: int
    margin: int
    formula_in: int
    formula_out: int
    explicit_in: int
    explicit_out: int
    consistent: bool


@dataclass(frozen=True)
class EquivalenceReport:
    """Outcome of checking weighted margins against blow-up counts."""

    ok: bool
    per_element: tuple[ElementEquivalence, ...]
    blowup: SetFamily
    vmap: VertexMap


@dataclass(frozen=True)
class CounterexampleRecord:
    family: SetFamily
    weights: ElementWeights
    witness: WeightedWitness


@dataclass(frozen=True)
class SearchReport:
    mode: str
    n: int
    families_checked: int
    degenerate_skipped: int
    weight_draws: int
    counterexamples: tuple[CounterexampleRecord, ...]


def _require_union_closed(f: SetFamily) -> None:
    if not is_union_closed(f):
        raise ConstraintError("family is not union-closed")


def family_blowup(f: SetFamily, spec: FamilyBlowupSpec) -> tuple[SetFamily, VertexMap]:
    """Blow up each ground element of a union-closed family into a block.

    Returns the blown-up family over sum(c_k) elements together with the
    element map.  Refused when the family is not union-closed or the blown
    ground set would exceed 20 elements.
    """
    if len(spec.sizes) != f.n:
        raise InputError(
            f"expected {f.n} block sizes, got {len(spec.sizes)}"
        )
    _require_union_closed(f)
    vmap = VertexMap(spec.sizes)
    if vmap.total > BLOWN_ELEMENT_LIMIT:
        raise ConstraintError(
            f"family blow-up too large: {vmap.total} blown elements exceed "
            f"{BLOWN_ELEMENT_LIMIT}"
        )
    out: set[int] = set()
    for s in f.sets:
        acc = [0]
        for k in elements_of(s):
            start = vmap.starts[k]
            choices = [b << start for b in range(1, 1 << spec.sizes[k])]
            acc = [m | b for m in acc for b in choices]
        out.update(acc)
    return SetFamily.from_masks(vmap.total, out), vmap


def abundance(f: SetFamily) -> AbundanceReport:
    """Membership counts of every ground element in a union-closed family."""
    _require_union_closed(f)
    counts = [0] * f.n
    for mask in f.sets:
        m = mask
        while m:
            low = m & -m
            counts[low.bit_length() - 1] += 1
            m ^= low
    return AbundanceReport(tuple(counts), len(f))


def blowup_abundance_formula(
    f: SetFamily, spec: FamilyBlowupSpec, k: int, position: int = 0
) -> tuple[int, int]:
    """Closed-form membership counts of one blown-up copy of element k.

    Returns (sets containing the copy, sets avoiding it) in the blow-up of
    `f` by `spec`.  `position` selects which copy inside block k and only
    gets validated: by symmetry the counts are the same for every copy.
    """
    if len(spec.sizes) != f.n:
        raise InputError(f"expected {f.n} block sizes, got {len(spec.sizes)}")
    if not (0 <= k < f.n):
        raise InputError(f"element {k} outside the ground set")
    if not (0 <= position < spec.sizes[k]):
        raise InputError(f"position {position} outside block {k}")
    _require_union_closed(f)
    ck = spec.sizes[k]
    count_in = 0
    count_out = 0
    for s in f.sets:
        rest = prod((1 << spec.sizes[m]) - 1 for m in elements_of(s) if m != k)
        if s >> k & 1:
            count_in += (1 << (ck - 1)) * rest
            count_out += ((1 << (ck - 1)) - 1) * rest
        else:
            count_out += rest
    return count_in, count_out


def weighted_margin(f: SetFamily, x: ElementWeights, k: int) -> int | float:
    """Weighted membership surplus of element k; exact when weights are ints."""
    if len(x) != f.n:
        raise InputError(f"expected {f.n} weights, got {len(x)}")
    if not (0 <= k < f.n):
        raise InputError(f"element {k} outside the ground set")
    _require_union_closed(f)
    lhs: int | float = 0
    rhs: int | float = 0
    for s in f.sets:
        if s >> k & 1:
            lhs += prod(x[m] for m in elements_of(s) if m != k)
        else:
            rhs += prod(x[m] for m in elements_of(s))
    return lhs - rhs


def weighted_witness(f: SetFamily, x: ElementWeights) -> WeightedWitness:
    """Element with the largest weighted margin (lowest index on ties)."""
    if f.n < 1:
        raise InputError("family has no ground elements")
    margins = tuple(weighted_margin(f, x, k) for k in range(f.n))
    best = max(margins)
    return WeightedWitness(margins.index(best), best, margins)


def blowup_equivalence_check(
    f: SetFamily, spec: FamilyBlowupSpec
) -> EquivalenceReport:
    """Tie the three routes to blown-up abundance together, exactly.

    For every ground element k this checks that
      * the weighted margin under x_m = 2^c_m - 1 equals the closed-form
        count difference,
      * the closed-form counts match explicit membership counts on the
        constructed blow-up, and
      * every copy inside block k has the same explicit count.
    """
    blown, vmap = family_blowup(f, spec)
    weights = ElementWeights(tuple((1 << c) - 1 for c in spec.sizes))
    per = []
    ok = True
    for k in range(f.n):
        margin = weighted_margin(f, weights, k)
        count_in, count_out = blowup_abundance_formula(f, spec, k, 0)
        explicit = [
            sum(1 for s in blown.sets if s >> v & 1) for v in vmap.block(k)
        ]
        explicit_in = explicit[0]
        explicit_out = len(blown) - explicit_in
        consistent = (
            all(e == explicit_in for e in explicit)
            and count_in == explicit_in
            and count_out == explicit_out
            and margin == count_in - count_out
        )
        ok = ok and consistent
        per.append(
            ElementEquivalence(
                k, margin, count_in, count_out, explicit_in, explicit_out,
                consistent,
            )
        )
    return EquivalenceReport(ok, tuple(per), blown, vmap)


def _families_up_to_3(n: int) -> list[SetFamily]:
    universe = 1 << n
    found = []
    for code in range(1, 1 << universe):
        masks = [m for m in range(universe) if code >> m & 1]
        fam = SetFamily.from_masks(n, masks)
        if is_union_closed(fam):
            found.append(fam)
    return found


def _families_sampled_4(n: int, trials: int, rng: np.random.Generator) -> list[SetFamily]:
    universe = 1 << n
    seen: dict[tuple[int, ...], SetFamily] = {}

    def add(masks: tuple[int, ...]) -> None:
        closed = union_closure(SetFamily.from_masks(n, masks))
        seen.setdefault(closed.sets, closed)

    for size in range(1, 5):
        for gens in combinations(range(universe), size):
            add(gens)
    for _ in range(trials):
        size = int(rng.integers(1, 9))
        gens = rng.choice(universe, size=min(size, universe), replace=False)
        add(tuple(int(g) for g in gens))
    return [seen[key] for key in sorted(seen, key=lambda s: (len(s), s))]


def search_weighted(n: int, trials: int = 20, seed: int = 0) -> SearchReport:
    """Scan small union-closed families for weighted counterexamples.

    Every family gets the all-ones weights plus `trials` random weight
    vectors drawn uniformly from [1, 10]; a counterexample is a family whose
    best margin is negative under some draw.  The single-member family {{}}
    carries no elements and is skipped as degenerate.  Ground sets above 4
    elements are refused.
    """
    if n < 1:
        raise InputError("search needs at least one ground element")
    if n > SEARCH_ELEMENT_LIMIT:
        raise ConstraintError(
            f"weighted search supports at most {SEARCH_ELEMENT_LIMIT} ground elements"
        )
    if trials < 0:
        raise InputError("trial count must be nonnegative")
    rng = np.random.default_rng(seed)
    if n <= 3:
        mode = "exhaustive"
        families = _families_up_to_3(n)
    else:
        mode = "sampled"
        families = _families_sampled_4(n, trials, rng)
    checked = 0
    degenerate = 0
    hits: list[CounterexampleRecord] = []
    for fam in families:
        if all(mask == 0 for mask in fam.sets):
            degenerate += 1
            continue
        checked += 1
        draws = [ElementWeights.ones(n)]
        for _ in range(trials):
            draws.append(ElementWeights(tuple(rng.uniform(1.0, 10.0, n).tolist())))
        for w in draws:
            wit = weighted_witness(fam, w)
            if wit.is_counterexample:
                hits.append(CounterexampleRecord(fam, w, wit))
    return SearchReport(mode, n, checked, degenerate, trials + 1, tuple(hits))
