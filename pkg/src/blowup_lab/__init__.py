"""Blow-up constructions and simplex-constrained density objectives.

The package covers three families of objects and the machinery to study
them at desk scale:

  * undirected graphs with the edge polynomial over the simplex, its exact
    clique-based maximum, and the support-merging reduction;
  * 3-uniform triple systems built from directed augmentations and from
    oriented graphs, with exact forbidden-configuration oracles;
  * union-closed set families with weighted abundance margins and their
    blow-up counting identities.

Everything is deterministic: randomized searches and optimizers take
explicit seeds, and exhaustive oracles refuse instances beyond their stated
budgets instead of sampling silently.
"""

from .blowup import (
    AugmentationViolation,
    BlowupSpec,
    VIOLATION_OPPOSITE_ARCS,
    VIOLATION_OUT_PAIR,
    VertexMap,
    blow_up_3graph,
    blow_up_graph,
    edge_density,
    fdf_construct,
    validate_augmentation,
)
from .core import (
    Graph,
    OrientedGraph,
    SetFamily,
    SimplexWeights,
    TripleSystem,
    WeightedEdge,
    WeightedOrientation,
    clique_number,
    contains_k34,
    elements_of,
    has_directed_4cycle,
    is_kr1_free,
    is_union_closed,
    mask_of,
    maximum_clique,
    union_closure,
)
from .errors import ConstraintError, InputError
from .lagrangian import (
    ObjectiveValue,
    ReductionStep,
    ReductionTrace,
    derive_E_from_support,
    graph_lagrangian,
    graph_lagrangian_grad,
    graph_lagrangian_max,
    lambda1,
    lambda1_grad,
    lambda2,
    lambda2_grad,
    lambda3,
    lambda3_grad,
    lambda_intermediate,
    lambda_intermediate_grad,
    ms_reduce,
)
from .optimizer import (
    AscentConfig,
    GraphLagrangianObjective,
    GridResolution,
    Lambda1Objective,
    Lambda2Objective,
    Lambda3Objective,
    LambdaIntermediateObjective,
    ascent_max,
    check_gradient,
    grid_max,
    worker_count,
)
from .ucf import (
    AbundanceReport,
    CounterexampleRecord,
    ElementWeights,
    EquivalenceReport,
    FamilyBlowupSpec,
    SearchReport,
    WeightedWitness,
    abundance,
    blowup_abundance_formula,
    blowup_equivalence_check,
    family_blowup,
    search_weighted,
    weighted_margin,
    weighted_witness,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
