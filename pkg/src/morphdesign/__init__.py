"""Combinatorial synthesis of modular system configurations.

Rank design alternatives into ordinal priority layers, compose them under
pairwise-compatibility constraints, filter by lattice-valued quality
vectors, solve budgeted one-per-group selection, and plan multistage
configuration trajectories.
"""

from .composition import (
    CompositeDecision,
    Dominance,
    ParetoSet,
    QualityVector,
    WhatIfDelta,
    compose_part,
    compose_tree,
    dominates_quality,
    find_bottlenecks,
    quality_vector,
    what_if_improve,
)
from .document import ProblemDocument, parse_problem, problem_schema, serialize_problem
from .errors import DocumentError, InfeasibleError, MorphDesignError
from .mckp import (
    KnapsackItem,
    KnapsackOrdering,
    Selection,
    exact_pack,
    greedy_pack,
    items_from_model,
    lambda_order,
    pareto_pack,
)
from .model import (
    CompatibilityMatrix,
    CriterionSpec,
    DesignAlternative,
    MorphModel,
    MorphNode,
    Scales,
    Violation,
    orient_estimates,
    validate_model,
)
from .ranking import RankingConfig, dominance_layers, outrank_layers, rank
from .trajectory import ChangeCostConfig, StageSpec, Trajectory, change_count, stage_solve, synthesize

__version__ = "0.1.0"

__all__ = [
    "CompositeDecision",
    "Dominance",
    "ParetoSet",
    "QualityVector",
    "WhatIfDelta",
    "compose_part",
    "compose_tree",
    "dominates_quality",
    "find_bottlenecks",
    "quality_vector",
    "what_if_improve",
    "ProblemDocument",
    "parse_problem",
    "problem_schema",
    "serialize_problem",
    "DocumentError",
    "InfeasibleError",
    "MorphDesignError",
    "KnapsackItem",
    "KnapsackOrdering",
    "Selection",
    "exact_pack",
    "greedy_pack",
    "items_from_model",
    "lambda_order",
    "pareto_pack",
    "CompatibilityMatrix",
    "CriterionSpec",
    "DesignAlternative",
    "MorphModel",
    "MorphNode",
    "Scales",
    "Violation",
    "orient_estimates",
    "validate_model",
    "RankingConfig",
    "dominance_layers",
    "outrank_layers",
    "rank",
    "ChangeCostConfig",
    "StageSpec",
    "Trajectory",
    "change_count",
    "stage_solve",
    "synthesize",
]
