"""Ordinal ranking of design alternatives into priority layers.

Two computed methods are provided: plain dominance peeling and a weighted
outranking variant whose relation is condensed (cycles collapse into one
layer) before layering.  Externally supplied priorities pass through
untouched, which is how published expert judgments enter the pipeline.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import networkx as nx

from .model import MorphModel, PriorityAssignment, orient_estimates

__all__ = ["RankingConfig", "dominance_layers", "outrank_layers", "rank"]

METHODS = ("dominance-layers", "weighted-outranking", "external")


@dataclass(frozen=True)
class RankingConfig:
    method: str = "dominance-layers"
    concordance_threshold: float = 0.6
    discordance_threshold: float = 0.5
    max_layers: int = 3

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown ranking method {self.method!r}")
        if not 0.0 <= self.concordance_threshold <= 1.0:
            raise ValueError("concordance threshold must be in [0, 1]")
        if not 0.0 <= self.discordance_threshold <= 1.0:
            raise ValueError("discordance threshold must be in [0, 1]")
        if self.max_layers < 1:
            raise ValueError("max_layers must be >= 1")


def _strictly_dominates(a: Sequence[int], b: Sequence[int]) -> bool:
    return all(x >= y for x, y in zip(a, b)) and any(x > y for x, y in zip(a, b))


def dominance_layers(oriented: Sequence[Sequence[int]], k: int) -> list[int]:
    """Peel nondominated rows into layers 1, 2, ... clamped at ``k``.

    A row sits in the first layer where no remaining row strictly dominates
    it (componentwise >= with at least one >).  Estimates must already be
    oriented so that larger is better.
    """
    rows = [tuple(row) for row in oriented]
    if not rows:
        raise ValueError("cannot rank an empty set of items")
    layers = [0] * len(rows)
    remaining = list(range(len(rows)))
    layer = 1
    while remaining:
        top = [
            i
            for i in remaining
            if not any(_strictly_dominates(rows[j], rows[i]) for j in remaining if j != i)
        ]
        for i in top:
            layers[i] = min(layer, k)
        remaining = [i for i in remaining if i not in top]
        layer += 1
    return layers


def outrank_layers(
    oriented: Sequence[Sequence[int]],
    weights: Sequence[int],
    config: RankingConfig,
) -> list[int]:
    """Layer rows by a concordance/discordance outranking relation.

    ``a`` outranks ``b`` when the weight share of criteria where a >= b
    reaches the concordance threshold and no opposing gap, normalized by its
    column's range, exceeds the discordance threshold.  Cycles in the
    relation are condensed so mutually outranking rows share a layer; the
    remaining acyclic relation is peeled like ``dominance_layers``.
    """
    rows = [tuple(row) for row in oriented]
    if not rows:
        raise ValueError("cannot rank an empty set of items")
    magnitudes = [abs(w) for w in weights]
    total_weight = sum(magnitudes)
    if total_weight == 0:
        raise ValueError("criteria weights sum to zero magnitude")
    spans = []
    for j in range(len(rows[0])):
        column = [row[j] for row in rows]
        spans.append(max(column) - min(column))  # 0 for all-equal columns

    def outranks(a: int, b: int) -> bool:
        agree = sum(m for m, x, y in zip(magnitudes, rows[a], rows[b]) if x >= y)
        if agree / total_weight < config.concordance_threshold:
            return False
        worst_gap = 0.0
        for j, (x, y) in enumerate(zip(rows[a], rows[b])):
            if y > x and spans[j] > 0:
                worst_gap = max(worst_gap, (y - x) / spans[j])
        return worst_gap <= config.discordance_threshold

    graph = nx.DiGraph()
    graph.add_nodes_from(range(len(rows)))
    graph.add_edges_from(
        (a, b) for a in range(len(rows)) for b in range(len(rows)) if a != b and outranks(a, b)
    )
    condensed = nx.condensation(graph)
    layers = [0] * len(rows)
    remaining = set(condensed.nodes)
    layer = 1
    while remaining:
        # top = condensed components nothing else still outranks
        top = [c for c in remaining if not any(p in remaining for p in condensed.predecessors(c))]
        for component in top:
            for i in condensed.nodes[component]["members"]:
                layers[i] = min(layer, config.max_layers)
        remaining -= set(top)
        layer += 1
    return layers


def rank(
    model: MorphModel,
    leaf_id: str,
    config: RankingConfig,
    external: PriorityAssignment | None = None,
) -> dict[str, int]:
    """Produce a total priority assignment for one leaf's alternatives.

    Dispatches on ``config.method``; external mode validates and passes
    through user-supplied priorities (e.g. published expert rankings).
    """
    leaf = model.node(leaf_id)
    if not leaf.is_leaf:
        raise KeyError(f"node {leaf_id!r} is not a leaf part")
    alt_ids = [alt.id for alt in leaf.alternatives]

    if config.method == "external":
        if external is None:
            raise ValueError(f"external ranking for {leaf_id!r} requires supplied priorities")
        missing = [a for a in alt_ids if a not in external]
        if missing:
            raise ValueError(f"external priorities for {leaf_id!r} missing {missing}")
        for alt, layer in external.items():
            if not 1 <= layer <= config.max_layers:
                raise ValueError(f"priority {layer} of {leaf_id}/{alt} outside [1..{config.max_layers}]")
        return {a: external[a] for a in alt_ids}

    oriented = orient_estimates([alt.estimates for alt in leaf.alternatives], model.criteria)
    if config.method == "dominance-layers":
        layers = dominance_layers(oriented, config.max_layers)
    else:
        layers = outrank_layers(oriented, [c.weight for c in model.criteria], config)
    return dict(zip(alt_ids, layers))


def rank_all(
    model: MorphModel,
    config: RankingConfig,
    external: Mapping[str, PriorityAssignment] | None = None,
) -> dict[str, dict[str, int]]:
    """Rank every leaf of the model; convenience wrapper over :func:`rank`."""
    external = external or {}
    return {leaf.id: rank(model, leaf.id, config, external.get(leaf.id)) for leaf in model.leaves()}
