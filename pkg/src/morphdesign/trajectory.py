"""Multistage configuration planning.

Each planning stage solves the same model under its own priorities; a
trajectory then picks one stage solution per stage.  Swapping components
between consecutive stages carries a burden, expressed ordinally by mapping
the number of changed parts onto the compatibility scale, and trajectories
are composed and Pareto-filtered exactly like any other morphological
combination.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping, Sequence

from .composition import (
    CompositeDecision,
    Dominance,
    ParetoSet,
    QualityVector,
    compose_tree,
    dominates_quality,
    peel_layers,
)
from .errors import InfeasibleError
from .model import MorphModel, PriorityMap

__all__ = ["StageSpec", "ChangeCostConfig", "Trajectory", "stage_solve", "change_count", "synthesize"]


@dataclass(frozen=True)
class StageSpec:
    """One planning stage: the shared model under stage-specific priorities."""

    label: str
    model: MorphModel
    priorities: PriorityMap


@dataclass(frozen=True)
class ChangeCostConfig:
    """Maps a change count onto the ordinal compatibility scale.

    ``thresholds[i]`` is the largest change count still rated ``l - i``;
    counts beyond the last threshold rate 0 (the transition is forbidden).
    The defaults keep a no-change transition at the top of the scale and
    write off transitions that replace more than four parts.
    """

    thresholds: tuple[int, ...] = (0, 2, 4)

    def __post_init__(self):
        if any(b < a for a, b in zip(self.thresholds, self.thresholds[1:])):
            raise ValueError("thresholds must be nondecreasing")

    def compatibility(self, changes: int, levels: int) -> int:
        if len(self.thresholds) != levels:
            raise ValueError(f"{len(self.thresholds)} thresholds for a [0..{levels}] scale")
        for i, bound in enumerate(self.thresholds):
            if changes <= bound:
                return levels - i
        return 0


@dataclass(frozen=True)
class Trajectory:
    """One composite decision per stage plus the trajectory-level quality."""

    picks: tuple[CompositeDecision, ...]
    quality: QualityVector

    def labels(self) -> list[str]:
        return [pick.label() for pick in self.picks]


def stage_solve(stage: StageSpec) -> ParetoSet:
    """Nondominated system decisions for one stage (root of the tree)."""
    return compose_tree(stage.model, stage.priorities)[stage.model.root.id]


def change_count(a: CompositeDecision, b: CompositeDecision) -> int:
    """Number of parts whose chosen alternative differs between two decisions."""
    da, db = a.as_dict(), b.as_dict()
    if set(da) != set(db):
        raise ValueError("decisions cover different part sets")
    return sum(1 for part, alt in da.items() if db[part] != alt)


def synthesize(
    stages: Sequence[StageSpec],
    config: ChangeCostConfig = ChangeCostConfig(),
    solutions: Mapping[str, ParetoSet] | None = None,
) -> list[Trajectory]:
    """Compose stage solutions into nondominated trajectories.

    Stage members get ordinal priorities by Pareto peeling within their
    stage (so the nondominated members all rate 1); consecutive picks are
    as compatible as the change-count mapping says, non-consecutive stage
    pairs don't interact, and trajectories containing a forbidden transition
    are dropped before the final Pareto filter.
    """
    if len(stages) < 2:
        raise ValueError("a trajectory needs at least two stages")
    model = stages[0].model
    k = model.scales.priority_levels
    levels = model.scales.compatibility_levels
    solved = dict(solutions) if solutions is not None else {s.label: stage_solve(s) for s in stages}
    member_layers: dict[str, list[int]] = {}
    for stage in stages:
        decisions = solved[stage.label].decisions
        if not decisions:
            raise InfeasibleError(f"stage {stage.label!r} has no solutions")
        member_layers[stage.label] = peel_layers([d.quality for d in decisions], k)

    feasible: list[Trajectory] = []
    option_sets = [list(enumerate(solved[s.label].decisions)) for s in stages]
    for combo in itertools.product(*option_sets):
        picks = tuple(decision for _, decision in combo)
        w = levels
        admissible = True
        for prev, nxt in zip(picks, picks[1:]):
            value = config.compatibility(change_count(prev, nxt), levels)
            if value == 0:
                admissible = False
                break
            w = min(w, value)
        if not admissible:
            continue
        counts = [0] * k
        for (idx, _), stage in zip(combo, stages):
            counts[member_layers[stage.label][idx] - 1] += 1
        feasible.append(Trajectory(picks, QualityVector(w, tuple(counts))))

    if not feasible:
        raise InfeasibleError("every trajectory includes a forbidden transition")
    kept = [
        t
        for t in feasible
        if not any(
            dominates_quality(o.quality, t.quality) is Dominance.STRICTLY_DOMINATES
            for o in feasible
            if o is not t
        )
    ]
    kept.sort(key=lambda t: tuple(pick.choice for pick in t.picks))
    return kept
