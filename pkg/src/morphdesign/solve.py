"""Shared solve workflows and their JSON payload shapes.

The CLI's ``--format json`` output and the HTTP responses are the same
payloads, built here, so the two surfaces can never drift apart and the
workbench renders exactly what either produces.
"""

from __future__ import annotations

from typing import Any, Mapping, Sequence

from .composition import CompositeDecision, ParetoSet, WhatIfDelta, compose_tree, what_if_improve
from .document import ProblemDocument
from .errors import InfeasibleError
from .mckp import KnapsackOrdering, Selection, exact_pack, greedy_pack, items_from_model, lambda_order
from .model import MorphModel, MorphNode, PriorityMap
from .ranking import RankingConfig, rank
from .trajectory import ChangeCostConfig, StageSpec, Trajectory, stage_solve, synthesize

__all__ = [
    "scenario_context",
    "rank_payload",
    "compose_payload",
    "knapsack_payload",
    "trajectory_payload",
    "whatif_payload",
]


def scenario_context(doc: ProblemDocument, scenario: str | None) -> tuple[str, MorphModel, PriorityMap]:
    """Resolve a scenario name (default: the document's first) to model + priorities.

    Scenario weights re-orient the criteria; missing priorities fall back to
    dominance ranking so a weights-only scenario still composes.
    """
    name = scenario or doc.default_scenario()
    if name is None:
        raise KeyError("document declares no scenarios; supply priorities explicitly")
    spec = doc.scenario(name)
    model = doc.to_model(name)
    if spec.priorities is not None:
        priorities = spec.priorities
    else:
        config = RankingConfig(method="dominance-layers", max_layers=model.scales.priority_levels)
        priorities = {leaf.id: rank(model, leaf.id, config) for leaf in model.leaves()}
    return name, model, priorities


def _decision_payload(decision: CompositeDecision) -> dict[str, Any]:
    return {
        "choice": dict(decision.choice),
        "label": decision.label(),
        "quality": {
            "w": decision.quality.w,
            "n": list(decision.quality.n),
            "notation": decision.quality.notation(),
        },
        "bottlenecks": [
            {"parts": [pa, pb], "alternatives": [aa, ab], "value": value}
            for (pa, aa), (pb, ab), value in decision.bottlenecks
        ],
    }


def _pareto_payload(ps: ParetoSet) -> dict[str, Any]:
    return {"id": ps.node_id, "decisions": [_decision_payload(d) for d in ps.decisions]}


def rank_payload(
    doc: ProblemDocument,
    scenario: str | None = None,
    node: str | None = None,
    method: str | None = None,
) -> dict[str, Any]:
    name, model, external = scenario_context_for_rank(doc, scenario)
    if method is None:
        method = "external" if external else "dominance-layers"
    config = RankingConfig(method=method, max_layers=model.scales.priority_levels)
    leaves = [model.node(node)] if node else list(model.leaves())
    assignments = {
        leaf.id: rank(model, leaf.id, config, (external or {}).get(leaf.id))
        for leaf in leaves
    }
    return {"scenario": name, "method": method, "assignments": assignments}


def scenario_context_for_rank(
    doc: ProblemDocument, scenario: str | None
) -> tuple[str | None, MorphModel, PriorityMap | None]:
    name = scenario or doc.default_scenario()
    if name is None:
        return None, doc.to_model(), None
    spec = doc.scenario(name)
    return name, doc.to_model(name), spec.priorities


def compose_payload(
    doc: ProblemDocument,
    scenario: str | None = None,
    node: str | None = None,
    priority_overrides: PriorityMap | None = None,
) -> dict[str, Any]:
    name, model, priorities = scenario_context(doc, scenario)
    if priority_overrides:
        priorities = _merge_priorities(priorities, priority_overrides)
    results = compose_tree(model, priorities)
    if node is not None:
        model.node(node)  # raises KeyError for unknown ids
        nodes = [results[node]]
    else:
        nodes = [results[n.id] for n in _walk_internal(model.root)]
    return {"scenario": name, "nodes": [_pareto_payload(ps) for ps in nodes]}


def _walk_internal(node: MorphNode):
    if not node.is_leaf:
        yield node
        for child in node.children:
            yield from _walk_internal(child)


def _merge_priorities(base: PriorityMap, overrides: PriorityMap) -> dict:
    merged = {leaf: dict(assignment) for leaf, assignment in base.items()}
    for leaf, assignment in overrides.items():
        merged.setdefault(leaf, {}).update(assignment)
    return merged


def _ordering_payload(ordering: KnapsackOrdering) -> list[dict[str, Any]]:
    return [
        {
            "group": entry.item.group,
            "id": entry.item.id,
            "cost": entry.item.cost,
            "utility_priority": entry.item.utility_priority,
            "relative_utility": round(float(entry.relative_utility), 2),
            "relative_utility_exact": str(entry.relative_utility),
            "rank": entry.rank,
        }
        for entry in ordering.entries
    ]


def _selection_payload(selection: Selection) -> dict[str, Any]:
    return {
        "picks": dict(selection.picks),
        "label": selection.label(),
        "total_cost": selection.total_cost,
        "total_relative_utility": round(float(selection.total_lambda), 2),
        "total_relative_utility_exact": str(selection.total_lambda),
    }


def knapsack_payload(doc: ProblemDocument, budget: int) -> dict[str, Any]:
    if doc.knapsack is None:
        raise KeyError("document has no knapsack section")
    model = doc.to_model()
    items = items_from_model(model, doc.knapsack.utility_priorities, doc.knapsack.cost_criterion)
    ordering = lambda_order(items)
    exact = exact_pack(items, budget, ordering)
    greedy = greedy_pack(items, budget, ordering)
    return {
        "budget": budget,
        "ordering": _ordering_payload(ordering),
        "selection": _selection_payload(exact),
        "greedy": _selection_payload(greedy),
    }


def stage_specs(doc: ProblemDocument) -> list[StageSpec]:
    if not doc.stages:
        raise KeyError("document declares no stages")
    return [
        StageSpec(ref.label, doc.to_model(ref.scenario), doc.scenario(ref.scenario).priorities)
        for ref in doc.stages
    ]


def trajectory_payload(
    doc: ProblemDocument, thresholds: Sequence[int] | None = None
) -> dict[str, Any]:
    specs = stage_specs(doc)
    config = ChangeCostConfig(tuple(thresholds)) if thresholds is not None else ChangeCostConfig()
    solutions = {spec.label: stage_solve(spec) for spec in specs}
    trajectories = synthesize(specs, config, solutions)
    return {
        "stages": [
            {"label": spec.label, "scenario": ref.scenario, **_pareto_payload(solutions[spec.label])}
            for spec, ref in zip(specs, doc.stages)
        ],
        "thresholds": list(config.thresholds),
        "trajectories": [_trajectory_payload(t, specs) for t in trajectories],
    }


def _trajectory_payload(trajectory: Trajectory, specs: Sequence[StageSpec]) -> dict[str, Any]:
    return {
        "picks": [
            {"stage": spec.label, "choice": dict(pick.choice), "label": pick.label()}
            for spec, pick in zip(specs, trajectory.picks)
        ],
        "quality": {
            "w": trajectory.quality.w,
            "n": list(trajectory.quality.n),
            "notation": trajectory.quality.notation(),
        },
    }


def whatif_payload(
    doc: ProblemDocument,
    scenario: str | None,
    compatibility: Sequence[Mapping[str, Any]] = (),
    priorities: PriorityMap | None = None,
    node: str | None = None,
) -> dict[str, Any]:
    """Evaluate ephemeral overrides; the document itself is never touched.

    Exactly one compatibility override is the primary use (bottleneck
    improvement); priority overrides re-rank alternatives hypothetically.
    With no compatibility override the payload is the before/after of the
    priority change on the requested node (default: the root).
    """
    name, model, base_priorities = scenario_context(doc, scenario)
    merged = _merge_priorities(base_priorities, priorities or {})
    if len(compatibility) > 1:
        raise ValueError("one compatibility override per what-if call")
    if compatibility:
        ov = compatibility[0]
        delta = what_if_improve(
            model,
            merged,
            ((ov["parts"][0], ov["alternatives"][0]), (ov["parts"][1], ov["alternatives"][1])),
            ov["value"],
            node_id=node,
        )
    else:
        target = node or model.root.id
        before = _solve_node(model, base_priorities, target)
        after = _solve_node(model, merged, target)
        delta = _diff(target, before, after)
    return {
        "scenario": name,
        "node": delta.node_id,
        "before": [_decision_payload(d) for d in delta.before],
        "after": [_decision_payload(d) for d in delta.after],
        "entered": [_decision_payload(d) for d in delta.entered],
        "left": [_decision_payload(d) for d in delta.left],
        "changed": [
            {
                "choice": dict(b.choice),
                "label": b.label(),
                "before": _decision_payload(b)["quality"],
                "after": _decision_payload(a)["quality"],
            }
            for b, a in delta.changed
        ],
        "empty": delta.empty,
    }


def _solve_node(model: MorphModel, priorities: PriorityMap, node: str) -> ParetoSet:
    try:
        return compose_tree(model, priorities)[node]
    except InfeasibleError:
        return ParetoSet(node, ())


def _diff(node_id: str, before: ParetoSet, after: ParetoSet) -> WhatIfDelta:
    before_by = {d.choice: d for d in before}
    after_by = {d.choice: d for d in after}
    return WhatIfDelta(
        node_id=node_id,
        before=before,
        after=after,
        entered=tuple(d for d in after if d.choice not in before_by),
        left=tuple(d for d in before if d.choice not in after_by),
        changed=tuple(
            (d, after_by[d.choice])
            for d in before
            if d.choice in after_by and after_by[d.choice].quality != d.quality
        ),
    )
