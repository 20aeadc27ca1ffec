"""Problem-file format: parsing, validation, canonical serialization.

Problems are single UTF-8 JSON documents with an explicit format version.
Parsing is strict: unknown fields are rejected, the embedded model must pass
every structural invariant, and named scenarios/stages/knapsack sections are
cross-checked against the tree.  Serialization is canonical (fixed key
order, two-space indent), so equal documents produce identical bytes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from typing import Any, Mapping

import jsonschema

from .errors import DocumentError
from .model import (
    CompatibilityMatrix,
    CriterionSpec,
    DesignAlternative,
    MorphModel,
    MorphNode,
    PriorityMap,
    Scales,
    validate_model,
)

__all__ = ["ProblemDocument", "Scenario", "StageRef", "KnapsackSection", "parse_problem", "serialize_problem", "problem_schema"]

FORMAT_VERSION = "1"


def problem_schema() -> dict:
    """The JSON schema shared by the CLI, the service, and the workbench."""
    with resources.files(__package__).joinpath("schema.json").open("rb") as fh:
        return json.load(fh)


@dataclass(frozen=True)
class Scenario:
    weights: tuple[int, ...] | None = None
    priorities: PriorityMap | None = None


@dataclass(frozen=True)
class StageRef:
    label: str
    scenario: str


@dataclass(frozen=True)
class KnapsackSection:
    cost_criterion: int
    utility_priorities: PriorityMap


@dataclass(frozen=True)
class ProblemDocument:
    name: str
    scales: Scales
    criteria: tuple[CriterionSpec, ...]
    tree: MorphNode
    compatibility: tuple[CompatibilityMatrix, ...]
    description: str | None = None
    scenarios: Mapping[str, Scenario] = field(default_factory=dict)
    stages: tuple[StageRef, ...] = ()
    knapsack: KnapsackSection | None = None
    format_version: str = FORMAT_VERSION

    def to_model(self, scenario: str | None = None) -> MorphModel:
        """Build the immutable model, optionally under a scenario's weights."""
        criteria = self.criteria
        if scenario is not None:
            weights = self.scenario(scenario).weights
            if weights is not None:
                criteria = tuple(
                    CriterionSpec(c.name, w) for c, w in zip(self.criteria, weights)
                )
        return MorphModel(criteria, self.tree, self.compatibility, self.scales)

    def scenario(self, name: str) -> Scenario:
        try:
            return self.scenarios[name]
        except KeyError:
            raise KeyError(f"unknown scenario {name!r}") from None

    def default_scenario(self) -> str | None:
        return next(iter(self.scenarios), None)


def parse_problem(data: bytes | str) -> ProblemDocument:
    """Parse and fully validate one problem document.

    Raises :class:`DocumentError` with line/path diagnostics on malformed
    syntax, schema violations, model invariant breaches, or dangling
    scenario/stage/knapsack references.
    """
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise DocumentError(f"not UTF-8: {exc}") from exc
    try:
        raw = json.loads(data)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"malformed JSON: {exc.msg}", line=exc.lineno) from exc

    validator = jsonschema.Draft202012Validator(problem_schema())
    errors = sorted(validator.iter_errors(raw), key=lambda e: list(e.absolute_path))
    if errors:
        first = errors[0]
        raise DocumentError(f"schema violation: {first.message}", path=list(first.absolute_path))

    doc = _build_document(raw)
    _cross_check(doc)
    return doc


def serialize_problem(doc: ProblemDocument) -> str:
    """Canonical JSON text for a document; parse round-trips to equality."""
    return json.dumps(_to_raw(doc), indent=2, ensure_ascii=False) + "\n"


def _build_document(raw: Mapping[str, Any]) -> ProblemDocument:
    scales_raw = raw.get("scales", {})
    est_lo, est_hi = scales_raw.get("estimate_range", (1, 6))
    scales = Scales(
        priority_levels=scales_raw.get("priority_levels", 3),
        compatibility_levels=scales_raw.get("compatibility_levels", 3),
        estimate_min=est_lo,
        estimate_max=est_hi,
    )
    criteria = tuple(CriterionSpec(c["name"], c["weight"]) for c in raw["criteria"])
    tree = _build_node(raw["tree"])
    compat = tuple(
        CompatibilityMatrix(
            m["parts"][0],
            m["parts"][1],
            {
                (a, b): value
                for a, row in m["values"].items()
                for b, value in row.items()
            },
        )
        for m in raw.get("compatibility", [])
    )
    scenarios = {
        name: Scenario(
            weights=tuple(s["weights"]) if "weights" in s else None,
            priorities={leaf: dict(alts) for leaf, alts in s["priorities"].items()}
            if "priorities" in s
            else None,
        )
        for name, s in raw.get("scenarios", {}).items()
    }
    stages = tuple(StageRef(s["label"], s["scenario"]) for s in raw.get("stages", []))
    knapsack = None
    if "knapsack" in raw:
        knapsack = KnapsackSection(
            cost_criterion=raw["knapsack"]["cost_criterion"],
            utility_priorities={
                leaf: dict(alts)
                for leaf, alts in raw["knapsack"]["utility_priorities"].items()
            },
        )
    return ProblemDocument(
        name=raw["name"],
        description=raw.get("description"),
        scales=scales,
        criteria=criteria,
        tree=tree,
        compatibility=compat,
        scenarios=scenarios,
        stages=stages,
        knapsack=knapsack,
        format_version=raw["format_version"],
    )


def _build_node(raw: Mapping[str, Any]) -> MorphNode:
    if "children" in raw:
        return MorphNode(raw["id"], children=tuple(_build_node(c) for c in raw["children"]))
    alts = tuple(DesignAlternative(a["id"], tuple(a["estimates"])) for a in raw["alternatives"])
    return MorphNode(raw["id"], alternatives=alts)


def _cross_check(doc: ProblemDocument) -> None:
    model = doc.to_model()
    violations = validate_model(model)
    if violations:
        worst = violations[0]
        summary = "; ".join(v.message for v in violations[:5])
        more = f" (+{len(violations) - 5} more)" if len(violations) > 5 else ""
        raise DocumentError(f"model violation: {summary}{more}", path=[worst.subject])

    leaf_alts = {leaf.id: [a.id for a in leaf.alternatives] for leaf in model.leaves()}
    for name, scenario in doc.scenarios.items():
        where = ["scenarios", name]
        if scenario.weights is not None and len(scenario.weights) != len(doc.criteria):
            raise DocumentError(
                f"scenario {name!r} has {len(scenario.weights)} weights for {len(doc.criteria)} criteria",
                path=where,
            )
        if scenario.priorities is not None:
            _check_priorities(scenario.priorities, leaf_alts, doc.scales.priority_levels, where)
    labels = [s.label for s in doc.stages]
    if len(set(labels)) != len(labels):
        raise DocumentError("stage labels must be unique", path=["stages"])
    for stage in doc.stages:
        if stage.scenario not in doc.scenarios:
            raise DocumentError(
                f"stage {stage.label!r} references unknown scenario {stage.scenario!r}",
                path=["stages", stage.label],
            )
        if doc.scenarios[stage.scenario].priorities is None:
            raise DocumentError(
                f"stage {stage.label!r} needs a scenario with priorities",
                path=["stages", stage.label],
            )
    if doc.knapsack is not None:
        if not 0 <= doc.knapsack.cost_criterion < len(doc.criteria):
            raise DocumentError(
                f"knapsack cost criterion {doc.knapsack.cost_criterion} out of range",
                path=["knapsack", "cost_criterion"],
            )
        _check_priorities(
            doc.knapsack.utility_priorities, leaf_alts, None, ["knapsack", "utility_priorities"]
        )


def _check_priorities(
    priorities: PriorityMap,
    leaf_alts: Mapping[str, list[str]],
    max_layer: int | None,
    where: list,
) -> None:
    for leaf, assignment in priorities.items():
        if leaf not in leaf_alts:
            raise DocumentError(f"priorities reference unknown part {leaf!r}", path=where + [leaf])
        missing = [a for a in leaf_alts[leaf] if a not in assignment]
        if missing:
            raise DocumentError(
                f"priorities for {leaf!r} missing alternatives {missing}", path=where + [leaf]
            )
        unknown = [a for a in assignment if a not in leaf_alts[leaf]]
        if unknown:
            raise DocumentError(
                f"priorities for {leaf!r} name unknown alternatives {unknown}", path=where + [leaf]
            )
        if max_layer is not None:
            for alt, layer in assignment.items():
                if not 1 <= layer <= max_layer:
                    raise DocumentError(
                        f"priority {layer} of {leaf}/{alt} outside [1..{max_layer}]",
                        path=where + [leaf, alt],
                    )


def _to_raw(doc: ProblemDocument) -> dict:
    out: dict[str, Any] = {
        "format_version": doc.format_version,
        "name": doc.name,
    }
    if doc.description is not None:
        out["description"] = doc.description
    out["scales"] = {
        "priority_levels": doc.scales.priority_levels,
        "compatibility_levels": doc.scales.compatibility_levels,
        "estimate_range": [doc.scales.estimate_min, doc.scales.estimate_max],
    }
    out["criteria"] = [{"name": c.name, "weight": c.weight} for c in doc.criteria]
    out["tree"] = _node_raw(doc.tree)
    if doc.compatibility:
        model = doc.to_model()
        out["compatibility"] = [_matrix_raw(model, m) for m in doc.compatibility]
    if doc.scenarios:
        out["scenarios"] = {
            name: _scenario_raw(doc, s) for name, s in doc.scenarios.items()
        }
    if doc.stages:
        out["stages"] = [{"label": s.label, "scenario": s.scenario} for s in doc.stages]
    if doc.knapsack is not None:
        out["knapsack"] = {
            "cost_criterion": doc.knapsack.cost_criterion,
            "utility_priorities": _priorities_raw(doc, doc.knapsack.utility_priorities),
        }
    return out


def _node_raw(node: MorphNode) -> dict:
    if node.is_leaf:
        return {
            "id": node.id,
            "alternatives": [
                {"id": a.id, "estimates": list(a.estimates)} for a in node.alternatives
            ],
        }
    return {"id": node.id, "children": [_node_raw(c) for c in node.children]}


def _matrix_raw(model: MorphModel, matrix: CompatibilityMatrix) -> dict:
    alts_a = [a.id for a in model.node(matrix.part_a).alternatives]
    alts_b = [b.id for b in model.node(matrix.part_b).alternatives]
    return {
        "parts": [matrix.part_a, matrix.part_b],
        "values": {a: {b: matrix.entries[(a, b)] for b in alts_b} for a in alts_a},
    }


def _scenario_raw(doc: ProblemDocument, scenario: Scenario) -> dict:
    out: dict[str, Any] = {}
    if scenario.weights is not None:
        out["weights"] = list(scenario.weights)
    if scenario.priorities is not None:
        out["priorities"] = _priorities_raw(doc, scenario.priorities)
    return out


def _priorities_raw(doc: ProblemDocument, priorities: PriorityMap) -> dict:
    model = doc.to_model()
    out = {}
    for leaf in model.leaves():
        if leaf.id in priorities:
            assignment = priorities[leaf.id]
            out[leaf.id] = {a.id: assignment[a.id] for a in leaf.alternatives}
    return out
