"""Domain types for morphological system models.

A model is a tree of parts whose leaves carry concrete design alternatives,
a list of ordinal criteria, and pairwise compatibility tables between the
alternatives of different leaf parts.  Everything is immutable after
construction and safe to share across threads.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Mapping, Sequence

__all__ = [
    "CriterionSpec",
    "DesignAlternative",
    "MorphNode",
    "CompatibilityMatrix",
    "Scales",
    "MorphModel",
    "Violation",
    "validate_model",
    "orient_estimates",
]

# alternative-id -> ordinal layer (1 is best); one mapping per leaf part
PriorityAssignment = Mapping[str, int]
# leaf-id -> PriorityAssignment, covering every leaf of a model
PriorityMap = Mapping[str, PriorityAssignment]


@dataclass(frozen=True)
class CriterionSpec:
    """One evaluation criterion.

    The weight's sign gives the orientation (positive: larger estimates are
    better, negative: smaller are better) and its magnitude the importance.
    """

    name: str
    weight: int


@dataclass(frozen=True)
class DesignAlternative:
    """A concrete option for one leaf part, with one estimate per criterion."""

    id: str
    estimates: tuple[int, ...]


@dataclass(frozen=True)
class MorphNode:
    """A node of the part tree: internal (children) or leaf (alternatives)."""

    id: str
    children: tuple[MorphNode, ...] = ()
    alternatives: tuple[DesignAlternative, ...] = ()

    @property
    def is_leaf(self) -> bool:
        return not self.children

    def alternative(self, alt_id: str) -> DesignAlternative:
        for alt in self.alternatives:
            if alt.id == alt_id:
                return alt
        raise KeyError(f"{self.id} has no alternative {alt_id!r}")


@dataclass(frozen=True)
class CompatibilityMatrix:
    """Ordinal compatibility between the alternatives of two leaf parts.

    ``entries`` is keyed by (alternative of part_a, alternative of part_b);
    lookups are symmetric, 0 forbids the combination.
    """

    part_a: str
    part_b: str
    entries: Mapping[tuple[str, str], int]

    def get(self, alt_a: str, alt_b: str) -> int:
        return self.entries[(alt_a, alt_b)]


@dataclass(frozen=True)
class Scales:
    """Ordinal scale bounds shared by a model."""

    priority_levels: int = 3  # k: layers 1..k, 1 best
    compatibility_levels: int = 3  # l: compatibility 0..l, l best, 0 forbidden
    estimate_min: int = 1
    estimate_max: int = 6


@dataclass(frozen=True)
class MorphModel:
    """A full problem instance: criteria, part tree, compatibility, scales."""

    criteria: tuple[CriterionSpec, ...]
    root: MorphNode
    compat: tuple[CompatibilityMatrix, ...]
    scales: Scales = field(default_factory=Scales)

    def __post_init__(self):
        nodes: dict[str, MorphNode] = {}
        leaves: list[MorphNode] = []
        for node in _walk(self.root):
            nodes.setdefault(node.id, node)
            if node.is_leaf:
                leaves.append(node)
        matrices: dict[frozenset[str], CompatibilityMatrix] = {}
        for matrix in self.compat:
            matrices.setdefault(frozenset((matrix.part_a, matrix.part_b)), matrix)
        object.__setattr__(self, "_nodes", nodes)
        object.__setattr__(self, "_leaves", tuple(leaves))
        object.__setattr__(self, "_matrices", matrices)

    def node(self, node_id: str) -> MorphNode:
        try:
            return self._nodes[node_id]
        except KeyError:
            raise KeyError(f"unknown node {node_id!r}") from None

    def leaves(self, node_id: str | None = None) -> tuple[MorphNode, ...]:
        """Leaf parts below ``node_id`` (whole tree by default), in tree order."""
        if node_id is None:
            return self._leaves
        return tuple(n for n in _walk(self.node(node_id)) if n.is_leaf)

    def part_index(self, part_id: str) -> int:
        for i, leaf in enumerate(self._leaves):
            if leaf.id == part_id:
                return i
        raise KeyError(f"unknown leaf part {part_id!r}")

    def matrix(self, part_a: str, part_b: str) -> CompatibilityMatrix | None:
        return self._matrices.get(frozenset((part_a, part_b)))

    def pair_value(self, part_a: str, alt_a: str, part_b: str, alt_b: str) -> int:
        """Compatibility of two chosen alternatives; missing matrix means
        fully compatible (the scale maximum)."""
        matrix = self.matrix(part_a, part_b)
        if matrix is None:
            return self.scales.compatibility_levels
        if matrix.part_a == part_a:
            return matrix.get(alt_a, alt_b)
        return matrix.get(alt_b, alt_a)

    def with_override(
        self, part_a: str, alt_a: str, part_b: str, alt_b: str, value: int
    ) -> "MorphModel":
        """A copy of the model with one compatibility entry replaced.

        Used for ephemeral what-if evaluation; the receiver is unchanged.
        """
        matrix = self.matrix(part_a, part_b)
        if matrix is None:
            raise KeyError(f"no compatibility matrix for parts ({part_a}, {part_b})")
        if matrix.part_a != part_a:
            part_a, part_b, alt_a, alt_b = part_b, part_a, alt_b, alt_a
        if (alt_a, alt_b) not in matrix.entries:
            raise KeyError(f"no compatibility entry for ({alt_a}, {alt_b})")
        entries = dict(matrix.entries)
        entries[(alt_a, alt_b)] = value
        replaced = CompatibilityMatrix(matrix.part_a, matrix.part_b, entries)
        compat = tuple(replaced if m is matrix else m for m in self.compat)
        return MorphModel(self.criteria, self.root, compat, self.scales)


def _walk(node: MorphNode) -> Iterator[MorphNode]:
    yield node
    for child in node.children:
        yield from _walk(child)


@dataclass(frozen=True)
class Violation:
    """One invariant breach found by :func:`validate_model`."""

    code: str
    subject: str  # id of the offending node / alternative / matrix pair
    message: str


def validate_model(model: MorphModel) -> list[Violation]:
    """Check every structural invariant; an empty list means the model is sound.

    Violations are data, not failures: callers decide what to do with them.
    The check is pure and idempotent.
    """
    out: list[Violation] = []
    scales = model.scales
    if scales.priority_levels < 1:
        out.append(Violation("scale", "scales", "priority levels must be >= 1"))
    if scales.compatibility_levels < 1:
        out.append(Violation("scale", "scales", "compatibility levels must be >= 1"))
    if scales.estimate_min > scales.estimate_max:
        out.append(Violation("scale", "scales", "estimate range is empty"))

    if not model.criteria:
        out.append(Violation("criteria", "criteria", "at least one criterion required"))
    for crit in model.criteria:
        if crit.weight == 0:
            out.append(Violation("criteria", crit.name, f"criterion {crit.name!r} has zero weight"))

    seen_ids: set[str] = set()
    for node in _walk(model.root):
        if node.id in seen_ids:
            out.append(Violation("tree", node.id, f"duplicate node id {node.id!r}"))
            continue
        seen_ids.add(node.id)
        if node.children and node.alternatives:
            out.append(Violation("tree", node.id, f"node {node.id!r} has both children and alternatives"))
        if node.is_leaf:
            if not node.alternatives:
                out.append(Violation("empty-leaf", node.id, f"leaf {node.id!r} has no alternatives"))
            _check_alternatives(model, node, out)
        elif len(node.children) < 2:
            out.append(Violation("tree", node.id, f"internal node {node.id!r} needs >= 2 children"))

    leaf_ids = {leaf.id for leaf in model.leaves()}
    seen_pairs: set[frozenset[str]] = set()
    for matrix in model.compat:
        subject = f"({matrix.part_a},{matrix.part_b})"
        pair = frozenset((matrix.part_a, matrix.part_b))
        if matrix.part_a == matrix.part_b:
            out.append(Violation("matrix", subject, f"matrix {subject} relates a part to itself"))
            continue
        if pair in seen_pairs:
            out.append(Violation("matrix", subject, f"duplicate matrix for pair {subject}"))
            continue
        seen_pairs.add(pair)
        missing_part = [p for p in (matrix.part_a, matrix.part_b) if p not in leaf_ids]
        if missing_part:
            out.append(Violation("matrix", subject, f"matrix {subject} references unknown leaf {missing_part[0]!r}"))
            continue
        _check_matrix(model, matrix, out)
    return out


def _check_alternatives(model: MorphModel, leaf: MorphNode, out: list[Violation]) -> None:
    seen: set[str] = set()
    for alt in leaf.alternatives:
        subject = f"{leaf.id}/{alt.id}"
        if alt.id in seen:
            out.append(Violation("alternative", subject, f"duplicate alternative id {alt.id!r} in leaf {leaf.id!r}"))
        seen.add(alt.id)
        if len(alt.estimates) != len(model.criteria):
            out.append(
                Violation(
                    "alternative",
                    subject,
                    f"alternative {subject} has {len(alt.estimates)} estimates for {len(model.criteria)} criteria",
                )
            )
            continue
        for j, value in enumerate(alt.estimates):
            if not model.scales.estimate_min <= value <= model.scales.estimate_max:
                out.append(
                    Violation(
                        "estimate-range",
                        subject,
                        f"estimate {value} of {subject} on criterion {j + 1} is outside "
                        f"[{model.scales.estimate_min}..{model.scales.estimate_max}]",
                    )
                )


def _check_matrix(model: MorphModel, matrix: CompatibilityMatrix, out: list[Violation]) -> None:
    subject = f"({matrix.part_a},{matrix.part_b})"
    alts_a = [a.id for a in model.node(matrix.part_a).alternatives]
    alts_b = [b.id for b in model.node(matrix.part_b).alternatives]
    top = model.scales.compatibility_levels
    for key in matrix.entries:
        a, b = key
        if a not in alts_a or b not in alts_b:
            out.append(Violation("matrix", subject, f"matrix {subject} has entry for unknown pair {key}"))
    for a, b in itertools.product(alts_a, alts_b):
        if (a, b) not in matrix.entries:
            out.append(Violation("matrix", subject, f"matrix {subject} is missing entry ({a},{b})"))
            continue
        value = matrix.entries[(a, b)]
        if not 0 <= value <= top:
            out.append(
                Violation(
                    "compat-range",
                    subject,
                    f"compatibility ({a},{b}) = {value} is outside [0..{top}]",
                )
            )


def orient_estimates(
    estimates: Sequence[Sequence[int]], criteria: Sequence[CriterionSpec]
) -> tuple[tuple[int, ...], ...]:
    """Flip negatively oriented columns so that larger is uniformly better.

    Each column is multiplied by the sign of its criterion's weight; the
    magnitudes are left to the ranking methods that care about them.
    """
    rows = [tuple(row) for row in estimates]
    for i, row in enumerate(rows):
        if len(row) != len(criteria):
            raise ValueError(f"row {i} has {len(row)} estimates for {len(criteria)} criteria")
    signs = [1 if crit.weight > 0 else -1 for crit in criteria]
    return tuple(tuple(v * s for v, s in zip(row, signs)) for row in rows)
