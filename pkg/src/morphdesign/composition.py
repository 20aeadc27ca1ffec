"""Compatibility-constrained composition of design alternatives.

One alternative is chosen per part; a combination is admissible when every
pairwise compatibility is nonzero.  Combinations are scored by a quality
vector (minimum pairwise compatibility; per-layer counts of the chosen
alternatives' priorities) and filtered to the nondominated set under the
cumulative-count lattice order.  Composition runs bottom-up over the part
tree, and single compatibility entries can be overridden ephemerally to
answer what-if questions about bottleneck pairs.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InfeasibleError
from .model import MorphModel, MorphNode, PriorityMap

__all__ = [
    "QualityVector",
    "Dominance",
    "CompositeDecision",
    "ParetoSet",
    "quality_vector",
    "dominates_quality",
    "compose_part",
    "compose_tree",
    "find_bottlenecks",
    "what_if_improve",
    "WhatIfDelta",
    "peel_layers",
    "lattice_nodes",
    "lattice_covers",
]


@dataclass(frozen=True)
class QualityVector:
    """System quality: compatibility floor ``w`` plus per-layer counts ``n``.

    ``n[r-1]`` counts the chosen alternatives of priority ``r``; the counts
    sum to the number of composed parts.
    """

    w: int
    n: tuple[int, ...]

    @property
    def parts(self) -> int:
        return sum(self.n)

    def cumulative(self) -> tuple[int, ...]:
        return tuple(itertools.accumulate(self.n))

    def notation(self) -> str:
        return f"({self.w};{','.join(str(c) for c in self.n)})"


class Dominance(enum.Enum):
    STRICTLY_DOMINATES = "strictly-dominates"
    EQUAL = "equal"
    DOMINATED = "dominated"
    INCOMPARABLE = "incomparable"


def dominates_quality(a: QualityVector, b: QualityVector) -> Dominance:
    """Compare two quality vectors in the lattice order.

    ``a`` is at least as good as ``b`` when its ``w`` is no smaller and every
    cumulative layer count (best layer first) is no smaller; strictly better
    when additionally some comparison is strict.
    """
    if len(a.n) != len(b.n):
        raise ValueError(f"layer counts disagree: {len(a.n)} vs {len(b.n)}")
    if a.parts != b.parts:
        raise ValueError(f"part counts disagree: {a.parts} vs {b.parts}")
    forward = a.w >= b.w and all(x >= y for x, y in zip(a.cumulative(), b.cumulative()))
    backward = b.w >= a.w and all(y >= x for x, y in zip(a.cumulative(), b.cumulative()))
    if forward and backward:
        return Dominance.EQUAL
    if forward:
        return Dominance.STRICTLY_DOMINATES
    if backward:
        return Dominance.DOMINATED
    return Dominance.INCOMPARABLE


@dataclass(frozen=True)
class CompositeDecision:
    """One alternative per part, with quality and its limiting pairs.

    ``choice`` is ordered by part (tree order); ``bottlenecks`` lists every
    pair sitting at ``quality.w`` as ((part, alt), (part, alt), value) and is
    empty for a single part, where no pair exists.
    """

    choice: tuple[tuple[str, str], ...]
    quality: QualityVector
    bottlenecks: tuple[tuple[tuple[str, str], tuple[str, str], int], ...] = ()

    def as_dict(self) -> dict[str, str]:
        return dict(self.choice)

    def label(self) -> str:
        return " ".join(alt for _, alt in self.choice)


@dataclass(frozen=True)
class ParetoSet:
    """Decisions of one node, none strictly dominating another.

    Leaf nodes are the one exception: their sets list every alternative as a
    singleton decision, dominated or not, because composition above them must
    still be free to pick any alternative.
    """

    node_id: str
    decisions: tuple[CompositeDecision, ...]

    def __iter__(self):
        return iter(self.decisions)

    def __len__(self) -> int:
        return len(self.decisions)


def quality_vector(
    choice: Sequence[tuple[str, str]],
    priorities: PriorityMap,
    model: MorphModel,
    collect_bottlenecks: bool = False,
) -> QualityVector | tuple[QualityVector, tuple]:
    """Score one combination; raises :class:`InfeasibleError` on a zero pair.

    ``w`` is the minimum compatibility over all part pairs of the choice
    (scale maximum when fewer than two parts); pairs without a declared
    matrix count as fully compatible.
    """
    k = model.scales.priority_levels
    top = model.scales.compatibility_levels
    counts = [0] * k
    for part, alt in choice:
        layer = priorities[part][alt]
        if not 1 <= layer <= k:
            raise ValueError(f"priority {layer} of {part}/{alt} outside [1..{k}]")
        counts[layer - 1] += 1
    w = top
    pairs: list[tuple[tuple[str, str], tuple[str, str], int]] = []
    for (pa, aa), (pb, ab) in itertools.combinations(choice, 2):
        value = model.pair_value(pa, aa, pb, ab)
        if value == 0:
            raise InfeasibleError(
                f"({aa},{ab}) has compatibility 0", diagnostics=[(pa, aa, pb, ab)]
            )
        w = min(w, value)
        if collect_bottlenecks:
            pairs.append(((pa, aa), (pb, ab), value))
    quality = QualityVector(w, tuple(counts))
    if not collect_bottlenecks:
        return quality
    bottlenecks = tuple(p for p in pairs if p[2] == w)
    return quality, bottlenecks


def _pareto_filter(decisions: Iterable[CompositeDecision]) -> list[CompositeDecision]:
    decisions = list(decisions)
    kept = []
    for d in decisions:
        if not any(
            dominates_quality(other.quality, d.quality) is Dominance.STRICTLY_DOMINATES
            for other in decisions
            if other is not d
        ):
            kept.append(d)
    return kept


def _choice_sort_key(model: MorphModel, decision: CompositeDecision) -> tuple[int, ...]:
    key = []
    for part, alt in decision.choice:
        leaf = model.node(part)
        key.append(next(i for i, a in enumerate(leaf.alternatives) if a.id == alt))
    return tuple(key)


def _compose_options(
    model: MorphModel,
    node: MorphNode,
    priorities: PriorityMap,
    options_per_child: Sequence[Sequence[CompositeDecision]],
) -> ParetoSet:
    """Cross child option sets, drop zero-pair combinations, Pareto-filter."""
    feasible: list[CompositeDecision] = []
    zero_pairs: set[tuple[str, str, str, str]] = set()
    for combo in itertools.product(*options_per_child):
        choice: list[tuple[str, str]] = []
        for member in combo:
            choice.extend(member.choice)
        try:
            quality, bottlenecks = quality_vector(choice, priorities, model, collect_bottlenecks=True)
        except InfeasibleError as exc:
            zero_pairs.update(exc.diagnostics)
            continue
        feasible.append(CompositeDecision(tuple(choice), quality, bottlenecks))
    if not feasible:
        raise InfeasibleError(
            f"no admissible combination for node {node.id!r}",
            diagnostics=sorted(zero_pairs),
        )
    kept = _pareto_filter(feasible)
    kept.sort(key=lambda d: _choice_sort_key(model, d))
    return ParetoSet(node.id, tuple(kept))


def _leaf_decisions(model: MorphModel, leaf: MorphNode, priorities: PriorityMap) -> ParetoSet:
    k = model.scales.priority_levels
    top = model.scales.compatibility_levels
    decisions = []
    for alt in leaf.alternatives:
        layer = priorities[leaf.id][alt.id]
        counts = [0] * k
        counts[layer - 1] += 1
        decisions.append(CompositeDecision(((leaf.id, alt.id),), QualityVector(top, tuple(counts))))
    return ParetoSet(leaf.id, tuple(decisions))


def compose_part(model: MorphModel, node_id: str, priorities: PriorityMap) -> ParetoSet:
    """Compose one internal node whose children are all leaf parts."""
    node = model.node(node_id)
    if node.is_leaf:
        return _leaf_decisions(model, node, priorities)
    if not all(child.is_leaf for child in node.children):
        raise ValueError(f"node {node_id!r} has internal children; use compose_tree")
    options = [_leaf_decisions(model, child, priorities).decisions for child in node.children]
    return _compose_options(model, node, priorities, options)


def compose_tree(model: MorphModel, priorities: PriorityMap) -> dict[str, ParetoSet]:
    """Compose every node bottom-up; returns the per-node decision sets.

    Internal nodes combine their children's nondominated members only, so a
    combination's quality is evaluated over its full flat choice: explicit
    matrices bound ``w`` wherever they exist and everything else (notably
    pairs that cross child subtrees without a matrix) is neutral.
    """
    result: dict[str, ParetoSet] = {}

    def visit(node: MorphNode) -> ParetoSet:
        if node.is_leaf:
            ps = _leaf_decisions(model, node, priorities)
        else:
            options = [visit(child).decisions for child in node.children]
            ps = _compose_options(model, node, priorities, options)
        result[node.id] = ps
        return ps

    visit(model.root)
    return result


def find_bottlenecks(decision: CompositeDecision) -> list[tuple[tuple[str, str], tuple[str, str], int]]:
    """Pairs sitting at the decision's compatibility floor, in part order."""
    return list(decision.bottlenecks)


@dataclass(frozen=True)
class WhatIfDelta:
    """Effect of one ephemeral compatibility override on a node's decisions."""

    node_id: str
    before: ParetoSet
    after: ParetoSet
    entered: tuple[CompositeDecision, ...]
    left: tuple[CompositeDecision, ...]
    changed: tuple[tuple[CompositeDecision, CompositeDecision], ...]

    @property
    def empty(self) -> bool:
        return not (self.entered or self.left or self.changed)


def what_if_improve(
    model: MorphModel,
    priorities: PriorityMap,
    pair: tuple[tuple[str, str], tuple[str, str]],
    value: int,
    node_id: str | None = None,
) -> WhatIfDelta:
    """Recompose with one compatibility entry overridden; the model is untouched.

    ``pair`` names the two (part, alternative) endpoints.  By default the
    nearest node covering both parts is recomposed; infeasibility after the
    override is reported as an empty 'after' set rather than an error, since
    emptying a node is a legitimate what-if outcome.
    """
    (part_a, alt_a), (part_b, alt_b) = pair
    if not 0 <= value <= model.scales.compatibility_levels:
        raise ValueError(f"compatibility {value} outside [0..{model.scales.compatibility_levels}]")
    overridden = model.with_override(part_a, alt_a, part_b, alt_b, value)
    if node_id is None:
        node_id = _covering_node(model, part_a, part_b)

    def solve(m: MorphModel) -> ParetoSet:
        try:
            return compose_tree(m, priorities)[node_id]
        except InfeasibleError:
            return ParetoSet(node_id, ())

    before = solve(model)
    after = solve(overridden)
    before_by_choice = {d.choice: d for d in before}
    after_by_choice = {d.choice: d for d in after}
    entered = tuple(d for d in after if d.choice not in before_by_choice)
    left = tuple(d for d in before if d.choice not in after_by_choice)
    changed = tuple(
        (d, after_by_choice[d.choice])
        for d in before
        if d.choice in after_by_choice and after_by_choice[d.choice].quality != d.quality
    )
    return WhatIfDelta(node_id, before, after, entered, left, changed)


def _covering_node(model: MorphModel, part_a: str, part_b: str) -> str:
    def covers(node: MorphNode) -> bool:
        leaf_ids = {leaf.id for leaf in model.leaves(node.id)}
        return part_a in leaf_ids and part_b in leaf_ids

    node = model.root
    if not covers(node):
        raise KeyError(f"no node covers parts ({part_a}, {part_b})")
    while True:
        narrower = [child for child in node.children if covers(child)]
        if not narrower:
            return node.id
        node = narrower[0]


def peel_layers(qualities: Sequence[QualityVector], k: int) -> list[int]:
    """Layer quality vectors by iterative Pareto peeling, clamped at ``k``.

    The hook for deeper hierarchies: composite decisions get ordinal
    priorities of their own when they feed a higher-level composition.
    """
    layers = [0] * len(qualities)
    remaining = list(range(len(qualities)))
    layer = 1
    while remaining:
        top = [
            i
            for i in remaining
            if not any(
                dominates_quality(qualities[j], qualities[i]) is Dominance.STRICTLY_DOMINATES
                for j in remaining
                if j != i
            )
        ]
        for i in top:
            layers[i] = min(layer, k)
        remaining = [i for i in remaining if i not in top]
        layer += 1
    return layers


def lattice_nodes(k: int, m: int) -> list[tuple[int, ...]]:
    """All layer-count vectors of ``m`` parts over ``k`` layers, best first."""
    nodes = [
        counts
        for counts in itertools.product(range(m + 1), repeat=k)
        if sum(counts) == m
    ]
    nodes.sort(key=lambda n: tuple(-c for c in itertools.accumulate(n)))
    return nodes


def lattice_covers(k: int, m: int) -> set[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Cover relations (upper, lower) of the cumulative-count order."""
    nodes = lattice_nodes(k, m)

    def above(a: tuple[int, ...], b: tuple[int, ...]) -> bool:
        ca = tuple(itertools.accumulate(a))
        cb = tuple(itertools.accumulate(b))
        return a != b and all(x >= y for x, y in zip(ca, cb))

    covers = set()
    for a, b in itertools.permutations(nodes, 2):
        if above(a, b) and not any(above(a, c) and above(c, b) for c in nodes):
            covers.add((a, b))
    return covers
