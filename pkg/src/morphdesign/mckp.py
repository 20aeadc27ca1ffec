"""Budgeted one-per-group selection (multiple-choice knapsack).

Items carry a cost and an ordinal utility priority; the priority gap to the
worst item, divided by cost, gives each item's relative utility, and that
scalar drives both the fast greedy heuristic and the exact solver.  A
vector-profit variant enumerates the Pareto-efficient selections instead.
Relative utilities are kept as exact rationals; only display rounds them.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import InfeasibleError
from .model import MorphModel

__all__ = [
    "KnapsackItem",
    "OrderedItem",
    "KnapsackOrdering",
    "Selection",
    "lambda_order",
    "greedy_pack",
    "exact_pack",
    "pareto_pack",
    "items_from_model",
]


@dataclass(frozen=True)
class KnapsackItem:
    group: str
    id: str
    cost: int
    utility_priority: int  # ordinal, 1 best; larger means less useful
    profit_vector: tuple[int, ...] | None = None


@dataclass(frozen=True)
class OrderedItem:
    item: KnapsackItem
    relative_utility: Fraction  # (worst priority - own priority) / cost
    rank: int  # position 1..N in the descending utility order


@dataclass(frozen=True)
class KnapsackOrdering:
    entries: tuple[OrderedItem, ...]  # input order
    worst_priority: int

    def by_rank(self) -> list[OrderedItem]:
        return sorted(self.entries, key=lambda e: e.rank)


@dataclass(frozen=True)
class Selection:
    picks: tuple[tuple[str, str], ...]  # (group, item id), group order
    total_cost: int
    total_lambda: Fraction
    total_profit: tuple[int, ...] | None = None  # summed vector, pareto_pack only

    def as_dict(self) -> dict[str, str]:
        return dict(self.picks)

    def label(self) -> str:
        return " ".join(item for _, item in self.picks)


def lambda_order(items: Sequence[KnapsackItem]) -> KnapsackOrdering:
    """Order items by relative utility, descending; ties keep input order."""
    if not items:
        raise ValueError("no items to order")
    for item in items:
        if item.cost <= 0:
            raise ValueError(f"item {item.id!r} has nonpositive cost {item.cost}")
        if item.utility_priority < 1:
            raise ValueError(f"item {item.id!r} has priority {item.utility_priority} < 1")
    worst = max(item.utility_priority for item in items)
    lambdas = [Fraction(worst - item.utility_priority, item.cost) for item in items]
    order = sorted(range(len(items)), key=lambda i: (-lambdas[i], i))
    ranks = [0] * len(items)
    for position, i in enumerate(order, start=1):
        ranks[i] = position
    entries = tuple(
        OrderedItem(item, lam, rank) for item, lam, rank in zip(items, lambdas, ranks)
    )
    return KnapsackOrdering(entries, worst)


def _groups(items: Sequence[KnapsackItem]) -> dict[str, list[KnapsackItem]]:
    groups: dict[str, list[KnapsackItem]] = {}
    for item in items:
        groups.setdefault(item.group, []).append(item)
    return groups


def _check_budget(groups: Mapping[str, list[KnapsackItem]], budget: int) -> None:
    floor = sum(min(i.cost for i in members) for members in groups.values())
    if floor > budget:
        raise InfeasibleError(
            f"cheapest selection costs {floor}, over budget {budget}",
            diagnostics=[(g, min(i.cost for i in members)) for g, members in groups.items()],
        )


def _selection(
    groups: Mapping[str, list[KnapsackItem]],
    chosen: Mapping[str, KnapsackItem],
    lambdas: Mapping[str, Fraction],
) -> Selection:
    picks = tuple((g, chosen[g].id) for g in groups)
    cost = sum(chosen[g].cost for g in groups)
    total = sum((lambdas[chosen[g].id] for g in groups), Fraction(0))
    return Selection(picks, cost, total)


def greedy_pack(
    items: Sequence[KnapsackItem], budget: int, ordering: KnapsackOrdering | None = None
) -> Selection:
    """Scan items by rank, taking one per group while the rest stays affordable.

    An item is accepted only if, together with the cheapest members of the
    still-unfilled groups, it fits the budget; that reservation keeps the
    scan from painting itself into an infeasible corner.
    """
    ordering = ordering or lambda_order(items)
    groups = _groups(items)
    _check_budget(groups, budget)
    min_cost = {g: min(i.cost for i in members) for g, members in groups.items()}
    chosen: dict[str, KnapsackItem] = {}
    spent = 0
    for entry in ordering.by_rank():
        item = entry.item
        if item.group in chosen:
            continue
        reserve = sum(min_cost[g] for g in groups if g not in chosen and g != item.group)
        if spent + item.cost + reserve <= budget:
            chosen[item.group] = item
            spent += item.cost
    lambdas = {e.item.id: e.relative_utility for e in ordering.entries}
    return _selection(groups, chosen, lambdas)


def exact_pack(
    items: Sequence[KnapsackItem], budget: int, ordering: KnapsackOrdering | None = None
) -> Selection:
    """Maximize total relative utility under the budget, one item per group.

    Exhaustive search over the group cross product with a cheapest-remainder
    feasibility bound; utility ties resolve to the lexicographically smallest
    tuple of per-group item indices, which makes the result deterministic.
    """
    ordering = ordering or lambda_order(items)
    groups = _groups(items)
    _check_budget(groups, budget)
    lambdas = {e.item.id: e.relative_utility for e in ordering.entries}
    group_ids = list(groups)
    suffix_floor = [0] * (len(group_ids) + 1)
    for i in range(len(group_ids) - 1, -1, -1):
        suffix_floor[i] = suffix_floor[i + 1] + min(it.cost for it in groups[group_ids[i]])

    best_value: Fraction | None = None
    best_indices: tuple[int, ...] | None = None
    best_chosen: dict[str, KnapsackItem] = {}

    def search(depth: int, spent: int, value: Fraction, indices: tuple[int, ...], chosen: dict):
        nonlocal best_value, best_indices, best_chosen
        if depth == len(group_ids):
            if best_value is None or value > best_value or (value == best_value and indices < best_indices):
                best_value, best_indices, best_chosen = value, indices, dict(chosen)
            return
        group = group_ids[depth]
        for idx, item in enumerate(groups[group]):
            cost = spent + item.cost
            if cost + suffix_floor[depth + 1] > budget:
                continue
            chosen[group] = item
            search(depth + 1, cost, value + lambdas[item.id], indices + (idx,), chosen)
        chosen.pop(group, None)

    search(0, 0, Fraction(0), (), {})
    return _selection(groups, best_chosen, lambdas)


def pareto_pack(items: Sequence[KnapsackItem], budget: int) -> list[Selection]:
    """All budget-feasible selections whose summed profit vectors are nondominated.

    Works over the groups as a dynamic program on (cost, profit vector)
    states; a partial state is dropped only when another costs no more and
    strictly dominates it componentwise, which provably cannot discard any
    selection that would survive the final filter.
    """
    if not items:
        raise ValueError("no items to pack")
    vectors = {item.id: item.profit_vector for item in items}
    lengths = {len(v) for v in vectors.values() if v is not None}
    if None in vectors.values() or len(lengths) != 1:
        raise ValueError("every item needs a profit vector of the same length")
    groups = _groups(items)
    _check_budget(groups, budget)
    group_ids = list(groups)
    suffix_floor = [0] * (len(group_ids) + 1)
    for i in range(len(group_ids) - 1, -1, -1):
        suffix_floor[i] = suffix_floor[i + 1] + min(it.cost for it in groups[group_ids[i]])

    dim = lengths.pop()
    # state: (cost, profit tuple, picks tuple)
    states: list[tuple[int, tuple[int, ...], tuple[tuple[str, str], ...]]] = [(0, (0,) * dim, ())]
    for depth, group in enumerate(group_ids):
        nxt = []
        for cost, profit, picks in states:
            for item in groups[group]:
                total = cost + item.cost
                if total + suffix_floor[depth + 1] > budget:
                    continue
                vec = tuple(p + q for p, q in zip(profit, item.profit_vector))
                nxt.append((total, vec, picks + ((group, item.id),)))
        states = _prune_states(nxt)

    frontier = [
        (profit, picks, cost)
        for cost, profit, picks in states
        if not any(_strictly_dominates(other, profit) for _, other, _ in states)
    ]
    frontier.sort(key=lambda s: s[1])
    return [
        Selection(picks, cost, Fraction(0), total_profit=profit)
        for profit, picks, cost in frontier
    ]


def _strictly_dominates(a: tuple[int, ...], b: tuple[int, ...]) -> bool:
    return all(x >= y for x, y in zip(a, b)) and a != b


def _prune_states(states):
    kept = []
    for s in states:
        cost, profit, _ = s
        if not any(
            c2 <= cost and _strictly_dominates(p2, profit) for c2, p2, _ in states
        ):
            kept.append(s)
    return kept


def items_from_model(
    model: MorphModel,
    utility: Mapping[str, Mapping[str, int]],
    cost_criterion: int = 0,
    profits: Mapping[str, Mapping[str, Sequence[int]]] | None = None,
) -> list[KnapsackItem]:
    """Flatten a model's leaves into knapsack items, one group per leaf.

    Cost is the estimate on ``cost_criterion``; utility priorities come from
    the supplied per-leaf mapping (typically expert input, since the cost
    criterion is excluded from whatever ranking produced them).
    """
    if not 0 <= cost_criterion < len(model.criteria):
        raise ValueError(f"cost criterion index {cost_criterion} out of range")
    out = []
    for leaf in model.leaves():
        for alt in leaf.alternatives:
            vector = None
            if profits is not None:
                vector = tuple(profits[leaf.id][alt.id])
            out.append(
                KnapsackItem(
                    group=leaf.id,
                    id=alt.id,
                    cost=alt.estimates[cost_criterion],
                    utility_priority=utility[leaf.id][alt.id],
                    profit_vector=vector,
                )
            )
    return out
