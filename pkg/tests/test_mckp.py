from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from generators import random_mckp_items
from morphdesign.errors import InfeasibleError
from morphdesign.mckp import (
    KnapsackItem,
    exact_pack,
    greedy_pack,
    items_from_model,
    lambda_order,
    pareto_pack,
)

# every printed ordering row: id, priority, cost, utility (2dp), rank
PUBLISHED_ORDERING = [
    ("M1", 3, 2, "0.00", 13),
    ("M2", 2, 5, "0.20", 11),
    ("M3", 1, 6, "0.33", 7),
    ("E1", 3, 1, "0.00", 14),
    ("E2", 1, 6, "0.33", 8),
    ("E3", 2, 5, "0.20", 12),
    ("E4", 3, 2, "0.00", 15),
    ("W1", 1, 1, "2.00", 1),
    ("W2", 2, 4, "0.25", 10),
    ("W3", 3, 5, "0.00", 16),
    ("W4", 3, 4, "0.00", 17),
    ("W5", 3, 6, "0.00", 18),
    ("D1", 1, 6, "0.33", 9),
    ("D2", 1, 5, "0.40", 6),
    ("D3", 3, 1, "0.00", 19),
    ("O1", 3, 3, "0.00", 20),
    ("O2", 1, 4, "0.50", 5),
    ("O3", 2, 1, "1.00", 2),
    ("O4", 2, 1, "1.00", 3),
    ("O5", 2, 1, "1.00", 4),
]


@pytest.fixture()
def example1_items(example1):
    return items_from_model(
        example1.to_model(),
        example1.knapsack.utility_priorities,
        example1.knapsack.cost_criterion,
    )


def test_items_extract_costs_and_priorities(example1_items):
    by_id = {i.id: i for i in example1_items}
    assert len(example1_items) == 20
    for alt, priority, cost, _lam, _rank in PUBLISHED_ORDERING:
        assert by_id[alt].cost == cost
        assert by_id[alt].utility_priority == priority


def test_lambda_ordering_reproduces_every_published_row(example1_items):
    ordering = lambda_order(example1_items)
    assert ordering.worst_priority == 3
    by_id = {e.item.id: e for e in ordering.entries}
    for alt, _priority, _cost, lam, rank in PUBLISHED_ORDERING:
        entry = by_id[alt]
        assert abs(float(entry.relative_utility) - float(lam)) <= 0.005
        assert entry.rank == rank


def test_lambda_is_exact_rational(example1_items):
    ordering = lambda_order(example1_items)
    by_id = {e.item.id: e for e in ordering.entries}
    assert by_id["M3"].relative_utility == Fraction(1, 3)
    assert by_id["D2"].relative_utility == Fraction(2, 5)


def test_lambda_zero_iff_worst_priority(example1_items):
    ordering = lambda_order(example1_items)
    for entry in ordering.entries:
        assert (entry.relative_utility == 0) == (
            entry.item.utility_priority == ordering.worst_priority
        )


def test_rank_is_a_permutation(example1_items):
    ordering = lambda_order(example1_items)
    assert sorted(e.rank for e in ordering.entries) == list(range(1, 21))


def test_lambda_order_rejects_bad_items():
    with pytest.raises(ValueError):
        lambda_order([KnapsackItem("G", "x", 0, 1)])
    with pytest.raises(ValueError):
        lambda_order([KnapsackItem("G", "x", 2, 0)])
    with pytest.raises(ValueError):
        lambda_order([])


# --- the published budget sweep ----------------------------------------------


@pytest.mark.parametrize(
    "budget,expected",
    [
        (15, "M1 E2 W1 D2 O3"),
        (18, "M2 E2 W1 D2 O3"),
        (19, "M3 E2 W1 D2 O3"),
    ],
)
def test_exact_pack_budget_sweep(example1_items, budget, expected):
    selection = exact_pack(example1_items, budget)
    assert selection.label() == expected
    assert selection.total_cost == budget
    assert selection.total_lambda == oracles.mckp_best_lambda(example1_items, budget)


def test_budget_fifteen_has_a_tie_resolved_lexicographically(example1_items):
    # two optima share 56/15; the smaller per-group index tuple wins
    best = oracles.mckp_best_lambda(example1_items, 15)
    assert best == Fraction(56, 15)
    assert exact_pack(example1_items, 15).label() == "M1 E2 W1 D2 O3"


def test_exact_pack_infeasible_budget(example1_items):
    with pytest.raises(InfeasibleError):
        exact_pack(example1_items, 5)  # cheapest selection costs 6


# --- greedy ---------------------------------------------------------------


def test_greedy_is_feasible_and_one_per_group(example1_items):
    for budget in (15, 18, 19, 30):
        selection = greedy_pack(example1_items, budget)
        assert selection.total_cost <= budget
        assert sorted(g for g, _ in selection.picks) == ["D", "E", "M", "O", "W"]


def test_greedy_with_no_slack_picks_cheapest_per_group():
    items = [
        KnapsackItem("A", "A1", 3, 1),
        KnapsackItem("A", "A2", 1, 2),
        KnapsackItem("B", "B1", 2, 1),
        KnapsackItem("B", "B2", 4, 3),
    ]
    selection = greedy_pack(items, budget=3)
    assert selection.as_dict() == {"A": "A2", "B": "B1"}


def test_greedy_single_group_takes_best_rank_affordable():
    items = [
        KnapsackItem("A", "good", 5, 1),
        KnapsackItem("A", "cheap", 1, 3),
    ]
    assert greedy_pack(items, budget=5).as_dict() == {"A": "good"}
    assert greedy_pack(items, budget=2).as_dict() == {"A": "cheap"}


def test_greedy_infeasible_budget():
    with pytest.raises(InfeasibleError):
        greedy_pack([KnapsackItem("A", "A1", 4, 1)], budget=3)


# --- exact solver vs brute force --------------------------------------------


def test_exact_pack_matches_brute_force_on_random_instances(rng):
    for _ in range(30):
        items, budget = random_mckp_items(rng, max_groups=4, max_items=5)
        selection = exact_pack(items, budget)
        assert selection.total_lambda == oracles.mckp_best_lambda(items, budget)
        assert selection.total_cost <= budget


def test_exact_pack_is_monotone_in_budget(rng):
    for _ in range(15):
        items, budget = random_mckp_items(rng, max_groups=4, max_items=4)
        lo = exact_pack(items, budget)
        hi = exact_pack(items, budget + rng.randint(1, 5))
        assert hi.total_lambda >= lo.total_lambda


# --- vector-profit Pareto packing ---------------------------------------------


def test_pareto_pack_single_group_keeps_nondominated_affordable():
    items = [
        KnapsackItem("A", "A1", 1, 1, profit_vector=(3, 0)),
        KnapsackItem("A", "A2", 1, 1, profit_vector=(0, 3)),
        KnapsackItem("A", "A3", 1, 1, profit_vector=(1, 1)),
        KnapsackItem("A", "A4", 9, 1, profit_vector=(9, 9)),
    ]
    result = pareto_pack(items, budget=1)
    assert {s.as_dict()["A"] for s in result} == {"A1", "A2", "A3"}


def test_pareto_pack_two_group_tradeoff():
    items = [
        KnapsackItem("A", "A1", 1, 1, profit_vector=(4, 0)),
        KnapsackItem("A", "A2", 1, 1, profit_vector=(0, 4)),
        KnapsackItem("B", "B1", 1, 1, profit_vector=(1, 0)),
        KnapsackItem("B", "B2", 1, 1, profit_vector=(0, 1)),
    ]
    result = pareto_pack(items, budget=2)
    vectors = {s.total_profit for s in result}
    assert vectors == oracles.mckp_pareto_vectors(items, 2)
    assert (5, 0) in vectors and (0, 5) in vectors


def test_pareto_pack_scalar_profit_matches_exact_optimum(rng):
    for _ in range(15):
        items, budget = random_mckp_items(rng, max_groups=3, max_items=4, with_profits=1)
        result = pareto_pack(items, budget)
        best = max(sum(v) for v in oracles.mckp_pareto_vectors(items, budget))
        assert {s.total_profit for s in result} == {(best,)}


def test_pareto_pack_matches_brute_force_on_random_instances(rng):
    for _ in range(20):
        items, budget = random_mckp_items(rng, max_groups=3, max_items=4, with_profits=2)
        result = pareto_pack(items, budget)
        assert {s.total_profit for s in result} == oracles.mckp_pareto_vectors(items, budget)
        for s in result:
            assert s.total_cost <= budget


def test_pareto_pack_rejects_mixed_vectors():
    items = [
        KnapsackItem("A", "A1", 1, 1, profit_vector=(1, 2)),
        KnapsackItem("B", "B1", 1, 1, profit_vector=(1,)),
    ]
    with pytest.raises(ValueError):
        pareto_pack(items, budget=9)


# --- ordering properties -------------------------------------------------------


@given(
    st.lists(
        st.tuples(st.integers(1, 9), st.integers(1, 4)),
        min_size=1,
        max_size=12,
    )
)
@settings(max_examples=60)
def test_lambda_order_properties(pairs):
    items = [KnapsackItem("G", f"i{i}", c, r) for i, (c, r) in enumerate(pairs)]
    ordering = lambda_order(items)
    assert sorted(e.rank for e in ordering.entries) == list(range(1, len(items) + 1))
    assert all(e.relative_utility >= 0 for e in ordering.entries)
    ranked = ordering.by_rank()
    for earlier, later in zip(ranked, ranked[1:]):
        assert earlier.relative_utility >= later.relative_utility


@given(
    st.lists(
        st.tuples(st.integers(1, 9), st.integers(1, 4)),
        min_size=2,
        max_size=10,
    ),
    st.randoms(use_true_random=False),
)
@settings(max_examples=60)
def test_reordering_input_only_permutes_lambda_ties(pairs, rnd):
    items = [KnapsackItem("G", f"i{i}", c, r) for i, (c, r) in enumerate(pairs)]
    shuffled = items[:]
    rnd.shuffle(shuffled)
    base = {e.item.id: (e.relative_utility, e.rank) for e in lambda_order(items).entries}
    moved = {e.item.id: (e.relative_utility, e.rank) for e in lambda_order(shuffled).entries}
    for item_id, (lam, rank) in base.items():
        lam2, rank2 = moved[item_id]
        assert lam == lam2
        if rank != rank2:
            # a rank can shift only within a group of equal utilities
            ties = [i for i, (l, _) in base.items() if l == lam]
            tie_ranks = sorted(base[i][1] for i in ties)
            assert rank in tie_ranks and rank2 in tie_ranks
