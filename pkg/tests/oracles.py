"""Independent brute-force oracles the tests check the real code against.

Everything here is written straight from the definitions with plain loops:
full enumeration, no pruning, no sharing of code paths with the package.
"""

from __future__ import annotations

import itertools
from fractions import Fraction


def cumulative(n):
    out, total = [], 0
    for c in n:
        total += c
        out.append(total)
    return tuple(out)


def quality_at_least(wa, na, wb, nb):
    """(wa, na) is at least as good as (wb, nb) in the lattice order."""
    return wa >= wb and all(x >= y for x, y in zip(cumulative(na), cumulative(nb)))


def strictly_better(wa, na, wb, nb):
    return quality_at_least(wa, na, wb, nb) and (wa, tuple(na)) != (wb, tuple(nb))


def enumerate_combinations(parts, alternatives, priorities, pair_value, k, top):
    """Every feasible one-per-part combination with its (w, n) quality.

    ``pair_value(part_a, alt_a, part_b, alt_b)`` returns the compatibility;
    combinations containing a zero pair are skipped.
    """
    out = []
    for combo in itertools.product(*(alternatives[p] for p in parts)):
        w = top
        feasible = True
        for i in range(len(parts)):
            for j in range(i + 1, len(parts)):
                v = pair_value(parts[i], combo[i], parts[j], combo[j])
                if v == 0:
                    feasible = False
                    break
                w = min(w, v)
            if not feasible:
                break
        if not feasible:
            continue
        n = [0] * k
        for part, alt in zip(parts, combo):
            n[priorities[part][alt] - 1] += 1
        out.append((tuple(zip(parts, combo)), w, tuple(n)))
    return out


def pareto_front(combos):
    """Filter (choice, w, n) triples down to the nondominated ones."""
    return [
        (choice, w, n)
        for choice, w, n in combos
        if not any(
            strictly_better(w2, n2, w, n) for _, w2, n2 in combos if (w2, n2) != (w, n)
        )
    ]


def mckp_selections(items, budget):
    """All budget-feasible one-per-group selections of KnapsackItem-likes."""
    groups: dict[str, list] = {}
    for item in items:
        groups.setdefault(item.group, []).append(item)
    out = []
    for combo in itertools.product(*groups.values()):
        cost = sum(i.cost for i in combo)
        if cost <= budget:
            out.append(combo)
    return out


def mckp_best_lambda(items, budget):
    """Maximum achievable total relative utility, straight from the formula."""
    worst = max(i.utility_priority for i in items)
    best = None
    for combo in mckp_selections(items, budget):
        value = sum(Fraction(worst - i.utility_priority, i.cost) for i in combo)
        if best is None or value > best:
            best = value
    return best


def mckp_pareto_vectors(items, budget):
    """Nondominated summed profit vectors over all feasible selections."""
    sums = []
    for combo in mckp_selections(items, budget):
        total = tuple(sum(col) for col in zip(*(i.profit_vector for i in combo)))
        sums.append(total)
    front = set()
    for v in sums:
        if not any(all(x >= y for x, y in zip(o, v)) and o != v for o in sums):
            front.add(v)
    return front


def trajectory_enumeration(stage_decisions, stage_layers, change_compat, k, top):
    """All feasible trajectories with qualities, one stage decision per stage.

    ``stage_decisions``: list (per stage) of choice dicts;
    ``stage_layers``: matching layers; ``change_compat(count)``: the mapping.
    """
    out = []
    for picks in itertools.product(*(range(len(s)) for s in stage_decisions)):
        w = top
        ok = True
        for s in range(len(picks) - 1):
            a = stage_decisions[s][picks[s]]
            b = stage_decisions[s + 1][picks[s + 1]]
            changes = sum(1 for part in a if a[part] != b[part])
            v = change_compat(changes)
            if v == 0:
                ok = False
                break
            w = min(w, v)
        if not ok:
            continue
        n = [0] * k
        for s, idx in enumerate(picks):
            n[stage_layers[s][idx] - 1] += 1
        out.append((picks, w, tuple(n)))
    return out
