/**
 * Knapsack panel: a budget slider over the feasible range, the
 * relative-utility ordering table, and the exact selection for the
 * current budget (with the greedy pick alongside for comparison).
 */

import type { WorkbenchState } from "./state.js";

export function renderKnapsack(container: HTMLElement, state: WorkbenchState): void {
  container.innerHTML = "";
  const doc = state.buffer;
  if (!doc?.knapsack) {
    container.textContent = "this problem has no knapsack section";
    return;
  }
  const { floor, ceiling } = budgetRange(doc);
  const slider = document.createElement("input");
  slider.type = "range";
  slider.className = "budget";
  slider.min = String(floor);
  slider.max = String(ceiling);
  slider.value = String(state.knapsackResult?.budget ?? floor);
  const readout = document.createElement("span");
  readout.className = "budget-readout";
  readout.textContent = `budget ${slider.value}`;
  slider.addEventListener("change", () => {
    readout.textContent = `budget ${slider.value}`;
    void state.runKnapsack(Number(slider.value));
  });
  container.append(slider, readout);

  const result = state.knapsackResult;
  if (!result) return;

  const selection = document.createElement("p");
  selection.className = "selection";
  selection.textContent = `${result.selection.label} (cost ${result.selection.total_cost}, utility ${result.selection.total_relative_utility.toFixed(2)})`;
  container.appendChild(selection);

  const greedy = document.createElement("p");
  greedy.className = "greedy";
  greedy.textContent = `greedy: ${result.greedy.label} (cost ${result.greedy.total_cost})`;
  container.appendChild(greedy);

  const table = document.createElement("table");
  table.className = "ordering";
  const head = table.createTHead().insertRow();
  for (const text of ["DA", "cost", "priority", "utility", "rank"]) {
    const th = document.createElement("th");
    th.textContent = text;
    head.appendChild(th);
  }
  const body = table.createTBody();
  const picked = new Set(Object.values(result.selection.picks));
  for (const row of result.ordering) {
    const tr = body.insertRow();
    tr.dataset.id = row.id;
    if (picked.has(row.id)) tr.classList.add("picked");
    for (const text of [
      row.id,
      String(row.cost),
      String(row.utility_priority),
      row.relative_utility.toFixed(2),
      String(row.rank),
    ]) {
      const td = tr.insertCell();
      td.textContent = text;
    }
  }
  container.appendChild(table);
}

function budgetRange(doc: { knapsack?: { cost_criterion: number } | null; tree: unknown }): {
  floor: number;
  ceiling: number;
} {
  const costIndex = doc.knapsack?.cost_criterion ?? 0;
  let floor = 0;
  let ceiling = 0;
  const walk = (node: any): void => {
    for (const child of node.children ?? []) walk(child);
    if (node.alternatives?.length) {
      const costs = node.alternatives.map((a: any) => a.estimates[costIndex]);
      floor += Math.min(...costs);
      ceiling += Math.max(...costs);
    }
  };
  walk(doc.tree);
  return { floor, ceiling };
}
