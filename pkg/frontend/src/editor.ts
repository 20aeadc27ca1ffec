/**
 * Morphology editor: criteria weight row, one estimate table per leaf
 * part, priority column for the active scenario, and compatibility
 * matrix grids grouped by the composition node that uses them.
 */

import type { WorkbenchState } from "./state.js";
import type { CompatibilityBlock, ProblemDocument, TreeNode, ValidationIssue } from "./types.js";

export function renderEditor(container: HTMLElement, state: WorkbenchState): void {
  container.innerHTML = "";
  const doc = state.buffer;
  if (!doc) {
    container.textContent = "no problem loaded";
    return;
  }
  container.appendChild(weightsRow(doc, state));
  const leaves = collectLeaves(doc.tree);
  for (const leaf of leaves) {
    container.appendChild(leafPanel(doc, leaf, state));
  }
  for (const [owner, blocks] of groupBlocks(doc, leaves)) {
    container.appendChild(matrixGroup(owner, blocks, doc, state));
  }
  const issueList = document.createElement("ul");
  issueList.className = "issues";
  for (const issue of state.issues) {
    const item = document.createElement("li");
    item.dataset.path = issue.path;
    item.textContent = issue.message;
    issueList.appendChild(item);
  }
  container.appendChild(issueList);
}

function collectLeaves(tree: TreeNode): TreeNode[] {
  if (tree.alternatives) return [tree];
  return (tree.children ?? []).flatMap(collectLeaves);
}

function weightsRow(doc: ProblemDocument, state: WorkbenchState): HTMLElement {
  const section = document.createElement("section");
  section.className = "weights-row";
  const heading = document.createElement("h3");
  heading.textContent = "criteria weights";
  section.appendChild(heading);
  const row = document.createElement("div");
  doc.criteria.forEach((criterion, index) => {
    const label = document.createElement("label");
    label.textContent = criterion.name;
    const input = document.createElement("input");
    input.type = "number";
    input.value = String(criterion.weight);
    input.dataset.criterion = String(index);
    input.addEventListener("change", () => {
      const weights = doc.criteria.map((c, i) =>
        i === index ? Number(input.value) : c.weight,
      );
      state.editWeights(weights);
    });
    label.appendChild(input);
    row.appendChild(label);
  });
  section.appendChild(row);
  return section;
}

function leafPanel(doc: ProblemDocument, leaf: TreeNode, state: WorkbenchState): HTMLElement {
  const scenario = state.activeScenario ? doc.scenarios?.[state.activeScenario] : undefined;
  const priorities = scenario?.priorities?.[leaf.id];
  const section = document.createElement("section");
  section.className = "leaf-panel";
  section.dataset.leaf = leaf.id;
  const heading = document.createElement("h3");
  heading.textContent = leaf.id;
  section.appendChild(heading);

  const table = document.createElement("table");
  const head = table.createTHead().insertRow();
  head.appendChild(cell("th", "DA"));
  doc.criteria.forEach((_c, i) => head.appendChild(cell("th", String(i + 1))));
  if (priorities) head.appendChild(cell("th", "priority"));
  const body = table.createTBody();
  for (const alt of leaf.alternatives ?? []) {
    const row = body.insertRow();
    row.appendChild(cell("td", alt.id));
    alt.estimates.forEach((value, index) => {
      const td = row.insertCell();
      const input = document.createElement("input");
      input.type = "number";
      input.value = String(value);
      input.dataset.path = `/tree/${leaf.id}/${alt.id}/${index}`;
      if (state.issues.some((issue) => issue.path === input.dataset.path)) {
        input.classList.add("invalid");
      }
      input.addEventListener("change", () => {
        state.editEstimate(leaf.id, alt.id, index, Number(input.value));
      });
      td.appendChild(input);
    });
    if (priorities) {
      const td = row.insertCell();
      const input = document.createElement("input");
      input.type = "number";
      input.min = "1";
      input.max = String(doc.scales.priority_levels);
      input.value = String(priorities[alt.id] ?? "");
      input.addEventListener("change", () => {
        state.editPriority(leaf.id, alt.id, Number(input.value));
      });
      td.appendChild(input);
    }
  }
  section.appendChild(table);
  const inline = state.issues.filter((issue) => issue.path.startsWith(`/tree/${leaf.id}/`));
  if (inline.length) {
    section.appendChild(issueList(inline));
  }
  return section;
}

/** Matrices grouped by the nearest node whose children they span. */
function groupBlocks(
  doc: ProblemDocument,
  leaves: TreeNode[],
): Map<string, CompatibilityBlock[]> {
  const owner = new Map<string, string>();
  const assign = (node: TreeNode): string[] => {
    if (node.alternatives) return [node.id];
    const below = (node.children ?? []).flatMap(assign);
    for (const a of below) {
      for (const b of below) {
        const key = `${a}|${b}`;
        if (a !== b && !owner.has(key)) owner.set(key, node.id);
      }
    }
    return below;
  };
  assign(doc.tree);
  const groups = new Map<string, CompatibilityBlock[]>();
  for (const block of doc.compatibility ?? []) {
    const node = owner.get(`${block.parts[0]}|${block.parts[1]}`) ?? doc.tree.id;
    if (!groups.has(node)) groups.set(node, []);
    groups.get(node)!.push(block);
  }
  void leaves;
  return groups;
}

function matrixGroup(
  owner: string,
  blocks: CompatibilityBlock[],
  doc: ProblemDocument,
  state: WorkbenchState,
): HTMLElement {
  const section = document.createElement("section");
  section.className = "matrix-group";
  section.dataset.node = owner;
  const heading = document.createElement("h3");
  heading.textContent = `compatibility under ${owner}`;
  section.appendChild(heading);
  for (const block of blocks) {
    const table = document.createElement("table");
    table.className = "matrix";
    table.dataset.parts = block.parts.join(",");
    const altsA = Object.keys(block.values);
    const altsB = Object.keys(block.values[altsA[0]] ?? {});
    const head = table.createTHead().insertRow();
    head.appendChild(cell("th", `${block.parts[0]}\\${block.parts[1]}`));
    for (const b of altsB) head.appendChild(cell("th", b));
    const body = table.createTBody();
    for (const a of altsA) {
      const row = body.insertRow();
      row.appendChild(cell("td", a));
      for (const b of altsB) {
        const td = row.insertCell();
        const input = document.createElement("input");
        input.type = "number";
        input.min = "0";
        input.max = String(doc.scales.compatibility_levels);
        input.value = String(block.values[a][b]);
        input.dataset.pair = `${a},${b}`;
        input.addEventListener("change", () => {
          state.editCompatibility(block.parts, [a, b], Number(input.value));
        });
        td.appendChild(input);
      }
    }
    section.appendChild(table);
  }
  return section;
}

function cell(tag: "td" | "th", text: string): HTMLTableCellElement {
  const el = document.createElement(tag) as HTMLTableCellElement;
  el.textContent = text;
  return el;
}

function issueList(issues: ValidationIssue[]): HTMLElement {
  const list = document.createElement("ul");
  list.className = "issues inline";
  for (const issue of issues) {
    const item = document.createElement("li");
    item.dataset.path = issue.path;
    item.textContent = issue.message;
    list.appendChild(item);
  }
  return list;
}
