/** Workbench entry point: problem/scenario pickers, panels, actions. */

import { ApiClient } from "./api.js";
import { renderEditor } from "./editor.js";
import { renderExplorer } from "./explorer.js";
import { renderKnapsack } from "./knapsack.js";
import { WorkbenchState } from "./state.js";
import { renderWhatIf } from "./whatif.js";

const api = new ApiClient("");
const state = new WorkbenchState(api);

const problemSelect = document.getElementById("problem") as HTMLSelectElement;
const scenarioSelect = document.getElementById("scenario") as HTMLSelectElement;
const nodeSelect = document.getElementById("node") as HTMLSelectElement;
const statusLine = document.getElementById("status") as HTMLElement;
const editorPane = document.getElementById("editor") as HTMLElement;
const explorerPane = document.getElementById("explorer") as HTMLElement;
const whatifPane = document.getElementById("whatif") as HTMLElement;
const knapsackPane = document.getElementById("knapsack") as HTMLElement;

function internalNodes(): string[] {
  const out: string[] = [];
  const walk = (node: any): void => {
    if (!node?.alternatives) {
      out.push(node.id);
      for (const child of node.children ?? []) walk(child);
    }
  };
  if (state.buffer) walk(state.buffer.tree);
  return out;
}

function render(): void {
  const scenarios = Object.keys(state.buffer?.scenarios ?? {});
  scenarioSelect.innerHTML = "";
  for (const name of scenarios) {
    const option = document.createElement("option");
    option.value = name;
    option.textContent = name;
    option.selected = name === state.activeScenario;
    scenarioSelect.appendChild(option);
  }
  const nodes = internalNodes();
  const chosen = nodeSelect.value || nodes[nodes.length - 1] || "";
  nodeSelect.innerHTML = "";
  for (const id of nodes) {
    const option = document.createElement("option");
    option.value = id;
    option.textContent = id;
    option.selected = id === chosen;
    nodeSelect.appendChild(option);
  }
  const focus = nodeSelect.value || chosen;
  statusLine.textContent = [
    state.problemId ? `${state.problemId} @ r${state.revision}` : "no problem",
    state.dirty ? "unsaved edits" : "",
    state.conflict ? "CONFLICT - reload" : "",
    state.issues.length ? `${state.issues.length} validation issue(s)` : "",
    state.notice,
  ]
    .filter(Boolean)
    .join(" | ");
  renderEditor(editorPane, state);
  if (focus) {
    renderExplorer(explorerPane, state, focus);
    renderWhatIf(whatifPane, state, focus);
  }
  renderKnapsack(knapsackPane, state);
}

state.subscribe(render);

document.getElementById("compose")!.addEventListener("click", () => void state.compose());
document.getElementById("save")!.addEventListener("click", () => void state.save());
document.getElementById("reload")!.addEventListener("click", () => {
  if (problemSelect.value) void state.loadProblem(problemSelect.value);
});
problemSelect.addEventListener("change", () => void state.loadProblem(problemSelect.value));
scenarioSelect.addEventListener("change", () => state.setScenario(scenarioSelect.value));
nodeSelect.addEventListener("change", render);

async function boot(): Promise<void> {
  const listing = await api.listProblems();
  problemSelect.innerHTML = "";
  for (const problem of listing.problems) {
    const option = document.createElement("option");
    option.value = problem.id;
    option.textContent = `${problem.id} - ${problem.name}`;
    problemSelect.appendChild(option);
  }
  if (listing.problems.length) {
    await state.loadProblem(listing.problems[0].id);
  }
}

void boot();
