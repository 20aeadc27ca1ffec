/**
 * What-if console: pick a bottleneck pair from the composed decisions,
 * try a hypothetical compatibility value, and inspect the delta in the
 * explorer; applying the override is a separate, explicit step that
 * writes it into the edit buffer.
 */

import type { WorkbenchState } from "./state.js";
import type { Bottleneck, CompatibilityOverride } from "./types.js";

export function renderWhatIf(container: HTMLElement, state: WorkbenchState, nodeId: string): void {
  container.innerHTML = "";
  const solve = state.solves.get(nodeId);
  if (!solve) {
    container.textContent = "run compose first; what-if starts from a bottleneck";
    return;
  }
  const pairs = new Map<string, Bottleneck>();
  for (const decision of solve.decisions) {
    for (const bottleneck of decision.bottlenecks) {
      pairs.set(bottleneck.alternatives.join(","), bottleneck);
    }
  }
  if (!pairs.size) {
    container.textContent = "no bottleneck pairs in the current decisions";
    return;
  }

  const pairSelect = document.createElement("select");
  pairSelect.className = "pair";
  for (const [key, bottleneck] of pairs) {
    const option = document.createElement("option");
    option.value = key;
    option.textContent = `(${bottleneck.alternatives[0]},${bottleneck.alternatives[1]}) = ${bottleneck.value}`;
    pairSelect.appendChild(option);
  }

  const top = state.buffer?.scales.compatibility_levels ?? 3;
  const valueSelect = document.createElement("select");
  valueSelect.className = "value";
  for (let v = 0; v <= top; v += 1) {
    const option = document.createElement("option");
    option.value = String(v);
    option.textContent = String(v);
    valueSelect.appendChild(option);
  }
  valueSelect.value = String(top);

  const current = (): CompatibilityOverride => {
    const bottleneck = pairs.get(pairSelect.value)!;
    return {
      parts: bottleneck.parts,
      alternatives: bottleneck.alternatives,
      value: Number(valueSelect.value),
    };
  };

  const run = document.createElement("button");
  run.className = "run";
  run.textContent = "evaluate";
  run.addEventListener("click", () => {
    void state.runWhatIf(current(), nodeId);
  });

  const apply = document.createElement("button");
  apply.className = "apply";
  apply.textContent = "apply to buffer";
  apply.disabled = !state.overlay;
  apply.addEventListener("click", () => {
    state.applyOverlay(current());
  });

  const discard = document.createElement("button");
  discard.className = "discard";
  discard.textContent = "discard";
  discard.disabled = !state.overlay;
  discard.addEventListener("click", () => state.clearOverlay());

  container.append(pairSelect, valueSelect, run, apply, discard);

  if (state.notice) {
    const notice = document.createElement("p");
    notice.className = "notice";
    notice.textContent = state.notice;
    container.appendChild(notice);
  }
  if (state.overlay && !state.overlay.empty) {
    const summary = document.createElement("ul");
    summary.className = "delta";
    for (const change of state.overlay.changed) {
      summary.appendChild(
        item(`${change.label}: ${change.before.notation} → ${change.after.notation}`, "changed"),
      );
    }
    for (const decision of state.overlay.entered) {
      summary.appendChild(item(`${decision.label} enters at ${decision.quality.notation}`, "entered"));
    }
    for (const decision of state.overlay.left) {
      summary.appendChild(item(`${decision.label} leaves`, "left"));
    }
    container.appendChild(summary);
  }
}

function item(text: string, cls: string): HTMLLIElement {
  const li = document.createElement("li");
  li.className = cls;
  li.textContent = text;
  return li;
}
