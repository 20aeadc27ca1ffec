/**
 * Quality-space explorer: decisions of one node drawn in per-w columns,
 * rows ordered by cumulative layer counts (best on top), the ideal point
 * marked, bottleneck pairs shown on hover, and the active what-if overlay
 * diffed in place (entering, leaving, requalified decisions).
 */

import type { WorkbenchState } from "./state.js";
import type { ComposeNode, Decision, WhatIfResponse } from "./types.js";

export function renderExplorer(container: HTMLElement, state: WorkbenchState, nodeId: string): void {
  container.innerHTML = "";
  const solve = state.solves.get(nodeId);
  if (!solve) {
    container.textContent = "run compose to populate the explorer";
    return;
  }
  const top = state.buffer?.scales.compatibility_levels ?? 3;
  const overlay = state.overlay && state.overlay.node === nodeId ? state.overlay : null;
  const decisions = overlay ? withOverlay(solve, overlay) : annotate(solve.decisions, "");
  if (!decisions.length) {
    const message = document.createElement("p");
    message.className = "infeasible";
    message.textContent = "no admissible combination for this node";
    container.appendChild(message);
    return;
  }

  const parts = Math.max(...decisions.map((d) => sum(d.decision.quality.n)));
  const columns = document.createElement("div");
  columns.className = "w-columns";
  for (let w = 1; w <= top; w += 1) {
    const column = document.createElement("div");
    column.className = "w-column";
    column.dataset.w = String(w);
    const heading = document.createElement("h4");
    heading.textContent = `w = ${w}`;
    column.appendChild(heading);
    if (w === top) {
      const ideal = document.createElement("div");
      ideal.className = "ideal-point";
      ideal.textContent = `ideal (${top};${parts},${Array(Math.max((state.buffer?.scales.priority_levels ?? 3) - 1, 0)).fill(0).join(",")})`;
      column.appendChild(ideal);
    }
    const members = decisions
      .filter((d) => d.decision.quality.w === w)
      .sort((a, b) => compareCumulative(b.decision.quality.n, a.decision.quality.n));
    for (const member of members) {
      column.appendChild(decisionCard(member, state, top, parts));
    }
    columns.appendChild(column);
  }
  container.appendChild(columns);

  if (state.selectedDecision) {
    const selected = decisions.find((d) => d.decision.label === state.selectedDecision);
    if (selected) container.appendChild(choiceDetail(selected.decision));
  }
}

interface Annotated {
  decision: Decision;
  mark: "" | "entered" | "left" | "changed";
  before?: string;
}

function annotate(decisions: Decision[], mark: Annotated["mark"]): Annotated[] {
  return decisions.map((decision) => ({ decision, mark }));
}

/** Overlay view: the after-set plus the leavers, each visually tagged. */
function withOverlay(solve: ComposeNode, overlay: WhatIfResponse): Annotated[] {
  const out: Annotated[] = [];
  const enteredLabels = new Set(overlay.entered.map((d) => d.label));
  const changed = new Map(overlay.changed.map((c) => [c.label, c.before.notation]));
  for (const decision of overlay.after) {
    if (enteredLabels.has(decision.label)) {
      out.push({ decision, mark: "entered" });
    } else if (changed.has(decision.label)) {
      out.push({ decision, mark: "changed", before: changed.get(decision.label) });
    } else {
      out.push({ decision, mark: "" });
    }
  }
  for (const decision of overlay.left) {
    out.push({ decision, mark: "left" });
  }
  return out;
}

function decisionCard(member: Annotated, state: WorkbenchState, top: number, parts: number): HTMLElement {
  const { decision, mark } = member;
  const card = document.createElement("div");
  card.className = "decision";
  if (mark) card.classList.add(mark);
  card.dataset.label = decision.label;
  const isIdeal =
    decision.quality.w === top && decision.quality.n[0] === parts;
  if (isIdeal) card.classList.add("at-ideal");
  const title = document.createElement("span");
  title.className = "label";
  title.textContent = decision.label;
  const quality = document.createElement("span");
  quality.className = "notation";
  quality.textContent = mark === "changed" && member.before
    ? `${member.before} → ${decision.quality.notation}`
    : decision.quality.notation;
  card.append(title, quality);
  if (decision.bottlenecks.length) {
    card.title = decision.bottlenecks
      .map((b) => `(${b.alternatives[0]},${b.alternatives[1]})=${b.value}`)
      .join("  ");
    card.classList.add("has-bottleneck");
  }
  card.addEventListener("click", () => state.selectDecision(decision.label));
  return card;
}

function choiceDetail(decision: Decision): HTMLElement {
  const detail = document.createElement("dl");
  detail.className = "choice-detail";
  for (const [part, alt] of Object.entries(decision.choice)) {
    const dt = document.createElement("dt");
    dt.textContent = part;
    const dd = document.createElement("dd");
    dd.textContent = alt;
    detail.append(dt, dd);
  }
  return detail;
}

function compareCumulative(a: number[], b: number[]): number {
  let ca = 0;
  let cb = 0;
  for (let i = 0; i < Math.max(a.length, b.length); i += 1) {
    ca += a[i] ?? 0;
    cb += b[i] ?? 0;
    if (ca !== cb) return ca - cb;
  }
  return 0;
}

function sum(values: number[]): number {
  return values.reduce((acc, v) => acc + v, 0);
}
