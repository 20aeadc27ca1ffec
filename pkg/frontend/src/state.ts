/**
 * Workbench state: the active problem and revision, the dirty edit
 * buffer, the last solve results per node, and the what-if overlay.
 *
 * Rules the panels rely on:
 *  - the buffer is validated client-side before every PUT;
 *  - a what-if overlay is display-only until the user applies it;
 *  - switching problems discards the overlay and solve results;
 *  - solve payloads are stored verbatim, never recomputed locally.
 */

import type { ApiClient } from "./api.js";
import { ApiError } from "./api.js";
import type {
  CompatibilityOverride,
  ComposeNode,
  KnapsackResponse,
  ProblemDocument,
  ValidationIssue,
  WhatIfResponse,
} from "./types.js";
import { validateDocument } from "./validate.js";

export type Listener = () => void;

export class WorkbenchState {
  problemId: string | null = null;
  revision = 0;
  buffer: ProblemDocument | null = null;
  dirty = false;
  conflict = false;
  activeScenario: string | null = null;
  issues: ValidationIssue[] = [];
  solves = new Map<string, ComposeNode>();
  composeScenario: string | null = null;
  overlay: WhatIfResponse | null = null;
  knapsackResult: KnapsackResponse | null = null;
  selectedDecision: string | null = null;
  notice = "";

  private schema: Record<string, unknown> | null = null;
  private listeners: Listener[] = [];

  constructor(private api: ApiClient) {}

  subscribe(listener: Listener): () => void {
    this.listeners.push(listener);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }

  private emit(): void {
    for (const listener of this.listeners) listener();
  }

  async ensureSchema(): Promise<void> {
    if (!this.schema) {
      this.schema = await this.api.schema().catch(() => null);
    }
  }

  async loadProblem(id: string): Promise<void> {
    await this.ensureSchema();
    const stored = await this.api.getProblem(id);
    this.problemId = stored.id;
    this.revision = stored.revision;
    this.buffer = structuredClone(stored.document);
    this.dirty = false;
    this.conflict = false;
    this.activeScenario = Object.keys(stored.document.scenarios ?? {})[0] ?? null;
    // a problem switch invalidates everything derived from the old one
    this.solves.clear();
    this.composeScenario = null;
    this.overlay = null;
    this.knapsackResult = null;
    this.selectedDecision = null;
    this.notice = "";
    this.revalidate();
    this.emit();
  }

  revalidate(): void {
    this.issues = this.buffer ? validateDocument(this.buffer, this.schema) : [];
  }

  private edited(): void {
    this.dirty = true;
    this.revalidate();
    this.emit();
  }

  editEstimate(leaf: string, alt: string, criterion: number, value: number): void {
    const node = this.findLeaf(leaf);
    const alternative = node?.alternatives?.find((a) => a.id === alt);
    if (!alternative) throw new Error(`unknown alternative ${leaf}/${alt}`);
    alternative.estimates[criterion] = value;
    this.edited();
  }

  /** Changing the weight row re-targets the scenario that row belongs to. */
  editWeights(weights: number[]): void {
    if (!this.buffer) return;
    this.buffer.criteria.forEach((criterion, i) => {
      criterion.weight = weights[i] ?? criterion.weight;
    });
    for (const [name, scenario] of Object.entries(this.buffer.scenarios ?? {})) {
      if (scenario.weights && sameRow(scenario.weights, weights)) {
        this.activeScenario = name;
        break;
      }
    }
    this.edited();
  }

  editCompatibility(parts: [string, string], alternatives: [string, string], value: number): void {
    const block = this.findBlock(parts);
    if (!block) throw new Error(`no compatibility matrix for (${parts[0]},${parts[1]})`);
    const [a, b] = block.parts[0] === parts[0] ? alternatives : [alternatives[1], alternatives[0]];
    if (block.values[a]?.[b] === undefined) {
      throw new Error(`no compatibility entry for (${alternatives[0]},${alternatives[1]})`);
    }
    block.values[a][b] = value;
    this.edited();
  }

  editPriority(leaf: string, alt: string, layer: number): void {
    if (!this.buffer || !this.activeScenario) return;
    const scenario = this.buffer.scenarios?.[this.activeScenario];
    if (!scenario?.priorities?.[leaf]) throw new Error(`no priorities for ${leaf}`);
    scenario.priorities[leaf][alt] = layer;
    this.edited();
  }

  /** PUT the buffer; refuses while invalid, flags a conflict on 409. */
  async save(): Promise<boolean> {
    if (!this.problemId || !this.buffer) return false;
    this.revalidate();
    if (this.issues.length) {
      this.notice = "not saved: fix validation issues first";
      this.emit();
      return false;
    }
    try {
      const result = await this.api.putProblem(this.problemId, this.revision, this.buffer);
      this.revision = result.revision;
      this.dirty = false;
      this.notice = `saved revision ${result.revision}`;
      this.emit();
      return true;
    } catch (error) {
      if (error instanceof ApiError && error.status === 409) {
        this.conflict = true;
        this.notice = "edit conflict: the problem changed on the server, reload to continue";
        this.emit();
        return false;
      }
      throw error;
    }
  }

  async compose(node?: string | null): Promise<void> {
    if (!this.problemId) return;
    const response = await this.api.compose(this.problemId, this.activeScenario, node);
    this.composeScenario = response.scenario;
    for (const composed of response.nodes) {
      this.solves.set(composed.id, composed);
    }
    this.emit();
  }

  async runWhatIf(override: CompatibilityOverride, node?: string | null): Promise<void> {
    if (!this.problemId) return;
    this.overlay = await this.api.whatif(this.problemId, this.activeScenario, [override], {}, node);
    this.notice = this.overlay.empty ? "no change" : "";
    this.emit();
  }

  clearOverlay(): void {
    this.overlay = null;
    this.notice = "";
    this.emit();
  }

  /** The explicit user action that moves an overlay into the buffer. */
  applyOverlay(override: CompatibilityOverride): void {
    this.editCompatibility(override.parts, override.alternatives, override.value);
    this.overlay = null;
  }

  async runKnapsack(budget: number): Promise<void> {
    if (!this.problemId) return;
    this.knapsackResult = await this.api.knapsack(this.problemId, budget);
    this.emit();
  }

  selectDecision(label: string | null): void {
    this.selectedDecision = label;
    this.emit();
  }

  setScenario(name: string): void {
    this.activeScenario = name;
    this.emit();
  }

  private findLeaf(id: string) {
    const stack = [this.buffer?.tree];
    while (stack.length) {
      const node = stack.pop();
      if (!node) continue;
      if (node.id === id) return node;
      stack.push(...(node.children ?? []));
    }
    return undefined;
  }

  private findBlock(parts: [string, string]) {
    return (this.buffer?.compatibility ?? []).find(
      (block) =>
        (block.parts[0] === parts[0] && block.parts[1] === parts[1]) ||
        (block.parts[0] === parts[1] && block.parts[1] === parts[0]),
    );
  }
}

function sameRow(a: number[], b: number[]): boolean {
  return a.length === b.length && a.every((value, i) => value === b[i]);
}
