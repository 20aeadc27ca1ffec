/**
 * Payload types mirroring the service's JSON contract.
 *
 * The workbench renders these verbatim; it never recomputes quality
 * vectors, orderings, or deltas on the client.
 */

// ── problem documents ─────────────────────────────────────────────

export interface Criterion {
  name: string;
  weight: number;
}

export interface Alternative {
  id: string;
  estimates: number[];
}

export interface TreeNode {
  id: string;
  children?: TreeNode[];
  alternatives?: Alternative[];
}

export interface CompatibilityBlock {
  parts: [string, string];
  values: Record<string, Record<string, number>>;
}

export interface Scenario {
  weights?: number[];
  priorities?: Record<string, Record<string, number>>;
}

export interface StageRef {
  label: string;
  scenario: string;
}

export interface KnapsackSection {
  cost_criterion: number;
  utility_priorities: Record<string, Record<string, number>>;
}

export interface ProblemDocument {
  format_version: string;
  name: string;
  description?: string;
  scales: {
    priority_levels: number;
    compatibility_levels: number;
    estimate_range: [number, number];
  };
  criteria: Criterion[];
  tree: TreeNode;
  compatibility?: CompatibilityBlock[];
  scenarios?: Record<string, Scenario>;
  stages?: StageRef[];
  knapsack?: KnapsackSection;
}

export interface StoredProblem {
  id: string;
  revision: number;
  document: ProblemDocument;
}

export interface ProblemListEntry {
  id: string;
  name: string;
  revision: number;
}

// ── solve payloads ──────────────────────────────────────────────────

export interface Quality {
  w: number;
  n: number[];
  notation: string;
}

export interface Bottleneck {
  parts: [string, string];
  alternatives: [string, string];
  value: number;
}

export interface Decision {
  choice: Record<string, string>;
  label: string;
  quality: Quality;
  bottlenecks: Bottleneck[];
}

export interface ComposeNode {
  id: string;
  decisions: Decision[];
}

export interface ComposeResponse {
  revision: number;
  scenario: string;
  nodes: ComposeNode[];
}

export interface WhatIfChange {
  choice: Record<string, string>;
  label: string;
  before: Quality;
  after: Quality;
}

export interface WhatIfResponse {
  revision: number;
  scenario: string;
  node: string;
  before: Decision[];
  after: Decision[];
  entered: Decision[];
  left: Decision[];
  changed: WhatIfChange[];
  empty: boolean;
}

export interface CompatibilityOverride {
  parts: [string, string];
  alternatives: [string, string];
  value: number;
}

export interface OrderingRow {
  group: string;
  id: string;
  cost: number;
  utility_priority: number;
  relative_utility: number;
  relative_utility_exact: string;
  rank: number;
}

export interface SelectionPayload {
  picks: Record<string, string>;
  label: string;
  total_cost: number;
  total_relative_utility: number;
  total_relative_utility_exact: string;
}

export interface KnapsackResponse {
  revision: number;
  budget: number;
  ordering: OrderingRow[];
  selection: SelectionPayload;
  greedy: SelectionPayload;
}

export interface TrajectoryResponse {
  revision: number;
  stages: (ComposeNode & { label: string; scenario: string })[];
  thresholds: number[];
  trajectories: {
    picks: { stage: string; choice: Record<string, string>; label: string }[];
    quality: Quality;
  }[];
}

export interface ValidationIssue {
  path: string;
  message: string;
}
