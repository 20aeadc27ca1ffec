/**
 * Client-side document validation: the served JSON schema (via ajv) for
 * structure, plus the same semantic checks the server's model validator
 * applies, so the buffer can refuse a PUT that would bounce anyway.
 */

import { Ajv2020 } from "ajv/dist/2020.js";
import type { ProblemDocument, TreeNode, ValidationIssue } from "./types.js";

const ajv = new Ajv2020({ allErrors: true, strict: false });

export function validateDocument(
  doc: ProblemDocument,
  schema?: Record<string, unknown> | null,
): ValidationIssue[] {
  const issues: ValidationIssue[] = [];
  if (schema) {
    const check = ajv.compile(schema);
    if (!check(doc)) {
      for (const err of check.errors ?? []) {
        issues.push({ path: err.instancePath || "/", message: err.message ?? "invalid" });
      }
    }
  }
  semanticIssues(doc, issues);
  return issues;
}

function semanticIssues(doc: ProblemDocument, issues: ValidationIssue[]): void {
  const [lo, hi] = doc.scales.estimate_range;
  const top = doc.scales.compatibility_levels;
  const k = doc.scales.priority_levels;

  doc.criteria.forEach((criterion, index) => {
    if (criterion.weight === 0) {
      issues.push({
        path: `/criteria/${index}`,
        message: `criterion ${criterion.name} has zero weight`,
      });
    }
  });

  const leafAlternatives = new Map<string, string[]>();
  const walk = (node: TreeNode) => {
    for (const child of node.children ?? []) walk(child);
    if (!node.alternatives) return;
    leafAlternatives.set(
      node.id,
      node.alternatives.map((a) => a.id),
    );
    for (const alt of node.alternatives) {
      if (alt.estimates.length !== doc.criteria.length) {
        issues.push({
          path: `/tree/${node.id}/${alt.id}`,
          message: `alternative ${node.id}/${alt.id} has ${alt.estimates.length} estimates for ${doc.criteria.length} criteria`,
        });
        continue;
      }
      alt.estimates.forEach((value, index) => {
        if (value < lo || value > hi || !Number.isInteger(value)) {
          issues.push({
            path: `/tree/${node.id}/${alt.id}/${index}`,
            message: `estimate ${value} of ${node.id}/${alt.id} on criterion ${index + 1} is outside [${lo}..${hi}]`,
          });
        }
      });
    }
  };
  walk(doc.tree);

  for (const block of doc.compatibility ?? []) {
    const [pa, pb] = block.parts;
    const path = `/compatibility/${pa},${pb}`;
    const altsA = leafAlternatives.get(pa);
    const altsB = leafAlternatives.get(pb);
    if (!altsA || !altsB) {
      issues.push({ path, message: `matrix (${pa},${pb}) references an unknown leaf` });
      continue;
    }
    for (const a of altsA) {
      for (const b of altsB) {
        const value = block.values[a]?.[b];
        if (value === undefined) {
          issues.push({ path, message: `matrix (${pa},${pb}) is missing entry (${a},${b})` });
        } else if (value < 0 || value > top || !Number.isInteger(value)) {
          issues.push({ path, message: `compatibility (${a},${b}) = ${value} is outside [0..${top}]` });
        }
      }
    }
  }

  for (const [name, scenario] of Object.entries(doc.scenarios ?? {})) {
    if (scenario.weights && scenario.weights.length !== doc.criteria.length) {
      issues.push({
        path: `/scenarios/${name}`,
        message: `scenario ${name} has ${scenario.weights.length} weights for ${doc.criteria.length} criteria`,
      });
    }
    for (const [leaf, assignment] of Object.entries(scenario.priorities ?? {})) {
      const alts = leafAlternatives.get(leaf);
      if (!alts) {
        issues.push({ path: `/scenarios/${name}/${leaf}`, message: `priorities reference unknown part ${leaf}` });
        continue;
      }
      const missing = alts.filter((a) => !(a in assignment));
      if (missing.length) {
        issues.push({
          path: `/scenarios/${name}/${leaf}`,
          message: `priorities for ${leaf} missing alternatives ${missing.join(", ")}`,
        });
      }
      for (const [alt, layer] of Object.entries(assignment)) {
        if (layer < 1 || layer > k || !Number.isInteger(layer)) {
          issues.push({
            path: `/scenarios/${name}/${leaf}/${alt}`,
            message: `priority ${layer} of ${leaf}/${alt} outside [1..${k}]`,
          });
        }
      }
    }
  }
}
