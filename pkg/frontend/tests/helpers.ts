/**
 * A fixture-backed stand-in for the service: responses captured from the
 * real API drive the tests, and problem storage mimics the revision
 * semantics (stale PUT conflicts, revision bumps) in memory.
 */

import { ApiClient } from "../src/api.js";
import type { ProblemDocument } from "../src/types.js";

import composeProvider from "./fixtures/compose_provider.json" with { type: "json" };
import example1 from "./fixtures/example1.json" with { type: "json" };
import example2 from "./fixtures/example2.json" with { type: "json" };
import knapsack15 from "./fixtures/knapsack_15.json" with { type: "json" };
import knapsack16 from "./fixtures/knapsack_16.json" with { type: "json" };
import knapsack17 from "./fixtures/knapsack_17.json" with { type: "json" };
import knapsack18 from "./fixtures/knapsack_18.json" with { type: "json" };
import knapsack19 from "./fixtures/knapsack_19.json" with { type: "json" };
import problems from "./fixtures/problems.json" with { type: "json" };
import schema from "./fixtures/schema.json" with { type: "json" };
import whatifPromoted from "./fixtures/whatif_d2o5_3.json" with { type: "json" };
import whatifNoop from "./fixtures/whatif_noop.json" with { type: "json" };

const KNAPSACK: Record<number, unknown> = {
  15: knapsack15,
  16: knapsack16,
  17: knapsack17,
  18: knapsack18,
  19: knapsack19,
};

export interface FakeServer {
  api: ApiClient;
  store: Map<string, { revision: number; document: ProblemDocument }>;
  putBodies: { revision: number; document: ProblemDocument }[];
}

export function fakeServer(): FakeServer {
  const store = new Map<string, { revision: number; document: ProblemDocument }>([
    ["example1", structuredClone({ revision: example1.revision, document: example1.document })],
    ["example2", structuredClone({ revision: example2.revision, document: example2.document })],
  ] as any);
  const putBodies: FakeServer["putBodies"] = [];

  const json = (body: unknown, status = 200) =>
    new Response(JSON.stringify(body), {
      status,
      headers: { "content-type": "application/json" },
    });

  const fetchImpl: typeof fetch = async (input, init) => {
    const url = String(input);
    const method = init?.method ?? "GET";
    const body = init?.body ? JSON.parse(String(init.body)) : null;

    if (url === "/api/schema") return json(schema);
    if (url === "/api/problems" && method === "GET") return json(problems);

    const idMatch = url.match(/^\/api\/problems\/([^/]+)$/);
    if (idMatch) {
      const stored = store.get(idMatch[1]);
      if (!stored) return json({ detail: idMatch[1] }, 404);
      if (method === "GET") {
        return json({ id: idMatch[1], ...structuredClone(stored) });
      }
      if (method === "PUT") {
        if (body.revision !== stored.revision) {
          return json({ detail: "stale revision", revision: stored.revision }, 409);
        }
        putBodies.push(structuredClone(body));
        const next = { revision: stored.revision + 1, document: structuredClone(body.document) };
        store.set(idMatch[1], next);
        return json({ id: idMatch[1], revision: next.revision });
      }
    }

    const solveMatch = url.match(/^\/api\/problems\/([^/]+)\/(\w+)$/);
    if (solveMatch && method === "POST") {
      const [, , action] = solveMatch;
      if (action === "compose") return json(composeProvider);
      if (action === "knapsack") {
        const payload = KNAPSACK[body.budget];
        return payload ? json(payload) : json({ detail: "unexpected budget in test" }, 500);
      }
      if (action === "whatif") {
        const value = body.compatibility?.[0]?.value;
        return json(value === 1 ? whatifNoop : whatifPromoted);
      }
    }
    return json({ detail: `unhandled ${method} ${url}` }, 500);
  };

  return { api: new ApiClient("", fetchImpl), store, putBodies };
}

export function exampleDocument(): ProblemDocument {
  return structuredClone(example1.document) as unknown as ProblemDocument;
}

export function documentSchema(): Record<string, unknown> {
  return schema as Record<string, unknown>;
}

/** Let queued promises from fire-and-forget UI handlers settle. */
export async function flush(): Promise<void> {
  await new Promise((resolve) => setTimeout(resolve, 0));
}
