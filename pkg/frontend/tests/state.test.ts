import { describe, expect, it } from "vitest";

import { WorkbenchState } from "../src/state.js";
import { exampleDocument, fakeServer } from "./helpers.js";

async function loaded() {
  const server = fakeServer();
  const state = new WorkbenchState(server.api);
  await state.loadProblem("example1");
  return { server, state };
}

describe("problem loading", () => {
  it("clones the stored document into the buffer", async () => {
    const { state } = await loaded();
    expect(state.problemId).toBe("example1");
    expect(state.revision).toBe(1);
    expect(state.buffer).toEqual(exampleDocument());
    expect(state.dirty).toBe(false);
    expect(state.issues).toEqual([]);
    expect(state.activeScenario).toBe("provider");
  });

  it("switching problems discards overlay and solve results", async () => {
    const { state } = await loaded();
    await state.compose();
    await state.runWhatIf({ parts: ["D", "O"], alternatives: ["D2", "O5"], value: 3 }, "B");
    expect(state.overlay).not.toBeNull();
    expect(state.solves.size).toBeGreaterThan(0);
    await state.loadProblem("example2");
    expect(state.overlay).toBeNull();
    expect(state.solves.size).toBe(0);
    expect(state.knapsackResult).toBeNull();
  });
});

describe("solving", () => {
  it("stores the compose payload verbatim, node by node", async () => {
    const { state } = await loaded();
    await state.compose();
    const b = state.solves.get("B")!;
    const byLabel = Object.fromEntries(b.decisions.map((d) => [d.label, d.quality.notation]));
    expect(byLabel).toEqual({
      "W1 D2 O5": "(1;3,0,0)",
      "W1 D3 O3": "(3;2,1,0)",
      "W2 D2 O2": "(3;2,1,0)",
    });
    expect(state.solves.get("S")!.decisions).toHaveLength(3);
  });

  it("records the what-if delta and notices an empty one", async () => {
    const { state } = await loaded();
    await state.runWhatIf({ parts: ["D", "O"], alternatives: ["D2", "O5"], value: 3 }, "B");
    expect(state.overlay!.empty).toBe(false);
    expect(state.overlay!.after[0].quality.notation).toBe("(3;3,0,0)");
    await state.runWhatIf({ parts: ["D", "O"], alternatives: ["D2", "O5"], value: 1 }, "B");
    expect(state.overlay!.empty).toBe(true);
    expect(state.notice).toBe("no change");
  });
});

describe("editing and the overlay boundary", () => {
  it("what-if results never touch the buffer until applied", async () => {
    const { state } = await loaded();
    await state.runWhatIf({ parts: ["D", "O"], alternatives: ["D2", "O5"], value: 3 }, "B");
    const entry = () =>
      state.buffer!.compatibility!.find((b) => b.parts[0] === "D" && b.parts[1] === "O")!
        .values["D2"]["O5"];
    expect(entry()).toBe(1);
    expect(state.dirty).toBe(false);
    state.applyOverlay({ parts: ["D", "O"], alternatives: ["D2", "O5"], value: 3 });
    expect(entry()).toBe(3);
    expect(state.dirty).toBe(true);
    expect(state.overlay).toBeNull();
  });

  it("weight-row edits re-target the matching scenario", async () => {
    const { state } = await loaded();
    state.editWeights([-1, 3, -1, 3]);
    expect(state.activeScenario).toBe("stage2");
    state.editWeights([-1, 5, -3, 5]);
    expect(state.activeScenario).toBe("stage3");
  });

  it("symmetric compatibility edits work in either part order", async () => {
    const { state } = await loaded();
    state.editCompatibility(["O", "D"], ["O5", "D2"], 2);
    const block = state.buffer!.compatibility!.find(
      (b) => b.parts[0] === "D" && b.parts[1] === "O",
    )!;
    expect(block.values["D2"]["O5"]).toBe(2);
  });
});

describe("saving", () => {
  it("round-trips the buffer: save then reload reproduces the document", async () => {
    const { server, state } = await loaded();
    state.editEstimate("M", "M1", 0, 3);
    const edited = structuredClone(state.buffer);
    expect(await state.save()).toBe(true);
    expect(state.revision).toBe(2);
    expect(state.dirty).toBe(false);
    expect(server.putBodies[0].document).toEqual(edited);
    await state.loadProblem("example1");
    expect(state.buffer).toEqual(edited);
    expect(state.revision).toBe(2);
  });

  it("refuses to save an invalid buffer", async () => {
    const { server, state } = await loaded();
    state.editEstimate("M", "M1", 0, 9);
    expect(state.issues.length).toBeGreaterThan(0);
    expect(await state.save()).toBe(false);
    expect(server.putBodies).toHaveLength(0);
    expect(state.notice).toContain("validation");
  });

  it("flags a conflict on stale revision and keeps the buffer", async () => {
    const { server, state } = await loaded();
    server.store.get("example1")!.revision = 7; // someone else saved
    state.editEstimate("M", "M1", 0, 3);
    expect(await state.save()).toBe(false);
    expect(state.conflict).toBe(true);
    expect(state.dirty).toBe(true);
  });
});
