import { beforeEach, describe, expect, it } from "vitest";

import { WorkbenchState } from "../src/state.js";
import { renderWhatIf } from "../src/whatif.js";
import { fakeServer, flush } from "./helpers.js";

async function console_() {
  const { api } = fakeServer();
  const state = new WorkbenchState(api);
  await state.loadProblem("example1");
  await state.compose();
  const container = document.createElement("div");
  document.body.appendChild(container);
  const rerender = () => renderWhatIf(container, state, "B");
  state.subscribe(rerender);
  rerender();
  return { state, container };
}

beforeEach(() => {
  document.body.innerHTML = "";
});

describe("what-if console", () => {
  it("offers the bottleneck pairs of the composed decisions", async () => {
    const { container } = await console_();
    const options = [...container.querySelectorAll<HTMLOptionElement>("select.pair option")];
    expect(options.some((o) => o.textContent!.includes("(D2,O5) = 1"))).toBe(true);
  });

  it("evaluating the published improvement shows the promotion", async () => {
    const { container } = await console_();
    const pair = container.querySelector<HTMLSelectElement>("select.pair")!;
    pair.value = "D2,O5";
    container.querySelector<HTMLButtonElement>("button.run")!.click();
    await flush();
    const delta = container.querySelector(".delta")!;
    expect(delta.textContent).toContain("W1 D2 O5: (1;3,0,0) → (3;3,0,0)");
    expect(delta.textContent).toContain("W1 D3 O3 leaves");
    expect(delta.textContent).toContain("W2 D2 O2 leaves");
  });

  it("a no-op override reports no change", async () => {
    const { state, container } = await console_();
    const value = container.querySelector<HTMLSelectElement>("select.value")!;
    value.value = "1";
    container.querySelector<HTMLButtonElement>("button.run")!.click();
    await flush();
    expect(state.overlay!.empty).toBe(true);
    expect(container.querySelector(".notice")!.textContent).toBe("no change");
    expect(container.querySelector(".delta")).toBeNull();
  });

  it("applying commits the override to the edit buffer", async () => {
    const { state, container } = await console_();
    container.querySelector<HTMLButtonElement>("button.run")!.click();
    await flush();
    container.querySelector<HTMLButtonElement>("button.apply")!.click();
    await flush();
    const block = state.buffer!.compatibility!.find(
      (b) => b.parts[0] === "D" && b.parts[1] === "O",
    )!;
    expect(block.values["D2"]["O5"]).toBe(3);
    expect(state.dirty).toBe(true);
    expect(state.overlay).toBeNull();
  });

  it("apply stays disabled until an evaluation ran", async () => {
    const { container } = await console_();
    expect(container.querySelector<HTMLButtonElement>("button.apply")!.disabled).toBe(true);
  });
});
