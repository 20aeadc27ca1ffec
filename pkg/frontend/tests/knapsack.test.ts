import { beforeEach, describe, expect, it } from "vitest";

import { renderKnapsack } from "../src/knapsack.js";
import { WorkbenchState } from "../src/state.js";
import { fakeServer, flush } from "./helpers.js";

async function panel() {
  const { api } = fakeServer();
  const state = new WorkbenchState(api);
  await state.loadProblem("example1");
  const container = document.createElement("div");
  document.body.appendChild(container);
  const rerender = () => renderKnapsack(container, state);
  state.subscribe(rerender);
  rerender();
  return { state, container };
}

beforeEach(() => {
  document.body.innerHTML = "";
});

async function slideTo(container: HTMLElement, budget: number) {
  const slider = container.querySelector<HTMLInputElement>("input.budget")!;
  slider.value = String(budget);
  slider.dispatchEvent(new Event("change"));
  await flush();
}

describe("knapsack panel", () => {
  it("moving the budget slider steps the database server pick up the range", async () => {
    const { state, container } = await panel();
    const progression: Record<number, string> = {};
    for (const budget of [15, 18, 19]) {
      await slideTo(container, budget);
      progression[budget] = state.knapsackResult!.selection.picks["M"];
    }
    expect(progression).toEqual({ 15: "M1", 18: "M2", 19: "M3" });
  });

  it("renders the selection line with its cost", async () => {
    const { container } = await panel();
    await slideTo(container, 15);
    const selection = container.querySelector(".selection")!;
    expect(selection.textContent).toContain("M1 E2 W1 D2 O3");
    expect(selection.textContent).toContain("cost 15");
  });

  it("shows the full ordering with picked rows highlighted", async () => {
    const { container } = await panel();
    await slideTo(container, 19);
    const rows = container.querySelectorAll(".ordering tbody tr");
    expect(rows).toHaveLength(20);
    const picked = [...container.querySelectorAll(".ordering tr.picked")].map(
      (r) => (r as HTMLElement).dataset.id,
    );
    expect(picked!.sort()).toEqual(["D2", "E2", "M3", "O3", "W1"]);
  });

  it("slider bounds come from the cheapest and dearest selections", async () => {
    const { container } = await panel();
    const slider = container.querySelector<HTMLInputElement>("input.budget")!;
    expect(slider.min).toBe("6");
    expect(slider.max).toBe("28");
  });
});
