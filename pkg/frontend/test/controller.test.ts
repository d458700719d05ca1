import { describe, expect, it } from "vitest";

import { EditServiceClient } from "../src/api.js";
import { EditorController } from "../src/controller.js";
import { scriptedFetch, type Route } from "./helpers.js";
import small from "./fixtures/create_small6.json";

function controllerWith(routes: Route[]) {
  const { fetch, calls } = scriptedFetch(routes);
  return { controller: new EditorController(new EditServiceClient("", fetch)), calls };
}

describe("EditorController", () => {
  it("loads a session and exposes the grid", async () => {
    const { controller } = controllerWith([
      { method: "POST", path: "/sessions", json: small },
    ]);
    await controller.load("whatever", 3, 3);
    const state = controller.getState();
    expect(state.session?.id).toBe(small.session.id);
    expect(state.error).toBeNull();
    expect(controller.grid()?.n).toBe(6);
  });

  it("surfaces parse errors without destroying state", async () => {
    const { controller } = controllerWith([
      { method: "POST", path: "/sessions", json: small },
      {
        method: "POST",
        path: "/sessions",
        status: 400,
        json: { detail: "line 2: missing ':' separator" },
      },
    ]);
    await controller.load("good", 3, 3);
    await controller.load("bad", 3, 3);
    const state = controller.getState();
    expect(state.error).toContain("line 2");
    expect(state.session?.id).toBe(small.session.id); // previous session kept
  });

  it("flip state always reflects the last server response", async () => {
    const flipped = structuredClone(small);
    flipped.session.undo_depth = 1;
    const { controller, calls } = controllerWith([
      { method: "POST", path: "/sessions", json: small },
      { method: "POST", path: `/sessions/${small.session.id}/flip`, json: flipped },
    ]);
    await controller.load("x", 3, 3);
    await controller.flip(0, 1);
    expect(controller.getState().session?.undo_depth).toBe(1);
    expect(calls).toEqual([
      "POST /sessions",
      `POST /sessions/${small.session.id}/flip`,
    ]);
  });

  it("maps 404 to a reload prompt", async () => {
    const { controller } = controllerWith([
      { method: "POST", path: "/sessions", json: small },
      {
        method: "POST",
        path: `/sessions/${small.session.id}/flip`,
        status: 404,
        json: { detail: "unknown session" },
      },
    ]);
    await controller.load("x", 3, 3);
    await controller.flip(0, 1);
    expect(controller.getState().error).toContain("reload");
  });

  it("ignores flips before any session exists", async () => {
    const { controller, calls } = controllerWith([]);
    await controller.flip(0, 1);
    expect(calls).toEqual([]);
  });

  it("selects violations for highlight", async () => {
    const { controller } = controllerWith([
      { method: "POST", path: "/sessions", json: small },
    ]);
    await controller.load("x", 3, 3);
    controller.selectViolation(0);
    expect(controller.grid()?.rows.flat().some((c) => c.selected)).toBe(true);
    controller.selectViolation(null);
    expect(controller.grid()?.rows.flat().some((c) => c.selected)).toBe(false);
  });

  it("notifies subscribers on every change", async () => {
    const { controller } = controllerWith([
      { method: "POST", path: "/sessions", json: small },
    ]);
    const seen: boolean[] = [];
    controller.subscribe((state) => seen.push(state.busy));
    await controller.load("x", 3, 3);
    expect(seen[0]).toBe(false); // initial
    expect(seen).toContain(true); // busy while loading
    expect(seen[seen.length - 1]).toBe(false);
  });
});
