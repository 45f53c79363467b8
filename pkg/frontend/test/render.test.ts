import { describe, expect, it } from "vitest";
import { colorForState, stripRange } from "../src/render.js";

const PLAN = {
  session_id: "abc",
  psi: 6,
  r: 2,
  R: 26,
  v: 0,
  omega1: 1,
  path_labels: [
    { vertex: -1, label: "l1" },
    { vertex: 0, label: "m1" },
    { vertex: 1, label: "m2" },
    { vertex: 2, label: "r1" },
  ],
};

describe("render helpers", () => {
  it("draws the labeled path plus padding", () => {
    const range = stripRange(PLAN, 3);
    expect(range[0]).toBe(-4);
    expect(range[range.length - 1]).toBe(5);
    expect(range).toHaveLength(10);
  });

  it("gives the default state a distinct color", () => {
    const off = colorForState(0, 0);
    const on = colorForState(1, 0);
    expect(on).not.toBe(off);
    expect(colorForState(0, 0)).toBe(off); // stable
  });

  it("colors every state of a larger state cycle", () => {
    const seen = new Set(
      [0, 1, 2, 3, 4].map((s) => colorForState(s, 0)),
    );
    expect(seen.size).toBeGreaterThan(2);
  });
});
