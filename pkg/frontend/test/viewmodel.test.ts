import { describe, expect, it } from "vitest";
import { Snapshot } from "../src/protocol.js";
import { ViewModel } from "../src/viewmodel.js";

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

function snap(overrides: Partial<Snapshot> = {}): Snapshot {
  return {
    session_id: "abc",
    phase: "in-play",
    n: 1,
    sigma: 2,
    rho: 1,
    psi: 6,
    r: 2,
    winner: null,
    turn: 1,
    lamplighter_board: { f: [[-1, 1], [2, 1]], v: -1 },
    copier_boards: [{ f: [], v: 0 }],
    copier_moves_used: [0],
    dist_min: null,
    boards_digest: "x",
    ...overrides,
  };
}

describe("view model", () => {
  it("derives the move budget from the snapshot", () => {
    const vm = new ViewModel(PLAN);
    vm.apply({ type: "state", snapshot: snap({ copier_moves_used: [1] }) });
    expect(vm.movesLeft(0)).toBe(1);
    expect(vm.canMove(0)).toBe(true);
    vm.apply({ type: "state", snapshot: snap({ copier_moves_used: [2] }) });
    expect(vm.movesLeft(0)).toBe(0);
    expect(vm.canMove(0)).toBe(false);
  });

  it("never reports a negative budget", () => {
    const vm = new ViewModel(PLAN);
    vm.apply({ type: "state", snapshot: snap({ copier_moves_used: [5] }) });
    expect(vm.movesLeft(0)).toBe(0);
  });

  it("shows the guarantee when no exact distance is known", () => {
    const vm = new ViewModel(PLAN);
    vm.apply({ type: "state", snapshot: snap() });
    expect(vm.winMargin()).toBe("> 1");
    vm.apply({ type: "state", snapshot: snap({ dist_min: 3 }) });
    expect(vm.winMargin()).toBe("3");
  });

  it("queues lamplighter moves for animation in order", () => {
    const vm = new ViewModel(PLAN);
    vm.apply({
      type: "lamplighter_turn",
      moves: [
        { kind: "walk", target: 0 },
        { kind: "set_state", target: 1 },
      ],
    });
    expect(vm.nextAnimationMove()).toEqual({ kind: "walk", target: 0 });
    expect(vm.nextAnimationMove()).toEqual({ kind: "set_state", target: 1 });
    expect(vm.nextAnimationMove()).toBeNull();
  });

  it("records illegal-move toasts and win banners", () => {
    const vm = new ViewModel(PLAN);
    vm.apply({ type: "illegal", reason: "speed-exhausted", detail: "budget" });
    expect(vm.toasts).toEqual([
      { reason: "speed-exhausted", detail: "budget" },
    ]);
    expect(vm.winBanner()).toBeNull();
    vm.apply({ type: "win", copier: 0 });
    expect(vm.winBanner()).toBe("Copier 0 wins!");
    vm.apply({ type: "state", snapshot: snap() });
    expect(vm.canMove(0)).toBe(false); // game over locks the controls
  });

  it("maps path labels onto vertices", () => {
    const vm = new ViewModel(PLAN);
    expect(vm.labelFor(-1)).toBe("l1");
    expect(vm.labelFor(2)).toBe("r1");
    expect(vm.labelFor(99)).toBeNull();
  });
});
