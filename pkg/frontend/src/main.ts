/** Browser bootstrap: setup form -> session -> play loop. */
import { BoardView, applyMove, toView } from "./boards.js";
import { ApiError, PlaySocket, SessionApi, SocketCtor } from "./client.js";
import { BoardJson, MoveJson } from "./protocol.js";
import {
  renderFormError,
  renderLampStrip,
  renderStatusBar,
  renderWinBanner,
  showToast,
} from "./render.js";
import { ViewModel } from "./viewmodel.js";

const STREETMAPS: Record<string, unknown> = {
  "two-state lamps on the line": {
    omega: { family: "path", k: 2 },
    base_state: 0,
    lambda: { family: "infinite_path" },
  },
  "five-cycle lamps on the line": {
    omega: { family: "cycle", k: 5 },
    base_state: 0,
    lambda: { family: "infinite_path" },
  },
};

const ANIMATION_MS = 250;

function el<T extends HTMLElement>(id: string): T {
  const found = document.getElementById(id);
  if (!found) throw new Error(`missing element #${id}`);
  return found as T;
}

interface PlayContext {
  vm: ViewModel;
  socket: PlaySocket;
  baseState: unknown;
  lampView: BoardView | null;
  animating: boolean;
}

function redraw(ctx: PlayContext): void {
  const snap = ctx.vm.snapshot;
  if (!snap) return;
  const copiers = snap.copier_boards.map(toView);
  // During the reply animation the lamp strip shows the animated board,
  // not the (already final) snapshot board.
  const lamp = ctx.animating
    ? ctx.lampView
    : snap.lamplighter_board
      ? toView(snap.lamplighter_board)
      : null;
  renderLampStrip(el("strip"), ctx.vm.plan, lamp, copiers, {
    baseState: ctx.baseState,
    onLampClick: (lampVertex) => onLampClick(ctx, lampVertex),
  });
  renderStatusBar(el("status"), snap, ctx.vm.winMargin());
  const banner = ctx.vm.winBanner();
  if (banner) renderWinBanner(el("banner"), banner);
}

function onLampClick(ctx: PlayContext, lamp: number): void {
  const snap = ctx.vm.snapshot;
  if (!snap || !ctx.vm.canMove(ctx.vm.selectedCopier)) return;
  // Advisory only: clicking an adjacent lamp proposes a walk; the server
  // remains the sole judge of legality.
  ctx.socket.send({
    type: "move",
    copier: ctx.vm.selectedCopier,
    move: { kind: "walk", target: lamp },
  });
}

function animateReply(ctx: PlayContext): void {
  const move = ctx.vm.nextAnimationMove();
  if (move === null) {
    ctx.animating = false;
    redraw(ctx);
    return;
  }
  if (ctx.lampView) {
    ctx.lampView = applyMove(ctx.lampView, move as MoveJson, ctx.baseState);
  }
  redraw(ctx);
  setTimeout(() => animateReply(ctx), ANIMATION_MS);
}

async function receiveLoop(ctx: PlayContext): Promise<void> {
  for (;;) {
    const msg = await ctx.socket.next();
    if (msg.type === "lamplighter_turn") {
      const snap = ctx.vm.snapshot;
      ctx.lampView = snap?.lamplighter_board
        ? toView(snap.lamplighter_board)
        : null;
      ctx.vm.apply(msg);
      ctx.animating = true;
      animateReply(ctx);
      continue;
    }
    ctx.vm.apply(msg);
    if (msg.type === "illegal") {
      showToast(el("toasts"), msg.reason, msg.detail ?? "");
    }
    if (!ctx.animating) redraw(ctx);
  }
}

async function startSession(socketCtor: SocketCtor): Promise<void> {
  const errBox = el("form-error");
  renderFormError(errBox, "");
  const api = new SessionApi("");
  const streetmapName = el<HTMLSelectElement>("streetmap").value;
  const config = {
    streetmap: STREETMAPS[streetmapName],
    n: Number(el<HTMLInputElement>("n").value),
    sigma: Number(el<HTMLInputElement>("sigma").value),
    rho: Number(el<HTMLInputElement>("rho").value),
  };
  if (config.n < 1 || config.sigma < 1 || config.rho < 1) {
    renderFormError(errBox, "n, sigma and rho must be positive");
    return;
  }
  let plan;
  try {
    plan = await api.createSession(config);
    const boards: BoardJson[] = Array.from({ length: config.n }, () => ({
      f: [],
      v: plan!.v,
    }));
    await api.submitBoards(plan.session_id, boards);
  } catch (err) {
    renderFormError(
      errBox,
      err instanceof ApiError ? err.detail : String(err),
    );
    return;
  }

  const vm = new ViewModel(plan);
  vm.snapshot = await api.getSnapshot(plan.session_id);
  const proto = location.protocol === "https:" ? "wss:" : "ws:";
  const socket = new PlaySocket(
    `${proto}//${location.host}/sessions/${plan.session_id}/play`,
    socketCtor,
  );
  await socket.connect();
  const ctx: PlayContext = {
    vm,
    socket,
    baseState: 0,
    lampView: null,
    animating: false,
  };
  el("setup").style.display = "none";
  el("game").style.display = "";
  el("plan-info").textContent =
    `speed ${plan.psi} · play radius ${plan.r} · ` +
    `labeled path ${plan.path_labels.map((p) => p.label).join(" ")}`;
  el<HTMLButtonElement>("end-turn").onclick = () =>
    socket.send({ type: "end_turn" });
  const copierSelect = el<HTMLSelectElement>("copier");
  copierSelect.replaceChildren(
    ...Array.from({ length: config.n }, (_, i) => {
      const opt = document.createElement("option");
      opt.value = String(i);
      opt.textContent = `copier ${i}`;
      return opt;
    }),
  );
  copierSelect.onchange = () => {
    vm.selectedCopier = Number(copierSelect.value);
  };
  redraw(ctx);
  void receiveLoop(ctx);
}

export function wire(socketCtor: SocketCtor = WebSocket as SocketCtor): void {
  el<HTMLButtonElement>("start").onclick = () => {
    void startSession(socketCtor);
  };
}

if (typeof document !== "undefined" && document.getElementById("start")) {
  wire();
}
