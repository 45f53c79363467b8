/** DOM rendering: a 1-D lamp strip (the lamp graph is a path or the
 * integer line in every built-in streetmap), state-colored discs, labeled
 * strategy-path markers, and player badges. */
import { BoardView, stateAt } from "./boards.js";
import { SessionCreated, Snapshot, payloadKey } from "./protocol.js";

const STATE_COLORS = ["#223", "#fc3", "#3cf", "#f6c", "#6f6", "#f44"];

export function colorForState(state: unknown, baseState: unknown): string {
  if (payloadKey(state) === payloadKey(baseState)) {
    const first = STATE_COLORS[0];
    return first ?? "#223";
  }
  const n = typeof state === "number" ? state : 1;
  return STATE_COLORS[Math.abs(n) % STATE_COLORS.length] ?? "#fc3";
}

/** Integer lamp positions to draw: the strategy path padded on each side. */
export function stripRange(plan: SessionCreated, extra = 3): number[] {
  const verts = plan.path_labels
    .map((pl) => pl.vertex)
    .filter((v): v is number => typeof v === "number");
  const lo = Math.min(...verts) - extra;
  const hi = Math.max(...verts) + extra;
  const out: number[] = [];
  for (let x = lo; x <= hi; x += 1) out.push(x);
  return out;
}

export interface StripOptions {
  baseState: unknown;
  onLampClick?: (lamp: number) => void;
}

export function renderLampStrip(
  container: HTMLElement,
  plan: SessionCreated,
  lamplighter: BoardView | null,
  copiers: BoardView[],
  opts: StripOptions,
): void {
  container.replaceChildren();
  const doc = container.ownerDocument;
  for (const lamp of stripRange(plan)) {
    const cell = doc.createElement("div");
    cell.className = "lamp-cell";
    cell.dataset.lamp = String(lamp);

    const disc = doc.createElement("div");
    disc.className = "lamp-disc";
    const state = lamplighter
      ? stateAt(lamplighter, lamp, opts.baseState)
      : opts.baseState;
    disc.style.background = colorForState(state, opts.baseState);
    disc.title = `lamp ${lamp}: state ${JSON.stringify(state)}`;
    if (opts.onLampClick) {
      disc.addEventListener("click", () => opts.onLampClick?.(lamp));
    }
    cell.appendChild(disc);

    const label = plan.path_labels.find(
      (pl) => payloadKey(pl.vertex) === payloadKey(lamp),
    );
    const tag = doc.createElement("div");
    tag.className = "lamp-label";
    tag.textContent = label ? label.label : "";
    cell.appendChild(tag);

    const badges = doc.createElement("div");
    badges.className = "lamp-badges";
    if (lamplighter && payloadKey(lamplighter.position) === payloadKey(lamp)) {
      const b = doc.createElement("span");
      b.className = "badge badge-lamplighter";
      b.textContent = "L";
      badges.appendChild(b);
    }
    copiers.forEach((c, i) => {
      if (payloadKey(c.position) === payloadKey(lamp)) {
        const b = doc.createElement("span");
        b.className = "badge badge-copier";
        b.textContent = `C${i}`;
        badges.appendChild(b);
      }
    });
    cell.appendChild(badges);
    container.appendChild(cell);
  }
}

export function renderStatusBar(
  container: HTMLElement,
  snapshot: Snapshot,
  winMargin: string,
): void {
  container.textContent =
    `turn ${snapshot.turn} · phase ${snapshot.phase} · ` +
    `moves used ${snapshot.copier_moves_used.join("/")} of ${snapshot.sigma}` +
    ` · win margin ${winMargin}`;
}

export function renderWinBanner(container: HTMLElement, text: string): void {
  container.textContent = text;
  container.classList.add("win-banner-visible");
}

export function showToast(
  container: HTMLElement,
  reason: string,
  detail: string,
): void {
  const doc = container.ownerDocument;
  const el = doc.createElement("div");
  el.className = "toast";
  el.textContent = detail ? `${reason}: ${detail}` : reason;
  container.appendChild(el);
  setTimeout(() => el.remove(), 4000);
}

export function renderFormError(container: HTMLElement, text: string): void {
  container.textContent = text;
}
