/** View state for a play session.  Derived solely from server messages
 * plus local selections; all legality is server-decided and the local
 * pre-validation is advisory only (it greys out controls, it never
 * forbids sending). */
import {
  MoveJson,
  PathLabel,
  ServerMessage,
  SessionCreated,
  Snapshot,
  payloadKey,
} from "./protocol.js";

export interface Toast {
  reason: string;
  detail: string;
}

export class ViewModel {
  snapshot: Snapshot | null = null;
  selectedCopier = 0;
  /** Lamplighter reply still to be animated, oldest first. */
  animationQueue: MoveJson[] = [];
  winner: number | null = null;
  toasts: Toast[] = [];

  constructor(public readonly plan: SessionCreated) {}

  /** Moves the selected copier may still make this turn (advisory). */
  movesLeft(copier: number): number {
    if (!this.snapshot) return 0;
    const used = this.snapshot.copier_moves_used[copier] ?? 0;
    return Math.max(this.snapshot.sigma - used, 0);
  }

  canMove(copier: number): boolean {
    return (
      this.snapshot !== null &&
      this.snapshot.phase === "in-play" &&
      this.winner === null &&
      this.movesLeft(copier) > 0
    );
  }

  /** Win-margin display: the exact minimum board distance when the server
   * reports one, otherwise only the guarantee "> rho". */
  winMargin(): string {
    if (!this.snapshot) return "";
    const d = this.snapshot.dist_min;
    return d === null ? `> ${this.snapshot.rho}` : String(d);
  }

  labelFor(vertex: unknown): string | null {
    const key = payloadKey(vertex);
    const hit = this.plan.path_labels.find(
      (pl: PathLabel) => payloadKey(pl.vertex) === key,
    );
    return hit ? hit.label : null;
  }

  apply(msg: ServerMessage): void {
    switch (msg.type) {
      case "state":
        this.snapshot = msg.snapshot;
        break;
      case "lamplighter_turn":
        this.animationQueue.push(...msg.moves);
        break;
      case "win":
        this.winner = msg.copier;
        break;
      case "illegal":
        this.toasts.push({ reason: msg.reason, detail: msg.detail ?? "" });
        break;
      case "applied":
        break;
    }
  }

  /** Pop the next animation frame, if any. */
  nextAnimationMove(): MoveJson | null {
    return this.animationQueue.shift() ?? null;
  }

  winBanner(): string | null {
    return this.winner === null ? null : `Copier ${this.winner} wins!`;
  }
}
