/** JSON protocol spoken by the session service, validated with zod so a
 * malformed server reply fails loudly instead of corrupting the view. */
import { z } from "zod";

/** Lamp vertices and states are JSON scalars or nested arrays (tuples). */
export const Payload: z.ZodType<unknown> = z.union([
  z.number(),
  z.string(),
  z.array(z.lazy(() => Payload)),
]);

export const BoardJson = z.object({
  f: z.array(z.tuple([Payload, Payload])),
  v: Payload,
});
export type BoardJson = z.infer<typeof BoardJson>;

export const MoveJson = z.object({
  kind: z.enum(["walk", "set_state"]),
  target: Payload,
});
export type MoveJson = z.infer<typeof MoveJson>;

export const PathLabel = z.object({ vertex: Payload, label: z.string() });
export type PathLabel = z.infer<typeof PathLabel>;

export const SessionCreated = z.object({
  session_id: z.string(),
  psi: z.number().int(),
  r: z.number().int(),
  R: z.number().int(),
  v: Payload,
  omega1: Payload,
  path_labels: z.array(PathLabel),
});
export type SessionCreated = z.infer<typeof SessionCreated>;

export const Snapshot = z.object({
  session_id: z.string(),
  phase: z.enum(["awaiting-copier-boards", "in-play", "finished"]),
  n: z.number().int(),
  sigma: z.number().int(),
  rho: z.number().int(),
  psi: z.number().int(),
  r: z.number().int(),
  winner: z.number().int().nullable(),
  turn: z.number().int(),
  lamplighter_board: BoardJson.nullable(),
  copier_boards: z.array(BoardJson),
  copier_moves_used: z.array(z.number().int()),
  dist_min: z.number().int().nullable(),
  boards_digest: z.string().nullable(),
});
export type Snapshot = z.infer<typeof Snapshot>;

export const ServerMessage = z.discriminatedUnion("type", [
  z.object({ type: z.literal("applied") }),
  z.object({
    type: z.literal("illegal"),
    reason: z.string(),
    detail: z.string().optional(),
  }),
  z.object({ type: z.literal("lamplighter_turn"), moves: z.array(MoveJson) }),
  z.object({ type: z.literal("win"), copier: z.number().int() }),
  z.object({ type: z.literal("state"), snapshot: Snapshot }),
]);
export type ServerMessage = z.infer<typeof ServerMessage>;

export type ClientMessage =
  | { type: "move"; copier: number; move: MoveJson }
  | { type: "end_turn" };

/** Stable key for a payload, for use in Maps keyed by vertex. */
export function payloadKey(p: unknown): string {
  return JSON.stringify(p);
}
