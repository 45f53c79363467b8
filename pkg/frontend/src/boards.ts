/** Client-side board bookkeeping: just enough to replay the server's move
 * list frame by frame during the lamplighter animation.  All legality is
 * decided server-side; nothing here rejects a move. */
import { BoardJson, MoveJson, payloadKey } from "./protocol.js";

export interface BoardView {
  position: unknown;
  /** lamp payloadKey -> [lamp payload, state payload] */
  states: Map<string, [unknown, unknown]>;
}

export function toView(board: BoardJson): BoardView {
  const states = new Map<string, [unknown, unknown]>();
  for (const [lamp, state] of board.f) {
    states.set(payloadKey(lamp), [lamp, state]);
  }
  return { position: board.v, states };
}

export function stateAt(
  view: BoardView,
  lamp: unknown,
  baseState: unknown,
): unknown {
  const hit = view.states.get(payloadKey(lamp));
  return hit === undefined ? baseState : hit[1];
}

/** Apply one atomic move, returning a new view (input left untouched). */
export function applyMove(
  view: BoardView,
  move: MoveJson,
  baseState: unknown,
): BoardView {
  const states = new Map(view.states);
  if (move.kind === "walk") {
    return { position: move.target, states };
  }
  const key = payloadKey(view.position);
  if (payloadKey(move.target) === payloadKey(baseState)) {
    states.delete(key);
  } else {
    states.set(key, [view.position, move.target]);
  }
  return { position: view.position, states };
}

export function toJson(view: BoardView): BoardJson {
  const f = [...view.states.values()].map(
    ([lamp, state]) => [lamp, state] as [unknown, unknown],
  );
  return { f, v: view.position };
}
