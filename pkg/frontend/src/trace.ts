/** Trace-file construction from a server view.
 *
 * The format matches the engine's own traces: a mode header followed by
 * one "<player> <letter>" line per move, newline-terminated, so the
 * downloaded file replays through `thue-arena replay`.
 */

import type { SessionView } from "./api.js";

export function buildTrace(view: Pick<SessionView, "mode" | "word" | "players">): string {
  if (view.players.length !== view.word.length) {
    throw new Error(
      `view is inconsistent: ${view.players.length} players for ${view.word.length} letters`,
    );
  }
  const lines = [`# mode=${view.mode}`];
  view.players.forEach((player, i) => lines.push(`${player} ${view.word[i]}`));
  return lines.join("\n") + "\n";
}

export function traceFilename(view: Pick<SessionView, "id">): string {
  return `session-${view.id}.trace`;
}
