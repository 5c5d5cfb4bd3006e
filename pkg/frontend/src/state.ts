/** Client-side session state: server views only, guarded by sequence numbers.
 *
 * The store never synthesizes board state; the ribbon can only change via
 * applyView with a fresh response.  One request may be outstanding at a
 * time, and responses that arrive out of order are discarded.
 */

import type { SessionView } from "./api.js";

export const LETTERS = ["0a", "0b", "0c", "1a", "1b", "1c", "2d"] as const;
export type LetterToken = (typeof LETTERS)[number];

export function isLetterToken(raw: string): raw is LetterToken {
  return (LETTERS as readonly string[]).includes(raw);
}

export class GameStore {
  view: SessionView | null = null;

  private issued = 0; // sequence number of the newest request
  private applied = 0; // sequence number of the newest applied response
  private outstanding = 0;

  /** True while a request is in flight; move buttons must be disabled. */
  get pending(): boolean {
    return this.outstanding > 0;
  }

  /** Buttons are live only on the human's turn with no request pending. */
  get buttonsEnabled(): boolean {
    return this.view !== null && this.view.turn === "ben" && !this.pending;
  }

  /** The turn token for the next move: the word length the server must see. */
  get turnToken(): number | undefined {
    return this.view === null ? undefined : this.view.word.length;
  }

  /** Register a new request and get its sequence number, or null if one
   * is already outstanding (the caller must ignore the interaction). */
  beginRequest(): number | null {
    if (this.pending) {
      return null;
    }
    this.outstanding += 1;
    this.issued += 1;
    return this.issued;
  }

  /** Mark the request finished without applying anything (error paths). */
  settle(token: number): void {
    if (token > 0 && this.outstanding > 0) {
      this.outstanding -= 1;
    }
  }

  /** Apply a server view if it is newer than everything applied so far.
   * Returns false (and leaves the view untouched) for stale responses. */
  applyView(token: number, view: SessionView): boolean {
    this.settle(token);
    if (token <= this.applied) {
      return false;
    }
    this.applied = token;
    this.view = view;
    return true;
  }

  reset(): void {
    this.view = null;
    this.issued = 0;
    this.applied = 0;
    this.outstanding = 0;
  }
}
