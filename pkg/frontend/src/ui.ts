/** Board controller and DOM rendering.
 *
 * Every render reflects the last applied server view and nothing else:
 * a click disables the buttons, sends the move, and the ribbon changes
 * only when the response view is applied (no optimistic updates).
 */

import type { Mode, SessionApi, SessionView } from "./api.js";
import { GameStore, LETTERS } from "./state.js";
import { buildTrace, traceFilename } from "./trace.js";

const THREAT_CAP = 10; // meter saturates here; the value itself is shown too

export class Controller {
  readonly store = new GameStore();
  validation: string | null = null;
  banner: string | null = null;
  private retryAction: (() => Promise<void>) | null = null;

  constructor(
    private readonly api: SessionApi,
    private readonly root: HTMLElement,
  ) {
    this.root.addEventListener("click", (event) => {
      const target = event.target as HTMLElement;
      const move = target.closest<HTMLButtonElement>("button.move");
      if (move && move.dataset.letter) {
        void this.clickLetter(move.dataset.letter);
        return;
      }
      if (target.closest("button.new-game")) {
        void this.newGame(this.selectedMode());
        return;
      }
      if (target.closest("button.retry")) {
        void this.retry();
        return;
      }
      if (target.closest("button.dismiss")) {
        this.banner = null;
        this.render();
      }
    });
    this.render();
  }

  selectedMode(): Mode {
    const select = this.root.querySelector<HTMLSelectElement>("select.mode-select");
    return (select?.value as Mode) ?? "ann-starts";
  }

  async newGame(mode: Mode): Promise<void> {
    if (this.store.pending) {
      return;
    }
    this.store.reset();
    const token = this.store.beginRequest();
    if (token === null) {
      return;
    }
    this.validation = null;
    this.render();
    const result = await this.api.createSession(mode);
    if (result.ok) {
      this.store.applyView(token, result.value);
      this.banner = null;
      this.retryAction = null;
    } else {
      this.store.settle(token);
      this.banner = `${result.error.error}: ${result.error.message}`;
      this.retryAction = () => this.newGame(mode);
    }
    this.render();
  }

  /** Submit Ben's letter.  Ignored outside the human's turn or while a
   * request is outstanding; the service's turn token backs this up. */
  async clickLetter(letter: string): Promise<void> {
    if (!this.store.buttonsEnabled || this.store.view === null) {
      return;
    }
    const { id } = this.store.view;
    const turn = this.store.turnToken;
    const token = this.store.beginRequest();
    if (token === null) {
      return;
    }
    this.render();
    const result = await this.api.submitMove(id, letter, turn);
    if (result.ok) {
      this.store.applyView(token, result.value);
      this.validation = null;
    } else {
      this.store.settle(token);
      if (result.status === 422) {
        this.validation = result.error.message;
      } else {
        this.banner = `${result.error.error}: ${result.error.message}`;
        this.retryAction = null;
      }
    }
    this.render();
  }

  async retry(): Promise<void> {
    const action = this.retryAction;
    this.retryAction = null;
    this.banner = null;
    if (action) {
      await action();
    } else {
      this.render();
    }
  }

  traceText(): string | null {
    return this.store.view === null ? null : buildTrace(this.store.view);
  }

  render(): void {
    const view = this.store.view;
    this.root.innerHTML = `
      <header>
        <h1>thue arena</h1>
        <div class="controls">
          <label>mode
            <select class="mode-select">
              <option value="ann-starts">ann-starts</option>
              <option value="ben-starts">ben-starts</option>
            </select>
          </label>
          <button class="new-game" type="button">new game</button>
        </div>
      </header>
      ${this.bannerHtml()}
      <section class="board">
        <ol class="ribbon">${view ? ribbonHtml(view) : ""}</ol>
        <div class="buttons">${this.buttonsHtml()}</div>
        <p class="validation"${this.validation === null ? " hidden" : ""}>${escapeHtml(
          this.validation ?? "",
        )}</p>
      </section>
      ${view ? statusHtml(view) : '<p class="hint">start a game to play the adversary</p>'}
    `;
    const select = this.root.querySelector<HTMLSelectElement>("select.mode-select");
    if (select && view) {
      select.value = view.mode;
    }
  }

  private bannerHtml(): string {
    if (this.banner === null) {
      return "";
    }
    return `<div class="banner" role="alert">${escapeHtml(this.banner)}
      <button class="retry" type="button"${this.retryAction === null ? " hidden" : ""}>retry</button>
      <button class="dismiss" type="button">dismiss</button>
    </div>`;
  }

  private buttonsHtml(): string {
    const enabled = this.store.buttonsEnabled;
    return LETTERS.map(
      (letter) =>
        `<button class="move" type="button" data-letter="${letter}"${
          enabled ? "" : " disabled"
        }>${letter}</button>`,
    ).join("");
  }
}

function ribbonHtml(view: SessionView): string {
  const doubled = new Set<number>();
  for (const start of view.unary_squares) {
    doubled.add(start);
    doubled.add(start + 1);
  }
  return view.word
    .map((letter, i) => {
      const player = view.players[i] === "A" ? "player-a" : "player-b";
      const unary = doubled.has(i) ? " unary" : "";
      return `<li class="letter ${player}${unary}" data-index="${i}">${letter}</li>`;
    })
    .join("");
}

function statusHtml(view: SessionView): string {
  const width = Math.min(view.threat, THREAT_CAP) * (100 / THREAT_CAP);
  const falsified = view.status === "finished" && view.finished_reason === "strategy-falsified";
  const witness = view.witness
    ? `square at ${view.witness.start}, period ${view.witness.period}`
    : "";
  const trace = buildTrace(view);
  const href = `data:text/plain;charset=utf-8,${encodeURIComponent(trace)}`;
  return `<aside class="status">
    <dl>
      <dt>favourite track</dt><dd class="favourite">${view.favourite_track}</dd>
      <dt>next color index</dt><dd class="tau-counter">${view.tau_counter}</dd>
      <dt>doubled letters</dt><dd class="unary-count">${view.unary_squares.length}</dd>
      <dt>threat</dt><dd class="threat">${view.threat}</dd>
    </dl>
    <div class="threat-meter"><div class="threat-fill" style="width: ${width}%"></div></div>
    ${
      falsified
        ? `<div class="falsified" role="alert"><strong>strategy falsified</strong>
           <span class="witness">${witness}</span></div>`
        : ""
    }
    <a class="download-trace" download="${traceFilename(view)}" href="${href}">download trace</a>
  </aside>`;
}

function escapeHtml(raw: string): string {
  return raw
    .replaceAll("&", "&amp;")
    .replaceAll("<", "&lt;")
    .replaceAll(">", "&gt;")
    .replaceAll('"', "&quot;");
}
