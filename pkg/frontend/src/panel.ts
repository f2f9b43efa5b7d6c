// DOM binding for one session panel. All session logic lives in
// SessionController; this file only paints state.

import { displayText } from "./displayFold.js";
import { SessionController, UiSessionState } from "./session.js";
import { RenderThrottle, formatStats, statsOf } from "./stats.js";

const HIGHLIGHT_MS = 700;

export class SessionPanel {
  readonly root: HTMLElement;
  private readonly statusEl: HTMLElement;
  private readonly transcriptEl: HTMLElement;
  private readonly statsEl: HTMLElement;
  private readonly retryButton: HTMLButtonElement;
  private readonly statsThrottle = new RenderThrottle(100);
  private lastRevision = 0;
  controller: SessionController | null = null;

  constructor(title: string) {
    this.root = document.createElement("section");
    this.root.className = "panel";
    this.root.innerHTML = `
      <h2>${title}</h2>
      <div class="status">idle</div>
      <div class="transcript" aria-live="polite"></div>
      <div class="stats">no session</div>
      <button class="retry" hidden>retry</button>
    `;
    this.statusEl = this.root.querySelector(".status") as HTMLElement;
    this.transcriptEl = this.root.querySelector(".transcript") as HTMLElement;
    this.statsEl = this.root.querySelector(".stats") as HTMLElement;
    this.retryButton = this.root.querySelector(".retry") as HTMLButtonElement;
    this.retryButton.addEventListener("click", () => this.controller?.start());
  }

  update(state: UiSessionState): void {
    this.statusEl.textContent = state.status === "busy"
      ? `server busy — ${state.reason ?? ""}`
      : state.status + (state.reason ? ` — ${state.reason}` : "");
    this.statusEl.className = `status status-${state.status}`;
    this.retryButton.hidden = state.status !== "busy";

    this.transcriptEl.textContent = displayText(state.display);
    if (state.display.revision !== this.lastRevision &&
        state.display.lastDeleted.length > 0) {
      const flash = document.createElement("span");
      flash.className = "deleted";
      flash.textContent = state.display.lastDeleted.join("");
      this.transcriptEl.appendChild(flash);
      setTimeout(() => flash.remove(), HIGHLIGHT_MS);
    }
    this.lastRevision = state.display.revision;

    if (this.statsThrottle.offer()) {
      this.statsEl.textContent = formatStats(statsOf(state));
    }
  }
}
