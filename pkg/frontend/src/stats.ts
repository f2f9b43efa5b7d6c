// Session statistics view model plus a render throttle: the stats block
// refreshes at most 10 times per second no matter how fast outputs arrive.

import { UiSessionState } from "./session.js";

export interface StatsView {
  status: string;
  emitted: number;
  deleted: number;
  neEstimate: number;
  lagS: number;
}

export function statsOf(state: UiSessionState | null): StatsView {
  if (state === null) {
    return { status: "no session", emitted: 0, deleted: 0, neEstimate: 0, lagS: 0 };
  }
  return {
    status: state.status,
    emitted: state.display.emittedTotal,
    deleted: state.display.deletedTotal,
    neEstimate: state.neEstimate,
    lagS: state.lagS,
  };
}

export function formatStats(view: StatsView): string {
  return `${view.status} | emitted ${view.emitted} | deleted ${view.deleted}` +
    ` | NE ${view.neEstimate.toFixed(3)} | lag ${view.lagS.toFixed(1)}s`;
}

export class RenderThrottle {
  private last = Number.NEGATIVE_INFINITY;

  constructor(private readonly intervalMs: number = 100,
              private readonly clock: () => number = () => Date.now()) {}

  /** True when enough time has passed for another render. */
  offer(): boolean {
    const now = this.clock();
    if (now - this.last >= this.intervalMs) {
      this.last = now;
      return true;
    }
    return false;
  }
}
