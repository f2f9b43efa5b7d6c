// The live display is a pure fold over the outputs the server sent. Keeping
// it pure is what makes the view reproducible: replaying the buffered
// outputs from scratch must land on the identical display.

import { OutputMessage } from "./protocol.js";

export interface DisplayState {
  readonly tokens: readonly string[];
  readonly emittedTotal: number;
  readonly deletedTotal: number;
  /** tokens removed by the most recent output, for flicker highlighting */
  readonly lastDeleted: readonly string[];
  /** bumps on every applied output so views can detect fresh deletions */
  readonly revision: number;
}

export function emptyDisplay(): DisplayState {
  return { tokens: [], emittedTotal: 0, deletedTotal: 0, lastDeleted: [], revision: 0 };
}

export function applyOutput(state: DisplayState, out: OutputMessage): DisplayState {
  if (out.delete < 0 || out.delete > state.tokens.length) {
    throw new RangeError(
      `output deletes ${out.delete} tokens but only ${state.tokens.length} are displayed`);
  }
  const keep = state.tokens.length - out.delete;
  return {
    tokens: [...state.tokens.slice(0, keep), ...out.append],
    emittedTotal: state.emittedTotal + out.append.length,
    deletedTotal: state.deletedTotal + out.delete,
    lastDeleted: state.tokens.slice(keep),
    revision: state.revision + 1,
  };
}

export function foldOutputs(outputs: readonly OutputMessage[]): DisplayState {
  return outputs.reduce(applyOutput, emptyDisplay());
}

export function displayText(state: DisplayState): string {
  return state.tokens.join("");
}
