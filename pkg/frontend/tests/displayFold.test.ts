import { describe, expect, it } from "vitest";

import { applyOutput, displayText, emptyDisplay, foldOutputs } from "../src/displayFold.js";
import { OutputMessage } from "../src/protocol.js";

function out(del: number, append: string[], at = 0): OutputMessage {
  return { type: "output", delete: del, append, audio_processed_s: at };
}

describe("display fold", () => {
  it("appends and deletes from the tail", () => {
    let state = emptyDisplay();
    state = applyOutput(state, out(0, ["Hello", " world"]));
    expect(displayText(state)).toBe("Hello world");
    state = applyOutput(state, out(1, [" there"]));
    expect(displayText(state)).toBe("Hello there");
    expect(state.emittedTotal).toBe(3);
    expect(state.deletedTotal).toBe(1);
  });

  it("records the deleted span for highlighting", () => {
    let state = applyOutput(emptyDisplay(), out(0, ["a", "b", "c"]));
    expect(state.lastDeleted).toEqual([]);
    state = applyOutput(state, out(2, ["X"]));
    expect(state.lastDeleted).toEqual(["b", "c"]);
    expect(state.revision).toBe(2);
    state = applyOutput(state, out(0, ["y"]));
    expect(state.lastDeleted).toEqual([]);
  });

  it("is a pure fold: replay equals incremental application", () => {
    const outputs = [
      out(0, ["the", " cat"]),
      out(1, [" dog", " runs"]),
      out(0, [" fast"]),
      out(3, [" slept"]),
    ];
    let incremental = emptyDisplay();
    for (const o of outputs) {
      incremental = applyOutput(incremental, o);
    }
    const replayed = foldOutputs(outputs);
    expect(replayed.tokens).toEqual(incremental.tokens);
    expect(replayed.emittedTotal).toBe(incremental.emittedTotal);
    expect(replayed.deletedTotal).toBe(incremental.deletedTotal);
    expect(displayText(replayed)).toBe("the slept");
  });

  it("rejects deleting beyond the display", () => {
    expect(() => applyOutput(emptyDisplay(), out(1, []))).toThrow(RangeError);
  });

  it("keeps counters non-negative", () => {
    const state = foldOutputs([out(0, ["a"]), out(1, []), out(0, ["b"])]);
    expect(state.emittedTotal).toBe(2);
    expect(state.deletedTotal).toBe(1);
    expect(state.tokens).toEqual(["b"]);
  });
});
