import { describe, expect, it } from "vitest";

import { displayText, foldOutputs } from "../src/displayFold.js";
import { SessionController, SocketLike, UiSessionState } from "../src/session.js";

/** Scripted server endpoint: records what the client sends, lets the test
 * push server frames. */
class FakeSocket implements SocketLike {
  binaryType = "blob";
  onopen: (() => void) | null = null;
  onmessage: ((event: { data: unknown }) => void) | null = null;
  onclose: ((event: { code: number; reason: string }) => void) | null = null;
  onerror: (() => void) | null = null;
  sentText: string[] = [];
  sentBinary: ArrayBuffer[] = [];
  closed = false;

  send(data: string | ArrayBuffer): void {
    if (typeof data === "string") {
      this.sentText.push(data);
    } else {
      this.sentBinary.push(data);
    }
  }

  close(): void {
    this.closed = true;
    this.onclose?.({ code: 1000, reason: "" });
  }

  // test-side controls
  open(): void {
    this.onopen?.();
  }

  serverSends(payload: unknown): void {
    this.onmessage?.({ data: JSON.stringify(payload) });
  }
}

function makeSession() {
  const socket = new FakeSocket();
  const updates: UiSessionState[] = [];
  const controller = new SessionController({
    url: "ws://test",
    sourceLang: "en",
    targetLang: "de",
    audioId: "demo",
    socketFactory: () => socket,
    onUpdate: (state) => updates.push(state),
  });
  return { socket, controller, updates };
}

describe("session controller", () => {
  it("sends config on open and goes live", () => {
    const { socket, controller } = makeSession();
    controller.start();
    expect(controller.state.status).toBe("connecting");
    socket.open();
    expect(controller.state.status).toBe("live");
    const config = JSON.parse(socket.sentText[0]);
    expect(config).toEqual({
      type: "config", source_lang: "en", target_lang: "de", audio_id: "demo",
    });
  });

  it("display equals the fold of every received output", () => {
    const { socket, controller } = makeSession();
    controller.start();
    socket.open();
    const scripted = [
      { type: "output", delete: 0, append: ["guten", " tag"], audio_processed_s: 1.0 },
      { type: "output", delete: 1, append: [" morgen", " welt"], audio_processed_s: 2.0 },
      { type: "output", delete: 0, append: ["!"], audio_processed_s: 3.0 },
      { type: "output", delete: 2, append: [" !"], audio_processed_s: 4.0 },
    ];
    for (const frame of scripted) {
      socket.serverSends(frame);
      // refresh fidelity at every step, not just at the end
      expect(controller.state.display.tokens)
        .toEqual(controller.replayDisplay().tokens);
    }
    expect(displayText(controller.state.display)).toBe("guten morgen !");
    expect(controller.state.display.tokens)
      .toEqual(foldOutputs(controller.outputLog).tokens);
    expect(controller.state.display.deletedTotal).toBe(3);
    expect(controller.state.audioProcessedS).toBe(4.0);
  });

  it("deleted spans are exposed for highlighting", () => {
    const { socket, controller } = makeSession();
    controller.start();
    socket.open();
    socket.serverSends({ type: "output", delete: 0, append: ["a", "b"], audio_processed_s: 1 });
    socket.serverSends({ type: "output", delete: 1, append: ["c"], audio_processed_s: 2 });
    expect(controller.state.display.lastDeleted).toEqual(["b"]);
  });

  it("no deletions means no highlight events (incremental mode)", () => {
    const { socket, controller, updates } = makeSession();
    controller.start();
    socket.open();
    for (let i = 0; i < 5; i++) {
      socket.serverSends({
        type: "output", delete: 0, append: [` tok${i}`], audio_processed_s: i,
      });
    }
    expect(updates.every((u) => u.display.lastDeleted.length === 0)).toBe(true);
    expect(controller.state.neEstimate).toBe(0);
  });

  it("a refusal surfaces the busy state and supports retry", () => {
    const { socket, controller } = makeSession();
    controller.start();
    socket.open();
    socket.serverSends({ type: "error", reason: "server busy: all processors are in use" });
    expect(controller.state.status).toBe("busy");
    expect(controller.state.reason).toContain("busy");
    socket.close();
    expect(controller.state.status).toBe("busy"); // close must not mask the refusal

    controller.start(); // retry reuses the factory
    socket.open();
    expect(controller.state.status).toBe("live");
  });

  it("other server errors become error state", () => {
    const { socket, controller } = makeSession();
    controller.start();
    socket.open();
    socket.serverSends({ type: "error", reason: "session rejected: unsupported language" });
    expect(controller.state.status).toBe("error");
    expect(controller.state.reason).toContain("language");
  });

  it("stop sends eos and the close completes the session", () => {
    const { socket, controller } = makeSession();
    controller.start();
    socket.open();
    controller.stop();
    expect(socket.sentText.at(-1)).toBe(JSON.stringify({ type: "eos" }));
    socket.close();
    expect(controller.state.status).toBe("done");
  });

  it("tracks the lag between sent and acknowledged audio", () => {
    const { socket, controller } = makeSession();
    controller.start();
    socket.open();
    controller.sendFrame(new Int16Array(16000)); // 1s
    controller.sendFrame(new Int16Array(16000)); // 2s total
    expect(controller.state.audioSentS).toBeCloseTo(2.0, 6);
    expect(controller.state.lagS).toBeCloseTo(2.0, 6);
    socket.serverSends({ type: "output", delete: 0, append: ["x"], audio_processed_s: 1.5 });
    expect(controller.state.lagS).toBeCloseTo(0.5, 6);
    expect(socket.sentBinary.length).toBe(2);
    expect(socket.sentBinary[0].byteLength).toBe(32000);
  });

  it("audio frames leave the socket as little-endian PCM16 bytes", () => {
    const { socket, controller } = makeSession();
    controller.start();
    socket.open();
    controller.sendFrame(Int16Array.from([1, -2, 32767, -32768]));
    const bytes = new Uint8Array(socket.sentBinary[0]);
    expect(Array.from(bytes)).toEqual([1, 0, 254, 255, 255, 127, 0, 128]);
  });
});
