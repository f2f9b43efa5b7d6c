// One streaming session against one server: a small state machine around a
// WebSocket, DOM-free so the whole lifecycle is unit-testable against a
// scripted socket.

import { DisplayState, applyOutput, emptyDisplay, foldOutputs } from "./displayFold.js";
import {
  BUSY_PREFIX,
  EOS_MESSAGE,
  OutputMessage,
  configMessage,
  parseServerMessage,
} from "./protocol.js";
import { TARGET_RATE } from "./pcm.js";

export type SessionStatus =
  | "idle"
  | "connecting"
  | "live"
  | "busy"       // refused: every server processor is in use
  | "error"
  | "done";

export interface UiSessionState {
  status: SessionStatus;
  display: DisplayState;
  audioSentS: number;
  audioProcessedS: number;
  /** seconds of audio sent but not yet acknowledged as processed */
  lagS: number;
  /** running flicker estimate: deleted / emitted so far */
  neEstimate: number;
  reason: string | null;
}

export interface SocketLike {
  binaryType: string;
  onopen: (() => void) | null;
  onmessage: ((event: { data: unknown }) => void) | null;
  onclose: ((event: { code: number; reason: string }) => void) | null;
  onerror: (() => void) | null;
  send(data: string | ArrayBuffer): void;
  close(): void;
}

export type SocketFactory = (url: string) => SocketLike;

export interface SessionOptions {
  url: string;
  sourceLang: string;
  targetLang: string;
  audioId: string;
  socketFactory?: SocketFactory;
  onUpdate?: (state: UiSessionState) => void;
}

export class SessionController {
  private readonly options: SessionOptions;
  private readonly socketFactory: SocketFactory;
  private socket: SocketLike | null = null;
  private display: DisplayState = emptyDisplay();
  private status: SessionStatus = "idle";
  private reason: string | null = null;
  private audioSentSamples = 0;
  private audioProcessedS = 0;
  /** every output ever received, for replay/refresh fidelity */
  readonly outputLog: OutputMessage[] = [];

  constructor(options: SessionOptions) {
    this.options = options;
    this.socketFactory =
      options.socketFactory ?? ((url) => new WebSocket(url) as unknown as SocketLike);
  }

  get state(): UiSessionState {
    const emitted = this.display.emittedTotal;
    return {
      status: this.status,
      display: this.display,
      audioSentS: this.audioSentSamples / TARGET_RATE,
      audioProcessedS: this.audioProcessedS,
      lagS: Math.max(0, this.audioSentSamples / TARGET_RATE - this.audioProcessedS),
      neEstimate: emitted > 0 ? this.display.deletedTotal / emitted : 0,
      reason: this.reason,
    };
  }

  /** Rebuild the display from the buffered outputs (refresh semantics). */
  replayDisplay(): DisplayState {
    return foldOutputs(this.outputLog);
  }

  start(): void {
    if (this.status === "connecting" || this.status === "live") {
      return;
    }
    this.display = emptyDisplay();
    this.outputLog.length = 0;
    this.audioSentSamples = 0;
    this.audioProcessedS = 0;
    this.reason = null;
    this.setStatus("connecting");
    const socket = this.socketFactory(this.options.url);
    socket.binaryType = "arraybuffer";
    socket.onopen = () => {
      socket.send(configMessage(
        this.options.sourceLang, this.options.targetLang, this.options.audioId));
      this.setStatus("live");
    };
    socket.onmessage = (event) => {
      if (typeof event.data !== "string") {
        return;
      }
      this.handleMessage(event.data);
    };
    socket.onclose = () => {
      if (this.status === "live") {
        this.setStatus("done");
      }
      this.socket = null;
    };
    socket.onerror = () => {
      if (this.status === "connecting" || this.status === "live") {
        this.fail("connection failed");
      }
    };
    this.socket = socket;
  }

  sendFrame(frame: Int16Array): void {
    if (this.status !== "live" || this.socket === null || frame.length === 0) {
      return;
    }
    const bytes = new Uint8Array(frame.buffer, frame.byteOffset, frame.byteLength);
    this.socket.send(bytes.slice().buffer);
    this.audioSentSamples += frame.length;
    this.notify();
  }

  /** Signal end of stream; the server flushes, finalizes, and closes. */
  stop(): void {
    if (this.status === "live" && this.socket !== null) {
      this.socket.send(EOS_MESSAGE);
    } else if (this.socket !== null) {
      this.socket.close();
    }
  }

  private handleMessage(raw: string): void {
    let message;
    try {
      message = parseServerMessage(raw);
    } catch (error) {
      this.fail(String(error));
      return;
    }
    if (message.type === "error") {
      if (message.reason.startsWith(BUSY_PREFIX)) {
        this.reason = message.reason;
        this.setStatus("busy");
      } else {
        this.fail(message.reason);
      }
      return;
    }
    try {
      this.display = applyOutput(this.display, message);
    } catch (error) {
      this.fail(String(error));
      return;
    }
    this.outputLog.push(message);
    this.audioProcessedS = Math.max(this.audioProcessedS, message.audio_processed_s);
    this.notify();
  }

  private fail(reason: string): void {
    this.reason = reason;
    this.setStatus("error");
    if (this.socket !== null) {
      this.socket.close();
    }
  }

  private setStatus(status: SessionStatus): void {
    this.status = status;
    this.notify();
  }

  private notify(): void {
    this.options.onUpdate?.(this.state);
  }
}
