// Wire messages shared with the WebSocket server: JSON text frames for
// control, binary frames for PCM16LE mono 16 kHz audio.

export interface OutputMessage {
  type: "output";
  delete: number;
  append: string[];
  audio_processed_s: number;
}

export interface ErrorMessage {
  type: "error";
  reason: string;
}

export type ServerMessage = OutputMessage | ErrorMessage;

export const BUSY_PREFIX = "server busy";

export function configMessage(sourceLang: string, targetLang: string, audioId: string): string {
  return JSON.stringify({
    type: "config",
    source_lang: sourceLang,
    target_lang: targetLang,
    audio_id: audioId,
  });
}

export const EOS_MESSAGE = JSON.stringify({ type: "eos" });

export function parseServerMessage(raw: string): ServerMessage {
  let msg: unknown;
  try {
    msg = JSON.parse(raw);
  } catch {
    throw new Error(`server sent invalid JSON: ${raw}`);
  }
  if (typeof msg !== "object" || msg === null || !("type" in msg)) {
    throw new Error(`server message missing type: ${raw}`);
  }
  const typed = msg as Record<string, unknown>;
  if (typed.type === "output") {
    return {
      type: "output",
      delete: Number(typed.delete ?? 0),
      append: Array.isArray(typed.append) ? typed.append.map(String) : [],
      audio_processed_s: Number(typed.audio_processed_s ?? 0),
    };
  }
  if (typed.type === "error") {
    return { type: "error", reason: String(typed.reason ?? "unknown error") };
  }
  throw new Error(`unexpected server message type: ${String(typed.type)}`);
}
