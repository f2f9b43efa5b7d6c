// Minimal RIFF/WAVE reader for the file-upload path. Only uncompressed PCM16
// is accepted; other rates and channel counts are converted after decoding.

export interface WavData {
  sampleRate: number;
  channels: Float32Array[];
}

export class WavParseError extends Error {}

export function parseWav(buffer: ArrayBuffer): WavData {
  const view = new DataView(buffer);
  if (buffer.byteLength < 12 || tag(view, 0) !== "RIFF" || tag(view, 8) !== "WAVE") {
    throw new WavParseError("not a RIFF/WAVE file");
  }
  let offset = 12;
  let format: { channels: number; sampleRate: number; bitsPerSample: number } | null = null;
  let data: DataView | null = null;
  while (offset + 8 <= buffer.byteLength) {
    const chunkId = tag(view, offset);
    const chunkSize = view.getUint32(offset + 4, true);
    const body = offset + 8;
    if (chunkId === "fmt ") {
      const audioFormat = view.getUint16(body, true);
      if (audioFormat !== 1) {
        throw new WavParseError(`compressed WAV (format ${audioFormat}) not supported`);
      }
      format = {
        channels: view.getUint16(body + 2, true),
        sampleRate: view.getUint32(body + 4, true),
        bitsPerSample: view.getUint16(body + 14, true),
      };
    } else if (chunkId === "data") {
      data = new DataView(buffer, body, Math.min(chunkSize, buffer.byteLength - body));
    }
    offset = body + chunkSize + (chunkSize % 2);
  }
  if (!format || !data) {
    throw new WavParseError("missing fmt or data chunk");
  }
  if (format.bitsPerSample !== 16) {
    throw new WavParseError(`${format.bitsPerSample}-bit WAV not supported, need 16-bit PCM`);
  }
  const frameCount = Math.floor(data.byteLength / (2 * format.channels));
  const channels = Array.from({ length: format.channels },
                              () => new Float32Array(frameCount));
  for (let frame = 0; frame < frameCount; frame++) {
    for (let ch = 0; ch < format.channels; ch++) {
      const sample = data.getInt16((frame * format.channels + ch) * 2, true);
      channels[ch][frame] = sample / 32768;
    }
  }
  return { sampleRate: format.sampleRate, channels };
}

function tag(view: DataView, offset: number): string {
  return String.fromCharCode(
    view.getUint8(offset), view.getUint8(offset + 1),
    view.getUint8(offset + 2), view.getUint8(offset + 3));
}
