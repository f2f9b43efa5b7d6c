// Audio conversion helpers: whatever the capture source produces must leave
// the socket as PCM16LE mono 16 kHz, bit-identical to what the server-side
// WAV tooling would accept.

export const TARGET_RATE = 16000;
export const FRAME_SAMPLES = 1600; // 100 ms at 16 kHz

export function resampleLinear(input: Float32Array, fromRate: number,
                               toRate: number = TARGET_RATE): Float32Array {
  if (fromRate === toRate || input.length === 0) {
    return input;
  }
  const ratio = fromRate / toRate;
  const outLength = Math.floor(input.length / ratio);
  const out = new Float32Array(outLength);
  for (let i = 0; i < outLength; i++) {
    const position = i * ratio;
    const left = Math.floor(position);
    const right = Math.min(left + 1, input.length - 1);
    const frac = position - left;
    out[i] = input[left] * (1 - frac) + input[right] * frac;
  }
  return out;
}

export function floatToPcm16(samples: Float32Array): Int16Array {
  const out = new Int16Array(samples.length);
  for (let i = 0; i < samples.length; i++) {
    const clamped = Math.max(-1, Math.min(1, samples[i]));
    const scaled = Math.round(clamped * 32767);
    out[i] = Math.max(-32768, Math.min(32767, scaled));
  }
  return out;
}

export function mixToMono(channels: Float32Array[]): Float32Array {
  if (channels.length === 1) {
    return channels[0];
  }
  const length = channels[0].length;
  const out = new Float32Array(length);
  for (let i = 0; i < length; i++) {
    let sum = 0;
    for (const channel of channels) {
      sum += channel[i];
    }
    out[i] = sum / channels.length;
  }
  return out;
}

/** Split into 100 ms frames; the trailing frame may be shorter. */
export function framesOf(samples: Int16Array,
                         frameSamples: number = FRAME_SAMPLES): Int16Array[] {
  const frames: Int16Array[] = [];
  for (let start = 0; start < samples.length; start += frameSamples) {
    frames.push(samples.slice(start, start + frameSamples));
  }
  return frames;
}
