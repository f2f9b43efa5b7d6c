// Standalone audio worklet: downsamples the capture stream to 16 kHz mono
// PCM16 and posts ~100 ms buffers to the main thread. Compiled separately;
// worklet files cannot import modules.

declare const sampleRate: number;
declare function registerProcessor(name: string, ctor: unknown): void;
declare class AudioWorkletProcessor {
  readonly port: MessagePort;
}

const TARGET_RATE = 16000;
const POST_EVERY = 1600; // samples, 100 ms at 16 kHz

class PcmCaptureProcessor extends AudioWorkletProcessor {
  private buffered: number[] = [];
  private position = 0;

  process(inputs: Float32Array[][]): boolean {
    const input = inputs[0] && inputs[0][0];
    if (!input) {
      return true;
    }
    const ratio = sampleRate / TARGET_RATE;
    while (this.position < input.length) {
      const left = Math.floor(this.position);
      const right = Math.min(left + 1, input.length - 1);
      const frac = this.position - left;
      const sample = input[left] * (1 - frac) + input[right] * frac;
      const clamped = Math.max(-1, Math.min(1, sample));
      this.buffered.push(Math.max(-32768, Math.min(32767, Math.round(clamped * 32767))));
      this.position += ratio;
    }
    this.position -= input.length;
    while (this.buffered.length >= POST_EVERY) {
      const frame = Int16Array.from(this.buffered.slice(0, POST_EVERY));
      this.buffered = this.buffered.slice(POST_EVERY);
      this.port.postMessage(frame, [frame.buffer]);
    }
    return true;
  }
}

registerProcessor("pcm-capture", PcmCaptureProcessor);
