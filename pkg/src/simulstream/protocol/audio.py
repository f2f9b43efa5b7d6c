"""Audio chunk representation and the PCM16 wire codec.

All audio in the system is mono float PCM in [-1.0, 1.0] at 16 kHz. On the
wire it travels as little-endian signed 16-bit integers.
"""

from dataclasses import dataclass

import numpy as np

SAMPLE_RATE = 16000
PCM_SCALE = 32767


@dataclass(frozen=True)
class AudioChunk:
    """A span of mono 16 kHz audio with its position in the stream.

    ``stream_offset_s`` is the amount of stream audio that precedes this
    chunk, so consecutive chunks of a session have non-decreasing offsets.
    """

    samples: np.ndarray
    sample_rate_hz: int = SAMPLE_RATE
    stream_offset_s: float = 0.0

    def __post_init__(self):
        samples = np.asarray(self.samples, dtype=np.float64)
        object.__setattr__(self, "samples", samples)
        if self.sample_rate_hz != SAMPLE_RATE:
            raise ValueError(f"unsupported sample rate {self.sample_rate_hz}, expected {SAMPLE_RATE}")
        if self.stream_offset_s < 0:
            raise ValueError("stream_offset_s must be >= 0")

    @property
    def duration_s(self) -> float:
        return len(self.samples) / self.sample_rate_hz

    @property
    def end_offset_s(self) -> float:
        return self.stream_offset_s + self.duration_s


def encode_audio_frame(chunk: AudioChunk) -> bytes:
    """Encode a chunk as little-endian signed 16-bit mono PCM.

    Each float f maps to round(f * 32767); out-of-range values are clamped
    to the int16 range rather than rejected, so dithered inputs survive.
    """
    scaled = np.rint(chunk.samples * PCM_SCALE)
    clamped = np.clip(scaled, -32768, 32767).astype("<i2")
    return clamped.tobytes()


def decode_audio_frame(data: bytes, stream_offset_s: float = 0.0) -> AudioChunk:
    """Decode a PCM16LE frame back to floats.

    Inverse of :func:`encode_audio_frame` up to quantization: lattice values
    round-trip exactly and |f - decode(encode(f))| <= 1/32767.
    """
    if len(data) % 2 != 0:
        raise ValueError(f"PCM16 frame has odd byte length {len(data)}")
    ints = np.frombuffer(data, dtype="<i2")
    samples = ints.astype(np.float64) / PCM_SCALE
    return AudioChunk(samples=samples, stream_offset_s=stream_offset_s)
