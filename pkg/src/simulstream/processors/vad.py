"""Energy-based voice activity detection wrapper.

Splits the incoming stream into fixed-length analysis frames, scores each
frame by normalized RMS energy, and forwards only speech audio to the
wrapped processor, in chunks of the inner processor's preferred size. A
hangover keeps a few trailing frames after speech so word endings survive.

The wrapper maintains a monotone map from filtered-stream seconds to
original-stream seconds; callers log audio progress against the original
stream, so latency measured from the logs stays truthful even though the
inner processor never sees the silence.
"""

from dataclasses import dataclass

import numpy as np

from simulstream.protocol import AudioChunk, IncrementalOutput
from simulstream.processors.base import SpeechProcessor

SAMPLE_RATE = 16000

# full-scale RMS at which the speech score saturates to 1
RMS_CALIBRATION = 0.05


@dataclass(frozen=True)
class VadConfig:
    threshold: float
    frame_ms: float = 30.0
    hangover_frames: int = 0

    def __post_init__(self):
        if not (0.0 <= self.threshold <= 1.0):
            raise ValueError("threshold must be in [0, 1]")
        if self.frame_ms <= 0:
            raise ValueError("frame_ms must be > 0")
        if self.hangover_frames < 0:
            raise ValueError("hangover_frames must be >= 0")


def speech_score(frame: np.ndarray) -> float:
    """Normalized speech score in [0, 1]: min(1, rms / calibration)."""
    if len(frame) == 0:
        return 0.0
    rms = float(np.sqrt(np.mean(np.square(frame))))
    return min(1.0, rms / RMS_CALIBRATION)


class VadProcessor(SpeechProcessor):
    """Forwards speech-only audio to an inner processor, remapping time."""

    def __init__(self, inner: SpeechProcessor, config: VadConfig):
        self.inner = inner
        self.config = config
        self.preferred_chunk_s = inner.preferred_chunk_s
        self._frame_samples = max(1, round(config.frame_ms / 1000 * SAMPLE_RATE))
        self._inner_chunk_samples = max(1, round(inner.preferred_chunk_s * SAMPLE_RATE))
        self.clear_state()

    def load(self) -> None:
        self.inner.load()

    def set_languages(self, source_lang: str, target_lang: str) -> None:
        self.inner.set_languages(source_lang, target_lang)

    def clear_state(self) -> None:
        self.inner.clear_state()
        self._analysis: list[np.ndarray] = []
        self._analysis_count = 0
        self._original_pos = 0          # original samples fully analyzed
        self._hangover_left = 0
        self._forward: list[np.ndarray] = []
        self._forward_count = 0
        self._forwarded_total = 0       # filtered samples handed to inner
        # (filtered_start, original_start, length) runs, in samples
        self._time_map: list[tuple[int, int, int]] = []

    @property
    def forwarded_s(self) -> float:
        """Seconds of (filtered) audio handed to the inner processor so far."""
        return self._forwarded_total / SAMPLE_RATE

    def map_filtered_to_original_s(self, filtered_s: float) -> float:
        """Original-stream position of a filtered-stream position.

        Monotone, defined on [0, forwarded + pending filtered audio].
        """
        target = filtered_s * SAMPLE_RATE
        if not self._time_map:
            return 0.0
        for f_start, o_start, length in self._time_map:
            if target <= f_start + length:
                return (o_start + max(0.0, target - f_start)) / SAMPLE_RATE
        f_start, o_start, length = self._time_map[-1]
        return (o_start + length) / SAMPLE_RATE

    def process_chunk(self, chunk: AudioChunk) -> list[IncrementalOutput]:
        samples = np.asarray(chunk.samples, dtype=np.float64)
        if len(samples):
            self._analysis.append(samples)
            self._analysis_count += len(samples)
        outputs = []
        while self._analysis_count >= self._frame_samples:
            frame = self._take_analysis(self._frame_samples)
            self._score_frame(frame)
        outputs.extend(self._drain_forward(final=False))
        return outputs

    def finalize(self) -> list[IncrementalOutput]:
        if self._analysis_count:
            frame = self._take_analysis(self._analysis_count)
            self._score_frame(frame)
        outputs = self._drain_forward(final=True)
        outputs.extend(self.inner.finalize())
        return outputs

    def close(self) -> None:
        self.inner.close()

    def _take_analysis(self, count: int) -> np.ndarray:
        buf = np.concatenate(self._analysis) if self._analysis else np.zeros(0)
        frame, rest = buf[:count], buf[count:]
        self._analysis = [rest] if len(rest) else []
        self._analysis_count = len(rest)
        return frame

    def _score_frame(self, frame: np.ndarray) -> None:
        is_speech = speech_score(frame) >= self.config.threshold
        if is_speech:
            self._hangover_left = self.config.hangover_frames
            keep = True
        elif self._hangover_left > 0:
            self._hangover_left -= 1
            keep = True
        else:
            keep = False
        if keep:
            filtered_start = self._forwarded_total + self._forward_count
            if self._time_map and self._time_map[-1][1] + self._time_map[-1][2] == self._original_pos:
                f_start, o_start, length = self._time_map[-1]
                self._time_map[-1] = (f_start, o_start, length + len(frame))
            else:
                self._time_map.append((filtered_start, self._original_pos, len(frame)))
            self._forward.append(frame)
            self._forward_count += len(frame)
        self._original_pos += len(frame)

    def _drain_forward(self, final: bool) -> list[IncrementalOutput]:
        outputs: list[IncrementalOutput] = []
        while self._forward_count >= self._inner_chunk_samples:
            piece = self._take_forward(self._inner_chunk_samples)
            outputs.extend(self._feed_inner(piece))
        if final and self._forward_count:
            piece = self._take_forward(self._forward_count)
            outputs.extend(self._feed_inner(piece))
        return outputs

    def _take_forward(self, count: int) -> np.ndarray:
        buf = np.concatenate(self._forward) if self._forward else np.zeros(0)
        piece, rest = buf[:count], buf[count:]
        self._forward = [rest] if len(rest) else []
        self._forward_count = len(rest)
        return piece

    def _feed_inner(self, piece: np.ndarray) -> list[IncrementalOutput]:
        offset_s = self._forwarded_total / SAMPLE_RATE
        self._forwarded_total += len(piece)
        return self.inner.process_chunk(AudioChunk(samples=piece, stream_offset_s=offset_s))
