"""Attention-guided incremental (append-only) processor.

Every ``chunk_s`` seconds the full retained audio history is re-decoded
with the retained text history as a forced prefix. A candidate token is
emitted only while the argmax frame of its attention row stays at least
``cutoff_frames`` away from the end of the received audio; the first token
that attends too close to the frontier stops emission for this step. No
token is ever deleted.

Long-form streams stay bounded through history pruning: once the emitted
text exceeds ``max_history_words`` words, the oldest words are dropped and
the audio buffer is trimmed to the attention frame recorded when the first
retained word was emitted.
"""

from dataclasses import dataclass

import numpy as np

from simulstream.protocol import AudioChunk, IncrementalOutput
from simulstream.processors.base import ProcessorError, SpeechProcessor
from simulstream.processors.generators import Generator

SAMPLE_RATE = 16000


@dataclass(frozen=True)
class StreamAttConfig:
    cutoff_frames: int
    chunk_s: float = 1.0
    max_history_words: int = 40

    def __post_init__(self):
        if self.cutoff_frames < 0:
            raise ValueError("cutoff_frames must be >= 0")
        if self.chunk_s <= 0:
            raise ValueError("chunk_s must be > 0")
        if self.max_history_words < 1:
            raise ValueError("max_history_words must be >= 1")


class StreamAttProcessor(SpeechProcessor):
    """Incremental processor applying the attention-frontier emission rule."""

    def __init__(self, generator: Generator, config: StreamAttConfig):
        if not getattr(generator, "provides_attention", False):
            raise ProcessorError("attention policy requires a generator that returns attention")
        self.generator = generator
        self.config = config
        self.preferred_chunk_s = config.chunk_s
        self._chunk_samples = round(config.chunk_s * SAMPLE_RATE)
        self._source_lang = ""
        self._target_lang = ""
        self.clear_state()

    def load(self) -> None:
        self.generator.load()

    def set_languages(self, source_lang: str, target_lang: str) -> None:
        self._source_lang = source_lang
        self._target_lang = target_lang

    def clear_state(self) -> None:
        self._buffer = np.zeros(0)
        self._buffer_start_sample = 0
        self._pending: list[np.ndarray] = []
        self._pending_count = 0
        # retained emitted tokens with the absolute time of their attention peak
        self._history_tokens: list[str] = []
        self._history_align_s: list[float] = []

    @property
    def history_tokens(self) -> list[str]:
        return list(self._history_tokens)

    @property
    def buffer_start_s(self) -> float:
        return self._buffer_start_sample / SAMPLE_RATE

    @property
    def buffer_duration_s(self) -> float:
        return len(self._buffer) / SAMPLE_RATE

    def process_chunk(self, chunk: AudioChunk) -> list[IncrementalOutput]:
        samples = np.asarray(chunk.samples, dtype=np.float64)
        if len(samples):
            self._pending.append(samples)
            self._pending_count += len(samples)
        outputs = []
        while self._pending_count >= self._chunk_samples:
            piece = self._take_pending(self._chunk_samples)
            out = self._step(piece, emit_all=False)
            if out is not None:
                outputs.append(out)
        return outputs

    def finalize(self) -> list[IncrementalOutput]:
        piece = self._take_pending(self._pending_count) if self._pending_count else np.zeros(0)
        if len(self._buffer) == 0 and len(piece) == 0:
            return []
        # no further audio will arrive, so the frontier rule has nothing
        # left to protect: emit every remaining candidate
        out = self._step(piece, emit_all=True)
        return [out] if out is not None else []

    def close(self) -> None:
        self.generator.close()

    def _take_pending(self, count: int) -> np.ndarray:
        buf = np.concatenate(self._pending) if self._pending else np.zeros(0)
        piece, rest = buf[:count], buf[count:]
        self._pending = [rest] if len(rest) else []
        self._pending_count = len(rest)
        return piece

    def _step(self, new_samples: np.ndarray, emit_all: bool) -> IncrementalOutput | None:
        if len(new_samples):
            self._buffer = np.concatenate([self._buffer, new_samples]) if len(self._buffer) else new_samples
        result = self.generator.generate(
            self._buffer, self.buffer_start_s,
            self._source_lang, self._target_lang,
            forced_prefix=list(self._history_tokens))
        if result.attention is None:
            raise ProcessorError("generator returned no attention; cannot apply emission policy")

        frame_count = result.frame_count
        latest_allowed = frame_count - 1 - self.config.cutoff_frames
        emitted: list[str] = []
        for i, token in enumerate(result.tokens):
            peak = int(np.argmax(result.attention[i]))
            if not emit_all and peak > latest_allowed:
                break
            self._history_tokens.append(token)
            self._history_align_s.append(self.buffer_start_s + peak * result.frame_duration_s)
            emitted.append(token)

        self._prune_history()
        if not emitted:
            return None
        return IncrementalOutput(delete_count=0, append_tokens=tuple(emitted))

    def _prune_history(self) -> None:
        words = _word_token_spans(self._history_tokens)
        excess = len(words) - self.config.max_history_words
        if excess <= 0:
            return
        first_kept_token = words[excess][0]
        trim_time_s = min(self._history_align_s[first_kept_token:words[excess][1] + 1])
        del self._history_tokens[:first_kept_token]
        del self._history_align_s[:first_kept_token]
        trim_sample = round(trim_time_s * SAMPLE_RATE)
        if trim_sample > self._buffer_start_sample:
            drop = trim_sample - self._buffer_start_sample
            self._buffer = self._buffer[drop:]
            self._buffer_start_sample = trim_sample


def _word_token_spans(tokens: list[str]) -> list[tuple[int, int]]:
    """(first_token_idx, last_token_idx) per whitespace-separated word of the
    concatenated token text."""
    spans: list[tuple[int, int]] = []
    in_word = False
    for idx, token in enumerate(tokens):
        for ch in token:
            if ch.isspace():
                in_word = False
            elif in_word:
                if spans[-1][1] != idx:
                    spans[-1] = (spans[-1][0], idx)
            else:
                spans.append((idx, idx))
                in_word = True
    return spans
