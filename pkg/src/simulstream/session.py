"""Per-session audio pump: chunking, timing, and metric-record bookkeeping.

The pump owns the contract every transport must honor: audio accumulates in
a pending buffer; the processor is invoked on exact ``preferred_chunk_s``
slices (plus one final short chunk at end of stream); every invocation
appends one metric record whose ``audio_processed_s`` counts the ORIGINAL
stream handed to the processor stack, and whose ``computation_s`` is wall
clock around the processor call only. The WebSocket server and the direct
runner both drive their sessions through this class, so their logs can only
differ in computation times.
"""

import time
from typing import Callable

import numpy as np

from simulstream.processors.base import ProcessorError, SpeechProcessor
from simulstream.protocol import (
    AudioChunk,
    IncrementalOutput,
    MetricLogRecord,
    merge_outputs,
)

SAMPLE_RATE = 16000

OutputEvent = tuple[IncrementalOutput, float]  # output + audio_processed_s


class SessionPump:
    """Drives one processor through one audio stream."""

    def __init__(self, processor: SpeechProcessor, audio_id: str,
                 record_sink: Callable[[MetricLogRecord], None] | None = None,
                 clock: Callable[[], float] = time.perf_counter):
        self.processor = processor
        self.audio_id = audio_id
        self._record_sink = record_sink
        self._clock = clock
        self._chunk_samples = max(1, round(processor.preferred_chunk_s * SAMPLE_RATE))
        self._pending: list[np.ndarray] = []
        self._pending_count = 0
        self._fed_samples = 0
        self._step = 0
        self.display_length = 0
        self.finished = False

    @property
    def audio_fed_s(self) -> float:
        """Original-stream seconds handed to the processor so far."""
        return self._fed_samples / SAMPLE_RATE

    def feed(self, samples: np.ndarray) -> list[OutputEvent]:
        """Buffer incoming audio; run the processor on every full chunk."""
        if self.finished:
            raise ProcessorError("session already finished")
        samples = np.asarray(samples, dtype=np.float64)
        if len(samples):
            self._pending.append(samples)
            self._pending_count += len(samples)
        events: list[OutputEvent] = []
        while self._pending_count >= self._chunk_samples:
            events.extend(self._run_step(self._take(self._chunk_samples)))
        return events

    def finish(self) -> list[OutputEvent]:
        """Flush any short trailing chunk, then finalize the processor."""
        if self.finished:
            return []
        self.finished = True
        events: list[OutputEvent] = []
        if self._pending_count:
            events.extend(self._run_step(self._take(self._pending_count)))
        started = self._clock()
        outputs = self.processor.finalize()
        elapsed = self._clock() - started
        if outputs:
            events.extend(self._commit_step(outputs, elapsed))
        return events

    def _take(self, count: int) -> np.ndarray:
        buf = np.concatenate(self._pending) if self._pending else np.zeros(0)
        piece, rest = buf[:count], buf[count:]
        self._pending = [rest] if len(rest) else []
        self._pending_count = len(rest)
        return piece

    def _run_step(self, piece: np.ndarray) -> list[OutputEvent]:
        chunk = AudioChunk(samples=piece, stream_offset_s=self.audio_fed_s)
        self._fed_samples += len(piece)
        started = self._clock()
        outputs = self.processor.process_chunk(chunk)
        elapsed = self._clock() - started
        return self._commit_step(outputs, elapsed)

    def _commit_step(self, outputs: list[IncrementalOutput], elapsed: float) -> list[OutputEvent]:
        audio_processed_s = self.audio_fed_s
        for out in outputs:
            if out.delete_count > self.display_length:
                raise ProcessorError(
                    f"processor deleted {out.delete_count} tokens with only "
                    f"{self.display_length} displayed")
            self.display_length += len(out.append_tokens) - out.delete_count
        self._step += 1
        if self._record_sink is not None:
            merged = merge_outputs(outputs)
            self._record_sink(MetricLogRecord(
                audio_id=self.audio_id,
                step=self._step,
                audio_processed_s=audio_processed_s,
                computation_s=max(0.0, elapsed),
                delete_count=merged.delete_count,
                append_tokens=merged.append_tokens,
            ))
        return [(out, audio_processed_s) for out in outputs]
