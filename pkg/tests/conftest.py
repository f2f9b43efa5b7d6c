import asyncio
import inspect

import numpy as np
import pytest

from simulstream.protocol import AudioChunk
from simulstream.processors import Generator, GeneratorOutput, SpeechProcessor

SAMPLE_RATE = 16000


def pytest_pyfunc_call(pyfuncitem):
    """Run ``async def`` tests on a fresh event loop."""
    func = pyfuncitem.obj
    if inspect.iscoroutinefunction(func):
        kwargs = {name: pyfuncitem.funcargs[name]
                  for name in pyfuncitem._fixtureinfo.argnames}
        asyncio.run(func(**kwargs))
        return True
    return None


class SequenceGenerator(Generator):
    """Returns preset hypotheses, one per generate() call."""

    provides_attention = False

    def __init__(self, hypotheses):
        self.hypotheses = list(hypotheses)
        self.calls = 0

    def generate(self, samples, window_start_s, source_lang, target_lang, forced_prefix):
        tokens = self.hypotheses[min(self.calls, len(self.hypotheses) - 1)]
        self.calls += 1
        return GeneratorOutput(tokens=tuple(tokens))


class AttentionGenerator(Generator):
    """Returns preset (tokens, argmax_cols, frame_count) per call as one-hot rows."""

    provides_attention = True

    def __init__(self, steps, frame_duration_s=0.04):
        self.steps = list(steps)
        self.frame_duration_s = frame_duration_s
        self.calls = 0

    def generate(self, samples, window_start_s, source_lang, target_lang, forced_prefix):
        tokens, cols, frame_count = self.steps[min(self.calls, len(self.steps) - 1)]
        self.calls += 1
        attention = np.zeros((len(tokens), frame_count))
        for row, col in enumerate(cols):
            attention[row, col] = 1.0
        return GeneratorOutput(tokens=tuple(tokens), attention=attention,
                               frame_duration_s=self.frame_duration_s)


class RecordingProcessor(SpeechProcessor):
    """Inner-processor double that records every chunk it is fed."""

    def __init__(self, preferred_chunk_s=1.0):
        self.preferred_chunk_s = preferred_chunk_s
        self.chunks: list[AudioChunk] = []
        self.finalized = 0
        self.cleared = 0
        self.languages = None

    def set_languages(self, source_lang, target_lang):
        self.languages = (source_lang, target_lang)

    def clear_state(self):
        self.chunks = []
        self.finalized = 0
        self.cleared += 1

    def process_chunk(self, chunk):
        self.chunks.append(chunk)
        return []

    def finalize(self):
        self.finalized += 1
        return []

    @property
    def received_samples(self):
        return sum(len(c.samples) for c in self.chunks)


def chunk_stream(samples, chunk_s, offset_s=0.0):
    """Slice samples into AudioChunks of chunk_s (last one may be shorter)."""
    samples = np.asarray(samples, dtype=np.float64)
    step = round(chunk_s * SAMPLE_RATE)
    chunks = []
    for start in range(0, len(samples), step):
        piece = samples[start:start + step]
        chunks.append(AudioChunk(samples=piece,
                                 stream_offset_s=offset_s + start / SAMPLE_RATE))
    return chunks


def apply_outputs(display, outputs):
    """Fold IncrementalOutputs into a token list, asserting validity."""
    for out in outputs:
        assert out.delete_count <= len(display), "deleted beyond display"
        if out.delete_count:
            del display[len(display) - out.delete_count:]
        display.extend(out.append_tokens)
    return display


@pytest.fixture
def silence():
    def make(duration_s):
        return np.zeros(round(duration_s * SAMPLE_RATE))
    return make
