"""External-process bridge: port any existing system over a pipe protocol.

The bridge owns a child process and speaks line-delimited JSON over its
stdin/stdout. One request line per generation:

    {"audio_b64": <PCM16LE of the window>, "window_start_s": x,
     "source_lang": ..., "target_lang": ..., "forced_prefix": [...]}

and one response line:

    {"tokens": [...], "attention": [[...], ...] | null,
     "frame_duration_s": x}

``attention`` and ``frame_duration_s`` are optional. Any malformed
response, child exit, or timeout is fatal for the session.
"""

import base64
import json
import selectors
import shlex
import subprocess
from dataclasses import dataclass

import numpy as np

from simulstream.protocol import AudioChunk, IncrementalOutput
from simulstream.protocol.audio import encode_audio_frame
from simulstream.processors.base import ProcessorError, SpeechProcessor
from simulstream.processors.generators import (
    DEFAULT_FRAME_DURATION_S,
    Generator,
    GeneratorOutput,
)

SAMPLE_RATE = 16000


@dataclass(frozen=True)
class BridgeConfig:
    command: str
    timeout_s: float = 30.0
    provides_attention: bool = False


class BridgeGenerator(Generator):
    """Generator backed by a child process speaking the line protocol."""

    def __init__(self, config: BridgeConfig):
        self.config = config
        self.provides_attention = config.provides_attention
        self._child: subprocess.Popen | None = None

    def load(self) -> None:
        if self._child is not None:
            return
        try:
            self._child = subprocess.Popen(
                shlex.split(self.config.command),
                stdin=subprocess.PIPE,
                stdout=subprocess.PIPE,
                text=True,
                bufsize=1,
            )
        except OSError as exc:
            raise ProcessorError(f"failed to start bridge child: {exc}") from exc

    def generate(self, samples: np.ndarray, window_start_s: float,
                 source_lang: str, target_lang: str,
                 forced_prefix: list[str]) -> GeneratorOutput:
        if self._child is None:
            self.load()
        request = {
            "audio_b64": base64.b64encode(
                encode_audio_frame(AudioChunk(samples=samples))).decode("ascii"),
            "window_start_s": window_start_s,
            "source_lang": source_lang,
            "target_lang": target_lang,
            "forced_prefix": list(forced_prefix),
        }
        raw = self._round_trip(json.dumps(request))
        try:
            response = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise ProcessorError(f"bridge child sent malformed JSON line: {raw!r}") from exc
        if not isinstance(response, dict) or "tokens" not in response:
            raise ProcessorError(f"bridge response missing 'tokens': {raw!r}")
        tokens = response["tokens"]
        if not isinstance(tokens, list) or not all(isinstance(t, str) for t in tokens):
            raise ProcessorError(f"bridge 'tokens' must be a list of strings: {raw!r}")
        attention = response.get("attention")
        att = np.asarray(attention, dtype=np.float64).reshape(len(tokens), -1) \
            if attention is not None and tokens else None
        try:
            return GeneratorOutput(
                tokens=tuple(tokens),
                attention=att,
                frame_duration_s=float(response.get("frame_duration_s",
                                                    DEFAULT_FRAME_DURATION_S)),
            )
        except ValueError as exc:
            raise ProcessorError(f"bridge response invalid: {exc}") from exc

    def _round_trip(self, line: str) -> str:
        child = self._child
        if child is None or child.poll() is not None:
            raise ProcessorError("bridge child process is not running")
        try:
            child.stdin.write(line + "\n")
            child.stdin.flush()
        except (BrokenPipeError, OSError) as exc:
            raise ProcessorError(f"bridge child pipe closed: {exc}") from exc
        sel = selectors.DefaultSelector()
        sel.register(child.stdout, selectors.EVENT_READ)
        try:
            if not sel.select(timeout=self.config.timeout_s):
                raise ProcessorError(
                    f"bridge child did not answer within {self.config.timeout_s}s")
        finally:
            sel.close()
        raw = child.stdout.readline()
        if raw == "":
            raise ProcessorError(
                f"bridge child exited (code {child.poll()}) without answering")
        return raw.strip()

    def close(self) -> None:
        if self._child is None:
            return
        child, self._child = self._child, None
        try:
            child.stdin.close()
        except OSError:
            pass
        try:
            child.wait(timeout=5)
        except subprocess.TimeoutExpired:
            child.kill()
            child.wait()


class BridgeProcessor(SpeechProcessor):
    """Incremental processor fully delegated to the bridged child.

    Each step sends the whole received stream plus the already-emitted
    tokens as the forced prefix; whatever new tokens come back are appended.
    The child owns the policy, which is what makes arbitrary existing
    systems portable behind the pipe.
    """

    def __init__(self, generator: BridgeGenerator, chunk_s: float = 1.0):
        if chunk_s <= 0:
            raise ValueError("chunk_s must be > 0")
        self.generator = generator
        self.preferred_chunk_s = chunk_s
        self._chunk_samples = round(chunk_s * SAMPLE_RATE)
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
        self._pending: list[np.ndarray] = []
        self._pending_count = 0
        self._emitted: list[str] = []

    def process_chunk(self, chunk: AudioChunk) -> list[IncrementalOutput]:
        samples = np.asarray(chunk.samples, dtype=np.float64)
        if len(samples):
            self._pending.append(samples)
            self._pending_count += len(samples)
        outputs = []
        while self._pending_count >= self._chunk_samples:
            outputs.extend(self._step(self._take_pending(self._chunk_samples)))
        return outputs

    def finalize(self) -> list[IncrementalOutput]:
        if self._pending_count == 0 and len(self._buffer) == 0:
            return []
        piece = self._take_pending(self._pending_count) if self._pending_count else np.zeros(0)
        return self._step(piece)

    def close(self) -> None:
        self.generator.close()

    def _take_pending(self, count: int) -> np.ndarray:
        buf = np.concatenate(self._pending) if self._pending else np.zeros(0)
        piece, rest = buf[:count], buf[count:]
        self._pending = [rest] if len(rest) else []
        self._pending_count = len(rest)
        return piece

    def _step(self, new_samples: np.ndarray) -> list[IncrementalOutput]:
        if len(new_samples):
            self._buffer = np.concatenate([self._buffer, new_samples]) if len(self._buffer) else new_samples
        result = self.generator.generate(
            self._buffer, 0.0, self._source_lang, self._target_lang,
            forced_prefix=list(self._emitted))
        if not result.tokens:
            return []
        self._emitted.extend(result.tokens)
        return [IncrementalOutput(delete_count=0, append_tokens=result.tokens)]
