"""Scripted processor: a deterministic stand-in for model-backed processors.

Replays a fixed list of timed revision steps; each step fires once the
stream position reaches its time. Supports deletions, so retranslation
behavior (and its metrics) can be exercised end to end without any model.
"""

from dataclasses import dataclass
from pathlib import Path

import numpy as np
import yaml

from simulstream.protocol import AudioChunk, IncrementalOutput
from simulstream.processors.base import ProcessorError, SpeechProcessor

SAMPLE_RATE = 16000


@dataclass(frozen=True)
class ScriptedStep:
    at_s: float
    delete: int
    append: tuple[str, ...]


class ScriptedProcessor(SpeechProcessor):
    """Emits pre-scripted incremental outputs keyed on stream position."""

    def __init__(self, steps: list[ScriptedStep], preferred_chunk_s: float = 1.0,
                 supported_pairs: list[tuple[str, str]] | None = None):
        self.steps = sorted(steps, key=lambda s: s.at_s)
        self.preferred_chunk_s = preferred_chunk_s
        self.supported_pairs = supported_pairs
        self.clear_state()

    @classmethod
    def from_file(cls, path: str | Path, **kwargs) -> "ScriptedProcessor":
        with open(path, encoding="utf-8") as f:
            data = yaml.safe_load(f)
        return cls.from_dict(data, **kwargs)

    @classmethod
    def from_dict(cls, data: dict, **kwargs) -> "ScriptedProcessor":
        if not isinstance(data, dict) or "steps" not in data:
            raise ValueError("script must be a mapping with a 'steps' list")
        steps = [
            ScriptedStep(
                at_s=float(raw["at_s"]),
                delete=int(raw.get("delete", 0)),
                append=tuple(str(t) for t in raw.get("append", ())),
            )
            for raw in data["steps"]
        ]
        return cls(steps, **kwargs)

    def set_languages(self, source_lang: str, target_lang: str) -> None:
        if self.supported_pairs is not None:
            if (source_lang, target_lang) not in self.supported_pairs:
                raise ProcessorError(
                    f"unsupported language pair {source_lang}->{target_lang}")
        self._source_lang = source_lang
        self._target_lang = target_lang

    def clear_state(self) -> None:
        self._position_samples = 0
        self._next_step = 0
        self._source_lang = ""
        self._target_lang = ""

    def process_chunk(self, chunk: AudioChunk) -> list[IncrementalOutput]:
        self._position_samples += len(np.asarray(chunk.samples))
        position_s = self._position_samples / SAMPLE_RATE
        outputs = []
        while self._next_step < len(self.steps) and self.steps[self._next_step].at_s <= position_s:
            step = self.steps[self._next_step]
            outputs.append(IncrementalOutput(delete_count=step.delete, append_tokens=step.append))
            self._next_step += 1
        return outputs

    def finalize(self) -> list[IncrementalOutput]:
        outputs = []
        while self._next_step < len(self.steps):
            step = self.steps[self._next_step]
            outputs.append(IncrementalOutput(delete_count=step.delete, append_tokens=step.append))
            self._next_step += 1
        return outputs
