"""Hypothesis generators used by the windowed processors.

A generator maps an audio window (plus languages and an optional forced
text prefix) to a token hypothesis, optionally with a cross-attention
matrix aligning each token to an audio frame of the window. Neural models
plug in here; the built-in scripted generator replays a deterministic
script and is the test double for every policy in this package.
"""

import abc
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import yaml

DEFAULT_FRAME_DURATION_S = 0.04
# window edges are quantized to samples, so interval containment must
# tolerate half a sample at 16 kHz
_TIME_EPS = 1.0 / 32000


@dataclass(frozen=True)
class GeneratorOutput:
    """Tokens for one window, with optional per-token attention rows.

    When present, ``attention`` has one row per token and one column per
    audio frame of the submitted window; each row is non-negative and sums
    to 1 (within 1e-6).
    """

    tokens: tuple[str, ...]
    attention: np.ndarray | None = None
    frame_duration_s: float = DEFAULT_FRAME_DURATION_S

    def __post_init__(self):
        object.__setattr__(self, "tokens", tuple(self.tokens))
        if self.attention is not None:
            att = np.asarray(self.attention, dtype=np.float64)
            if att.ndim != 2 or att.shape[0] != len(self.tokens):
                raise ValueError(
                    f"attention must have one row per token: got shape {att.shape} "
                    f"for {len(self.tokens)} tokens")
            if att.size and (np.any(att < 0) or np.any(np.abs(att.sum(axis=1) - 1.0) > 1e-6)):
                raise ValueError("attention rows must be non-negative and sum to 1")
            object.__setattr__(self, "attention", att)

    @property
    def frame_count(self) -> int:
        return 0 if self.attention is None else self.attention.shape[1]


class Generator(abc.ABC):
    """Produces a hypothesis for an audio window."""

    #: whether generate() fills GeneratorOutput.attention; policies that
    #: need alignments check this at construction time
    provides_attention: bool = False

    def load(self) -> None:
        """Prepare resources. Called once before the first generation."""

    @abc.abstractmethod
    def generate(self, samples: np.ndarray, window_start_s: float,
                 source_lang: str, target_lang: str,
                 forced_prefix: list[str]) -> GeneratorOutput:
        """Generate tokens for the window starting at ``window_start_s``.

        ``forced_prefix`` is text already emitted for this window's audio;
        the returned tokens continue after it.
        """

    def close(self) -> None:
        """Release resources. Idempotent."""


@dataclass(frozen=True)
class ScriptEntry:
    """One scripted utterance span: tokens tied to a source time interval."""

    start_s: float
    end_s: float
    tokens: tuple[str, ...]
    align_s: tuple[float, ...]

    def __post_init__(self):
        if self.end_s < self.start_s:
            raise ValueError(f"entry [{self.start_s}, {self.end_s}] has negative length")
        if len(self.align_s) != len(self.tokens):
            raise ValueError("align_s must have one time per token")


def strip_forced_prefix(tokens: list[str], forced_prefix: list[str]) -> list[str]:
    """Drop the longest suffix of ``forced_prefix`` that prefixes ``tokens``.

    The prefix may extend before the current window (history was pruned),
    so only its overlapping tail is expected to match.
    """
    max_k = min(len(tokens), len(forced_prefix))
    for k in range(max_k, 0, -1):
        if tokens[:k] == forced_prefix[len(forced_prefix) - k:]:
            return tokens[k:]
    return list(tokens)


def _attention_row(peak_col: int, frame_count: int) -> np.ndarray:
    """A one-hot row smoothed onto the immediate neighbor frames."""
    row = np.zeros(frame_count)
    row[peak_col] = 0.8
    if peak_col > 0:
        row[peak_col - 1] = 0.1
    if peak_col < frame_count - 1:
        row[peak_col + 1] = 0.1
    return row / row.sum()


class ScriptedGenerator(Generator):
    """Deterministic generator replaying a time-indexed token script.

    A window's hypothesis is the concatenation of all script entries fully
    inside the window, minus the forced prefix. Attention rows peak at each
    token's scripted alignment time.
    """

    provides_attention = True

    def __init__(self, entries: list[ScriptEntry],
                 frame_duration_s: float = DEFAULT_FRAME_DURATION_S):
        if frame_duration_s <= 0:
            raise ValueError("frame_duration_s must be > 0")
        self.entries = sorted(entries, key=lambda e: (e.start_s, e.end_s))
        self.frame_duration_s = frame_duration_s

    @classmethod
    def from_file(cls, path: str | Path) -> "ScriptedGenerator":
        with open(path, encoding="utf-8") as f:
            data = yaml.safe_load(f)
        return cls.from_dict(data)

    @classmethod
    def from_dict(cls, data: dict) -> "ScriptedGenerator":
        if not isinstance(data, dict) or "entries" not in data:
            raise ValueError("script must be a mapping with an 'entries' list")
        frame_duration_s = float(data.get("frame_duration_s", DEFAULT_FRAME_DURATION_S))
        entries = []
        for raw in data["entries"]:
            tokens = tuple(str(t) for t in raw["tokens"])
            start_s = float(raw["start_s"])
            end_s = float(raw["end_s"])
            if "align_s" in raw:
                align = tuple(float(a) for a in raw["align_s"])
            else:
                # spread tokens evenly over the entry interval
                n = len(tokens)
                span = end_s - start_s
                align = tuple(start_s + span * (i + 1) / (n + 1) for i in range(n))
            entries.append(ScriptEntry(start_s, end_s, tokens, align))
        return cls(entries, frame_duration_s=frame_duration_s)

    def generate(self, samples: np.ndarray, window_start_s: float,
                 source_lang: str, target_lang: str,
                 forced_prefix: list[str]) -> GeneratorOutput:
        window_end_s = window_start_s + len(samples) / 16000
        tokens: list[str] = []
        align: list[float] = []
        for entry in self.entries:
            if entry.start_s >= window_start_s - _TIME_EPS and entry.end_s <= window_end_s + _TIME_EPS:
                tokens.extend(entry.tokens)
                align.extend(entry.align_s)
        new_tokens = strip_forced_prefix(tokens, list(forced_prefix))
        new_align = align[len(align) - len(new_tokens):] if new_tokens else []

        frame_count = max(1, math.ceil(len(samples) / (self.frame_duration_s * 16000) - _TIME_EPS))
        if new_tokens:
            rows = []
            for t in new_align:
                col = int((t - window_start_s) / self.frame_duration_s)
                rows.append(_attention_row(min(max(col, 0), frame_count - 1), frame_count))
            attention = np.vstack(rows)
        else:
            attention = np.zeros((0, frame_count))
        return GeneratorOutput(tokens=tuple(new_tokens), attention=attention,
                               frame_duration_s=self.frame_duration_s)
