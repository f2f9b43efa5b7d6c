"""Fixed-length sliding-window retranslation with LCS deduplication.

The processor keeps the last ``window_s`` seconds of audio and re-generates
a hypothesis every ``stride_s`` seconds. Overlapping windows repeat tokens;
a longest-common-subsequence alignment between the previous and the current
hypothesis decides which displayed tokens survive and which are revised:
everything after the last matched token is deleted and replaced by the new
hypothesis tail.

Tokens whose audio has slid fully out of the window are committed and can
never be deleted again, which bounds how deep a revision can reach.
"""

import math
from bisect import bisect_right
from dataclasses import dataclass

import numpy as np

from simulstream.protocol import AudioChunk, IncrementalOutput
from simulstream.processors.base import SpeechProcessor
from simulstream.processors.generators import Generator

SAMPLE_RATE = 16000


@dataclass(frozen=True)
class SlidingWindowConfig:
    window_s: float
    stride_s: float

    def __post_init__(self):
        if not (0 < self.stride_s <= self.window_s):
            raise ValueError(
                f"need 0 < stride_s <= window_s, got stride={self.stride_s} window={self.window_s}")


def lcs_align(prev: list[str], cur: list[str]) -> list[tuple[int, int]]:
    """Index pairs of one maximum-length common subsequence (exact equality).

    Ties are broken so that matches sit as late as possible in ``prev``
    (retaining the longest display prefix), each paired with the earliest
    eligible position in ``cur``.
    """
    m, n = len(prev), len(cur)
    table = [[0] * (n + 1) for _ in range(m + 1)]
    for i in range(1, m + 1):
        row, above = table[i], table[i - 1]
        token = prev[i - 1]
        for j in range(1, n + 1):
            if token == cur[j - 1]:
                row[j] = above[j - 1] + 1
            else:
                row[j] = above[j] if above[j] >= row[j - 1] else row[j - 1]
    pairs: list[tuple[int, int]] = []
    i, j = m, n
    while i > 0 and j > 0:
        if table[i][j] == table[i][j - 1]:
            j -= 1
        elif prev[i - 1] == cur[j - 1] and table[i][j] == table[i - 1][j - 1] + 1:
            pairs.append((i - 1, j - 1))
            i -= 1
            j -= 1
        else:
            i -= 1
    pairs.reverse()
    return pairs


class SlidingWindowProcessor(SpeechProcessor):
    """Retranslation processor: re-decode the window, dedup, revise the tail."""

    def __init__(self, generator: Generator, config: SlidingWindowConfig):
        self.generator = generator
        self.config = config
        self.preferred_chunk_s = config.stride_s
        self._window_samples = round(config.window_s * SAMPLE_RATE)
        self._stride_samples = round(config.stride_s * SAMPLE_RATE)
        self._source_lang = ""
        self._target_lang = ""
        self.clear_state()

    def load(self) -> None:
        self.generator.load()

    def set_languages(self, source_lang: str, target_lang: str) -> None:
        self._source_lang = source_lang
        self._target_lang = target_lang

    def clear_state(self) -> None:
        self._window = np.zeros(0)
        self._window_start_sample = 0
        self._pending: list[np.ndarray] = []
        self._pending_count = 0
        self._h_prev: list[str] = []
        # displayed-but-revisable tokens, with their positions in _h_prev
        # coordinates (-1 = before everything matched); kept sorted
        self._revisable_tokens: list[str] = []
        self._revisable_pos: list[int] = []
        self._committed_tokens: list[str] = []

    @property
    def committed_tokens(self) -> list[str]:
        """Displayed tokens that can no longer be revised."""
        return list(self._committed_tokens)

    @property
    def display_tokens(self) -> list[str]:
        return self._committed_tokens + self._revisable_tokens

    def process_chunk(self, chunk: AudioChunk) -> list[IncrementalOutput]:
        samples = np.asarray(chunk.samples, dtype=np.float64)
        if len(samples):
            self._pending.append(samples)
            self._pending_count += len(samples)
        outputs = []
        while self._pending_count >= self._stride_samples:
            piece = self._take_pending(self._stride_samples)
            out = self._generate_step(piece)
            if out is not None:
                outputs.append(out)
        return outputs

    def finalize(self) -> list[IncrementalOutput]:
        if self._pending_count == 0:
            return []
        piece = self._take_pending(self._pending_count)
        out = self._generate_step(piece)
        return [out] if out is not None else []

    def close(self) -> None:
        self.generator.close()

    def _take_pending(self, count: int) -> np.ndarray:
        buf = np.concatenate(self._pending) if self._pending else np.zeros(0)
        piece, rest = buf[:count], buf[count:]
        self._pending = [rest] if len(rest) else []
        self._pending_count = len(rest)
        return piece

    def _generate_step(self, new_samples: np.ndarray) -> IncrementalOutput | None:
        prev_window_len = len(self._window)
        window = np.concatenate([self._window, new_samples]) if prev_window_len else new_samples
        overflow = len(window) - self._window_samples
        if overflow > 0:
            window = window[overflow:]
            self._window_start_sample += overflow
        self._window = window
        if len(window) == 0:
            return None

        # audio that left the window commits a proportional share of the
        # previous hypothesis: those tokens can never be revised again
        if overflow > 0 and self._h_prev and prev_window_len > 0:
            share = math.floor(len(self._h_prev) * overflow / prev_window_len)
            self._commit_prefix(share)

        result = self.generator.generate(
            window, self._window_start_sample / SAMPLE_RATE,
            self._source_lang, self._target_lang, forced_prefix=[])
        hypothesis = list(result.tokens)

        pairs = lcs_align(self._h_prev, hypothesis)
        if not pairs and overflow > 0 and self._revisable_tokens:
            # nothing of the previous hypothesis survived AND the window
            # advanced: the old content slid out rather than being revised,
            # so protect it instead of deleting it
            self._commit_prefix(len(self._h_prev) + 1)
        p_star, h_star = pairs[-1] if pairs else (-1, -1)

        keep = bisect_right(self._revisable_pos, p_star)
        delete_count = len(self._revisable_tokens) - keep
        append_tokens = hypothesis[h_star + 1:]

        retained_tokens = self._revisable_tokens[:keep]
        retained_pos = [_remap_position(pos, pairs) for pos in self._revisable_pos[:keep]]
        self._revisable_tokens = retained_tokens + append_tokens
        self._revisable_pos = retained_pos + list(range(h_star + 1, len(hypothesis)))
        self._h_prev = hypothesis

        if delete_count == 0 and not append_tokens:
            return None
        return IncrementalOutput(delete_count=delete_count, append_tokens=tuple(append_tokens))

    def _commit_prefix(self, share: int) -> None:
        cut = bisect_right(self._revisable_pos, share - 1)
        if cut:
            self._committed_tokens.extend(self._revisable_tokens[:cut])
            del self._revisable_tokens[:cut]
            del self._revisable_pos[:cut]


def _remap_position(pos: int, pairs: list[tuple[int, int]]) -> int:
    """Map an old-hypothesis position onto the new one, rounding down to the
    nearest matched pair at or before it."""
    mapped = -1
    for p, h in pairs:
        if p <= pos:
            mapped = h
        else:
            break
    return mapped
