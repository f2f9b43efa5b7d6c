"""Rebuild the final timed text of a session from its metric log.

Only the final output matters for scoring; intermediate revisions do not.
Each surviving token keeps the step at which it was (last) appended, which
defines its emission times: the ideal time is the audio consumed at that
step, the computationally-aware time additionally pays for all computation
spent up to and including that step. A word inherits the maximum times of
the tokens contributing characters to it.
"""

from dataclasses import dataclass
from itertools import accumulate

from simulstream.protocol import LogError, MetricLogRecord


@dataclass(frozen=True)
class TimedWord:
    """A final-output word with its ideal and computationally-aware
    emission times (seconds)."""

    word: str
    ideal_time_s: float
    ca_time_s: float

    def __post_init__(self):
        if self.ideal_time_s < 0 or self.ca_time_s < self.ideal_time_s:
            raise ValueError("need 0 <= ideal_time_s <= ca_time_s")

    def time(self, mode: str) -> float:
        if mode == "ideal":
            return self.ideal_time_s
        if mode == "ca":
            return self.ca_time_s
        raise ValueError(f"unknown latency mode {mode!r}")


@dataclass(frozen=True)
class ReplayTotals:
    deleted_tokens: int
    final_tokens: int
    total_computation_s: float
    total_audio_s: float


def reconstruct_timed_text(records: list[MetricLogRecord]) -> tuple[list[TimedWord], ReplayTotals]:
    """Replay a session's records into its final words and session totals."""
    ideal_times = [r.audio_processed_s for r in records]
    ca_times = [a + c for a, c in zip(ideal_times, accumulate(r.computation_s for r in records))]

    display: list[tuple[str, int]] = []  # (token, step index)
    deleted = 0
    for idx, record in enumerate(records):
        if record.delete_count > len(display):
            raise LogError(
                f"audio_id {record.audio_id!r} step {record.step}: delete_count "
                f"{record.delete_count} exceeds display length {len(display)}")
        if record.delete_count:
            del display[len(display) - record.delete_count:]
            deleted += record.delete_count
        display.extend((token, idx) for token in record.append_tokens)

    words = _words_with_times(display, ideal_times, ca_times)
    totals = ReplayTotals(
        deleted_tokens=deleted,
        final_tokens=len(display),
        total_computation_s=sum(r.computation_s for r in records),
        total_audio_s=records[-1].audio_processed_s if records else 0.0,
    )
    return words, totals


def _words_with_times(display, ideal_times, ca_times) -> list[TimedWord]:
    """Split the concatenated tokens into whitespace words; a word's times
    are the max over every token that contributes a character to it."""
    char_step = []
    text_parts = []
    for token, step_idx in display:
        text_parts.append(token)
        char_step.extend([step_idx] * len(token))
    text = "".join(text_parts)

    words: list[TimedWord] = []
    i = 0
    n = len(text)
    while i < n:
        if text[i].isspace():
            i += 1
            continue
        j = i
        steps = set()
        while j < n and not text[j].isspace():
            steps.add(char_step[j])
            j += 1
        words.append(TimedWord(
            word=text[i:j],
            ideal_time_s=max(ideal_times[s] for s in steps),
            ca_time_s=max(ca_times[s] for s in steps),
        ))
        i = j
    return words
