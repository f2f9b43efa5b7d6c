"""Stream-level lagging latency against sentence-level references.

Reference words are assumed evenly distributed over their segment: word i
of an n-word reference spanning T seconds is expected at (i-1) * T / n.
A hypothesis word's lag is its (segment-relative) emission time minus the
expected time at its position, with the position scale stretched to
max(m, n) so length mismatches do not reward over- or under-generation.
The per-segment score averages lags up to the first word emitted at or
after the segment end (all words, if none is).

The stream-level score resegments the full hypothesis with the minimum-WER
lattice, assigns each span to its reference segment, and averages the
per-segment scores; empty spans are skipped and counted.
"""

from dataclasses import dataclass

from simulstream.evaluation.reconstruct import TimedWord
from simulstream.evaluation.resegment import mwer_align


@dataclass(frozen=True)
class ReferenceSegment:
    """Sentence-level reference text with its audio position."""

    text: str
    start_s: float
    duration_s: float

    def __post_init__(self):
        if self.duration_s <= 0:
            raise ValueError("duration_s must be > 0")
        if self.start_s < 0:
            raise ValueError("start_s must be >= 0")

    @property
    def words(self) -> list[str]:
        return self.text.split()


@dataclass(frozen=True)
class StreamLatency:
    mean_lag_s: float
    scored_segments: int
    skipped_empty_segments: int


class EmptyHypothesisError(ValueError):
    """Every segment was empty; the latency mean is undefined."""


def segment_lagging(hyp_words: list[TimedWord], ref: ReferenceSegment,
                    mode: str = "ideal") -> float | None:
    """Average lagging of one segment, or None when the span is empty."""
    m = len(hyp_words)
    if m == 0:
        return None
    n = len(ref.words)
    scale = ref.duration_s / max(m, n)
    total = 0.0
    tau = m
    for i, word in enumerate(hyp_words, start=1):
        emitted = max(0.0, word.time(mode) - ref.start_s)
        total += emitted - (i - 1) * scale
        if emitted >= ref.duration_s:
            tau = i
            break
    return total / tau


def stream_lagging(timed_words: list[TimedWord], refs: list[ReferenceSegment],
                   mode: str = "ideal") -> StreamLatency:
    """Mean per-segment lagging over the resegmented hypothesis."""
    alignment = mwer_align([w.word for w in timed_words], [r.words for r in refs])
    spans = alignment.segment_spans(len(timed_words))
    scores = []
    skipped = 0
    for (start, end), ref in zip(spans, refs):
        score = segment_lagging(timed_words[start:end], ref, mode)
        if score is None:
            skipped += 1
        else:
            scores.append(score)
    if not scores:
        raise EmptyHypothesisError(
            f"all {len(refs)} segments are empty; latency is undefined")
    return StreamLatency(
        mean_lag_s=sum(scores) / len(scores),
        scored_segments=len(scores),
        skipped_empty_segments=skipped,
    )
