"""Minimum-WER resegmentation of a continuous hypothesis.

Splits the hypothesis word sequence into one contiguous (possibly empty)
span per reference segment so that the summed word-level Levenshtein
distance to the references is minimal. A single edit-distance lattice
against the concatenated references achieves this in O(m * n) time; the
backtrace records the hypothesis position at each reference boundary.

Matching lowercases words after splitting punctuation 13a-style, so
"Hello," and "hello ," count as equal; the produced spans keep the
original words untouched.
"""

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from simulstream.evaluation.bleu import tokenize_13a


def match_key(word: str) -> str:
    """Normalization applied to both sides before comparing words."""
    return " ".join(tokenize_13a(word)).lower()


@dataclass(frozen=True)
class MwerAlignment:
    """Cut positions into the hypothesis (N-1 of them) and the minimal
    summed edit cost they achieve."""

    boundaries: tuple[int, ...]
    total_cost: int

    def segments(self, hyp_words: Sequence[str]) -> list[list[str]]:
        cuts = (0, *self.boundaries, len(hyp_words))
        return [list(hyp_words[a:b]) for a, b in zip(cuts, cuts[1:])]

    def segment_spans(self, length: int) -> list[tuple[int, int]]:
        cuts = (0, *self.boundaries, length)
        return list(zip(cuts, cuts[1:]))


def mwer_align(hyp_words: Sequence[str], ref_segments: Sequence[Sequence[str]]) -> MwerAlignment:
    """Optimal segmentation of ``hyp_words`` against the reference segments.

    Ties prefer match/substitution over deletion over insertion during the
    backtrace, and earlier boundaries on equal cost.
    """
    if not ref_segments:
        raise ValueError("need at least one reference segment")
    hyp_keys = [match_key(w) for w in hyp_words]
    ref_keys = [match_key(w) for segment in ref_segments for w in segment]
    cuts_in_ref = np.cumsum([len(segment) for segment in ref_segments])[:-1]

    m, n = len(hyp_keys), len(ref_keys)
    table = np.zeros((m + 1, n + 1), dtype=np.int32)
    table[0, :] = np.arange(n + 1)
    table[:, 0] = np.arange(m + 1)
    ref_arr = np.array(ref_keys) if n else np.empty(0, dtype=str)
    offsets = np.arange(n + 1)
    for i in range(1, m + 1):
        mismatch = (ref_arr != hyp_keys[i - 1]).astype(np.int32) if n else np.empty(0, np.int32)
        candidates = np.empty(n + 1, dtype=np.int32)
        candidates[0] = i
        if n:
            diag = table[i - 1, :-1] + mismatch
            above = table[i - 1, 1:] + 1
            candidates[1:] = np.minimum(diag, above)
        # fold in the left-neighbor (+1 per step) dependency with a prefix min
        table[i] = offsets + np.minimum.accumulate(candidates - offsets)

    min_hyp_at = np.zeros(n + 1, dtype=np.int64)
    i, j = m, n
    while i > 0 or j > 0:
        min_hyp_at[j] = i
        if i > 0 and j > 0 and table[i, j] == table[i - 1, j - 1] + (hyp_keys[i - 1] != ref_keys[j - 1]):
            i -= 1
            j -= 1
        elif j > 0 and table[i, j] == table[i, j - 1] + 1:
            j -= 1
        else:
            i -= 1
    min_hyp_at[j] = i

    boundaries = tuple(int(min_hyp_at[b]) for b in cuts_in_ref)
    return MwerAlignment(boundaries=boundaries, total_cost=int(table[m, n]))
