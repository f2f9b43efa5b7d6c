"""Corpus-level BLEU with 13a tokenization and exponential smoothing.

Scores are on the 0-100 scale. Precisions p1..p4 are pooled over all
segments; the k-th zero precision (with a non-zero denominator) is
replaced by 1/(2^k * pooled denominator). Brevity penalty is
min(1, e^(1 - r/c)). One reference per segment. A corpus with no matching
n-gram of any order scores exactly 0.
"""

import math
import re
from collections import Counter

NGRAM_ORDER = 4

_13A_RULES = (
    (re.compile(r"([\{-\~\[-\` -\&\(-\+\:-\@\/])"), r" \1 "),
    (re.compile(r"([^0-9])([\.,])"), r"\1 \2 "),
    (re.compile(r"([\.,])([^0-9])"), r" \1 \2"),
    (re.compile(r"([0-9])(-)"), r"\1 \2 "),
)


def tokenize_13a(line: str) -> list[str]:
    """Minimal WMT-style tokenization: split punctuation and symbols off
    words, keeping digit-internal periods/commas attached."""
    norm = line.replace("-\n", "").replace("\n", " ")
    norm = f" {norm} "
    for pattern, replacement in _13A_RULES:
        norm = pattern.sub(replacement, norm)
    return norm.split()


def _ngram_counts(tokens: list[str]) -> Counter:
    counts: Counter = Counter()
    for n in range(1, NGRAM_ORDER + 1):
        for i in range(len(tokens) - n + 1):
            counts[tuple(tokens[i:i + n])] += 1
    return counts


def corpus_bleu(hyp_segments: list[list[str]], ref_segments: list[list[str]]) -> float:
    """BLEU over parallel segment lists of whitespace words.

    Segments are detokenized (joined on space) and re-tokenized with the
    13a rules before counting.
    """
    if len(hyp_segments) != len(ref_segments):
        raise ValueError(
            f"segment count mismatch: {len(hyp_segments)} hypotheses "
            f"vs {len(ref_segments)} references")
    correct = [0] * NGRAM_ORDER
    total = [0] * NGRAM_ORDER
    hyp_len = 0
    ref_len = 0
    for hyp_words, ref_words in zip(hyp_segments, ref_segments):
        hyp = tokenize_13a(" ".join(hyp_words))
        ref = tokenize_13a(" ".join(ref_words))
        hyp_len += len(hyp)
        ref_len += len(ref)
        ref_counts = _ngram_counts(ref)
        for ngram, count in _ngram_counts(hyp).items():
            order = len(ngram)
            total[order - 1] += count
            correct[order - 1] += min(count, ref_counts.get(ngram, 0))

    if hyp_len == 0 or not any(correct):
        return 0.0

    brevity_penalty = 1.0 if hyp_len >= ref_len else math.exp(1 - ref_len / hyp_len)

    precisions = [0.0] * NGRAM_ORDER
    smooth = 1.0
    for n in range(NGRAM_ORDER):
        if total[n] == 0:
            break
        if correct[n] == 0:
            smooth *= 2.0
            precisions[n] = 100.0 / (smooth * total[n])
        else:
            precisions[n] = 100.0 * correct[n] / total[n]

    log_sum = sum(math.log(p) if p > 0.0 else -9999999999.0
                  for p in precisions)
    return brevity_penalty * math.exp(log_sum / NGRAM_ORDER)
