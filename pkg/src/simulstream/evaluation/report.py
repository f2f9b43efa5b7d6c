"""Full evaluation: logs + references in, quality/latency/cost report out.

Per audio: replay the log, resegment against the references, score. BLEU is
pooled corpus-level over all segments; latency, normalized erasure, and
real-time factor are unweighted means over audios. RTF above 1 means the
system cannot keep up with the input and is flagged.
"""

import csv
import json
from dataclasses import dataclass
from pathlib import Path

from simulstream.evaluation.bleu import corpus_bleu
from simulstream.evaluation.latency import (
    EmptyHypothesisError,
    ReferenceSegment,
    stream_lagging,
)
from simulstream.evaluation.reconstruct import ReplayTotals, reconstruct_timed_text
from simulstream.evaluation.references import load_references
from simulstream.evaluation.resegment import mwer_align
from simulstream.protocol import MetricLogRecord, parse_log_file


class EvaluationError(ValueError):
    """The evaluation inputs are unusable."""


def normalized_erasure(totals: ReplayTotals) -> float:
    """Deleted tokens per final output token (flicker)."""
    if totals.final_tokens == 0:
        raise EvaluationError("normalized erasure undefined: no final tokens")
    return totals.deleted_tokens / totals.final_tokens


def real_time_factor(totals: ReplayTotals) -> float:
    """Computation seconds per second of input audio."""
    if totals.total_audio_s <= 0:
        raise EvaluationError("real-time factor undefined: no audio processed")
    return totals.total_computation_s / totals.total_audio_s


@dataclass(frozen=True)
class AudioResult:
    audio_id: str
    bleu: float
    stream_laal_s: float | None
    stream_laal_ca_s: float | None
    ne: float | None
    rtf: float
    rtf_exceeds_realtime: bool
    segments: int
    skipped_empty_segments: int
    deleted_tokens: int
    final_tokens: int

    def to_dict(self) -> dict:
        return {
            "audio_id": self.audio_id,
            "bleu": self.bleu,
            "stream_laal_s": self.stream_laal_s,
            "stream_laal_ca_s": self.stream_laal_ca_s,
            "ne": self.ne,
            "rtf": self.rtf,
            "rtf_exceeds_realtime": self.rtf_exceeds_realtime,
            "segments": self.segments,
            "skipped_empty_segments": self.skipped_empty_segments,
            "deleted_tokens": self.deleted_tokens,
            "final_tokens": self.final_tokens,
        }


@dataclass(frozen=True)
class EvaluationReport:
    corpus_bleu: float
    stream_laal_s: float | None
    stream_laal_ca_s: float | None
    ne: float | None
    rtf: float
    rtf_exceeds_realtime: bool
    segments: int
    skipped_empty_segments: int
    per_audio: tuple[AudioResult, ...]

    def to_dict(self) -> dict:
        return {
            "corpus": {
                "bleu": self.corpus_bleu,
                "stream_laal_s": self.stream_laal_s,
                "stream_laal_ca_s": self.stream_laal_ca_s,
                "ne": self.ne,
                "rtf": self.rtf,
                "rtf_exceeds_realtime": self.rtf_exceeds_realtime,
                "segments": self.segments,
                "skipped_empty_segments": self.skipped_empty_segments,
                "audios": len(self.per_audio),
            },
            "per_audio": [result.to_dict() for result in self.per_audio],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False)


@dataclass(frozen=True)
class AlignedAudio:
    """Resegmented hypothesis/reference pairs for one audio."""

    audio_id: str
    hyp_segments: list[list[str]]
    ref_segments: list[list[str]]


def evaluate_records(groups: dict[str, list[MetricLogRecord]],
                     references: dict[str, list[ReferenceSegment]],
                     mode: str = "both") -> tuple[EvaluationReport, list[AlignedAudio]]:
    """Score every audio in ``groups``; also return the aligned segment
    pairs so external scorers can consume them."""
    if not groups:
        raise EvaluationError("metric log contains no records")
    missing = sorted(set(groups) - set(references))
    if missing:
        raise EvaluationError(f"no references for audio ids: {', '.join(missing)}")
    want_ideal = mode in ("ideal", "both")
    want_ca = mode in ("ca", "both")
    if not (want_ideal or want_ca):
        raise ValueError(f"unknown latency mode {mode!r}")

    results = []
    aligned: list[AlignedAudio] = []
    all_hyp_segments: list[list[str]] = []
    all_ref_segments: list[list[str]] = []
    for audio_id in sorted(groups):
        records = groups[audio_id]
        refs = references[audio_id]
        words, totals = reconstruct_timed_text(records)
        alignment = mwer_align([w.word for w in words], [r.words for r in refs])
        hyp_segments = alignment.segments([w.word for w in words])
        ref_segments = [r.words for r in refs]
        aligned.append(AlignedAudio(audio_id, hyp_segments, ref_segments))
        all_hyp_segments.extend(hyp_segments)
        all_ref_segments.extend(ref_segments)

        laal = laal_ca = None
        scored = len(refs)
        skipped = 0
        try:
            if want_ideal:
                latency = stream_lagging(words, refs, mode="ideal")
                laal, skipped = latency.mean_lag_s, latency.skipped_empty_segments
            if want_ca:
                latency_ca = stream_lagging(words, refs, mode="ca")
                laal_ca, skipped = latency_ca.mean_lag_s, latency_ca.skipped_empty_segments
        except EmptyHypothesisError:
            skipped = len(refs)
        ne = normalized_erasure(totals) if totals.final_tokens else None
        rtf = real_time_factor(totals)
        results.append(AudioResult(
            audio_id=audio_id,
            bleu=corpus_bleu(hyp_segments, ref_segments),
            stream_laal_s=laal,
            stream_laal_ca_s=laal_ca,
            ne=ne,
            rtf=rtf,
            rtf_exceeds_realtime=rtf > 1.0,
            segments=scored,
            skipped_empty_segments=skipped,
            deleted_tokens=totals.deleted_tokens,
            final_tokens=totals.final_tokens,
        ))

    report = EvaluationReport(
        corpus_bleu=corpus_bleu(all_hyp_segments, all_ref_segments),
        stream_laal_s=_mean([r.stream_laal_s for r in results]),
        stream_laal_ca_s=_mean([r.stream_laal_ca_s for r in results]),
        ne=_mean([r.ne for r in results]),
        rtf=_mean([r.rtf for r in results]) or 0.0,
        rtf_exceeds_realtime=any(r.rtf_exceeds_realtime for r in results),
        segments=sum(r.segments for r in results),
        skipped_empty_segments=sum(r.skipped_empty_segments for r in results),
        per_audio=tuple(results),
    )
    return report, aligned


def evaluate(log_path: str | Path, refs_path: str | Path,
             mode: str = "both") -> tuple[EvaluationReport, list[AlignedAudio]]:
    groups = parse_log_file(log_path)
    references = load_references(refs_path)
    return evaluate_records(groups, references, mode=mode)


def _mean(values: list[float | None]) -> float | None:
    defined = [v for v in values if v is not None]
    if not defined:
        return None
    return sum(defined) / len(defined)


def _fmt(value: float | None, digits: int = 4) -> str:
    return "-" if value is None else f"{value:.{digits}f}"


def render_table(report: EvaluationReport) -> str:
    """Plain-text summary table, one row per audio plus the corpus row."""
    header = ("audio_id", "BLEU", "StreamLAAL", "StreamLAAL_CA", "NE", "RTF", "segs", "skipped")
    rows = [header]
    for r in report.per_audio:
        rows.append((
            r.audio_id + (" (!RTF)" if r.rtf_exceeds_realtime else ""),
            f"{r.bleu:.2f}", _fmt(r.stream_laal_s), _fmt(r.stream_laal_ca_s),
            _fmt(r.ne), _fmt(r.rtf), str(r.segments), str(r.skipped_empty_segments),
        ))
    rows.append((
        "CORPUS" + (" (!RTF)" if report.rtf_exceeds_realtime else ""),
        f"{report.corpus_bleu:.2f}", _fmt(report.stream_laal_s),
        _fmt(report.stream_laal_ca_s), _fmt(report.ne), _fmt(report.rtf),
        str(report.segments), str(report.skipped_empty_segments),
    ))
    widths = [max(len(row[col]) for row in rows) for col in range(len(header))]
    lines = []
    for idx, row in enumerate(rows):
        lines.append("  ".join(cell.ljust(width) for cell, width in zip(row, widths)).rstrip())
        if idx == 0:
            lines.append("  ".join("-" * width for width in widths))
    return "\n".join(lines)


def write_per_audio_csv(report: EvaluationReport, path: str | Path) -> None:
    """Delimited per-audio metric rows (the machine-readable curve data)."""
    fields = ["audio_id", "bleu", "stream_laal_s", "stream_laal_ca_s", "ne",
              "rtf", "rtf_exceeds_realtime", "segments",
              "skipped_empty_segments", "deleted_tokens", "final_tokens"]
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.DictWriter(f, fieldnames=fields)
        writer.writeheader()
        for result in report.per_audio:
            writer.writerow(result.to_dict())
