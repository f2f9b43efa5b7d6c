from simulstream.evaluation.bleu import corpus_bleu, tokenize_13a
from simulstream.evaluation.export import export_for_external_scorer, read_exported_segments
from simulstream.evaluation.latency import (
    EmptyHypothesisError,
    ReferenceSegment,
    StreamLatency,
    segment_lagging,
    stream_lagging,
)
from simulstream.evaluation.reconstruct import ReplayTotals, TimedWord, reconstruct_timed_text
from simulstream.evaluation.references import ReferenceError, load_references
from simulstream.evaluation.report import (
    AlignedAudio,
    AudioResult,
    EvaluationError,
    EvaluationReport,
    evaluate,
    evaluate_records,
    normalized_erasure,
    real_time_factor,
    render_table,
    write_per_audio_csv,
)
from simulstream.evaluation.resegment import MwerAlignment, match_key, mwer_align

__all__ = [
    "AlignedAudio",
    "AudioResult",
    "EmptyHypothesisError",
    "EvaluationError",
    "EvaluationReport",
    "MwerAlignment",
    "ReferenceError",
    "ReferenceSegment",
    "ReplayTotals",
    "StreamLatency",
    "TimedWord",
    "corpus_bleu",
    "evaluate",
    "evaluate_records",
    "export_for_external_scorer",
    "load_references",
    "match_key",
    "mwer_align",
    "normalized_erasure",
    "read_exported_segments",
    "real_time_factor",
    "reconstruct_timed_text",
    "render_table",
    "segment_lagging",
    "stream_lagging",
    "tokenize_13a",
    "write_per_audio_csv",
]
