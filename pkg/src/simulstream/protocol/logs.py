"""Metric log records: the JSONL audit trail every evaluation runs on.

One line per processing step, independently parseable:

    {"audio_id": ..., "step": ..., "audio_processed_s": ...,
     "computation_s": ..., "delete_count": ..., "append_tokens": [...]}

``audio_processed_s`` always refers to the ORIGINAL stream, even when a
filtering wrapper discards part of the audio before the inner processor.
"""

import json
import threading
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, TextIO

LOG_FIELDS = ("audio_id", "step", "audio_processed_s", "computation_s",
              "delete_count", "append_tokens")


class LogError(ValueError):
    """A malformed or structurally inconsistent metric log."""

    def __init__(self, message: str, line_number: int | None = None):
        self.line_number = line_number
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class MetricLogRecord:
    """One step of one session, as replayed by the evaluation engine."""

    audio_id: str
    step: int
    audio_processed_s: float
    computation_s: float
    delete_count: int
    append_tokens: tuple[str, ...]

    def __post_init__(self):
        if self.step < 1:
            raise ValueError("step must be >= 1")
        if self.audio_processed_s < 0:
            raise ValueError("audio_processed_s must be >= 0")
        if self.computation_s < 0:
            raise ValueError("computation_s must be >= 0")
        if self.delete_count < 0:
            raise ValueError("delete_count must be >= 0")
        object.__setattr__(self, "append_tokens", tuple(self.append_tokens))

    def to_json(self) -> str:
        return json.dumps({
            "audio_id": self.audio_id,
            "step": self.step,
            "audio_processed_s": self.audio_processed_s,
            "computation_s": self.computation_s,
            "delete_count": self.delete_count,
            "append_tokens": list(self.append_tokens),
        }, ensure_ascii=False)


def write_log_record(record: MetricLogRecord, sink: TextIO) -> None:
    """Append exactly one line for ``record``; never commit a partial line."""
    line = record.to_json() + "\n"
    sink.write(line)
    sink.flush()


class MetricLogWriter:
    """Append-only JSONL sink, safe to share across sessions of one process.

    Line appends are serialized with a lock so concurrently served sessions
    never interleave within a line.
    """

    def __init__(self, path: str | Path):
        self._path = Path(path)
        self._path.parent.mkdir(parents=True, exist_ok=True)
        self._file: TextIO = open(self._path, "a", encoding="utf-8")
        self._lock = threading.Lock()

    def write(self, record: MetricLogRecord) -> None:
        with self._lock:
            write_log_record(record, self._file)

    def close(self) -> None:
        with self._lock:
            if not self._file.closed:
                self._file.close()

    def __enter__(self) -> "MetricLogWriter":
        return self

    def __exit__(self, *exc_info) -> None:
        self.close()


def _parse_record_line(raw: str, line_number: int) -> MetricLogRecord:
    try:
        obj = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise LogError(f"invalid JSON: {exc}", line_number) from exc
    if not isinstance(obj, dict):
        raise LogError("record is not a JSON object", line_number)
    missing = [f for f in LOG_FIELDS if f not in obj]
    if missing:
        raise LogError(f"record missing fields {missing}", line_number)
    tokens = obj["append_tokens"]
    if not isinstance(tokens, list) or not all(isinstance(t, str) for t in tokens):
        raise LogError("append_tokens must be a list of strings", line_number)
    try:
        return MetricLogRecord(
            audio_id=str(obj["audio_id"]),
            step=int(obj["step"]),
            audio_processed_s=float(obj["audio_processed_s"]),
            computation_s=float(obj["computation_s"]),
            delete_count=int(obj["delete_count"]),
            append_tokens=tuple(tokens),
        )
    except (TypeError, ValueError) as exc:
        raise LogError(str(exc), line_number) from exc


def parse_log(lines: Iterable[str]) -> dict[str, list[MetricLogRecord]]:
    """Group records by audio_id, keeping step order, validating structure.

    Steps within one audio_id must be consecutive starting from 1, and
    audio_processed_s must be non-decreasing. Replaying each group must
    never delete more tokens than are displayed.
    """
    groups: dict[str, list[MetricLogRecord]] = {}
    for line_number, raw in enumerate(lines, start=1):
        raw = raw.strip()
        if not raw:
            continue
        record = _parse_record_line(raw, line_number)
        group = groups.setdefault(record.audio_id, [])
        expected_step = len(group) + 1
        if record.step != expected_step:
            raise LogError(
                f"audio_id {record.audio_id!r}: expected step {expected_step}, got {record.step}",
                line_number)
        if group and record.audio_processed_s < group[-1].audio_processed_s:
            raise LogError(
                f"audio_id {record.audio_id!r}: audio_processed_s regressed "
                f"({group[-1].audio_processed_s} -> {record.audio_processed_s})",
                line_number)
        group.append(record)
    for records in groups.values():
        replay_records(records)
    return groups


def parse_log_file(path: str | Path) -> dict[str, list[MetricLogRecord]]:
    with open(path, encoding="utf-8") as f:
        return parse_log(f)


def replay_records(records: list[MetricLogRecord]) -> list[str]:
    """Replay deletions/appends in step order and return the final tokens.

    Raises :class:`LogError` if any step deletes beyond the current display.
    """
    display: list[str] = []
    for record in records:
        if record.delete_count > len(display):
            raise LogError(
                f"audio_id {record.audio_id!r} step {record.step}: delete_count "
                f"{record.delete_count} exceeds display length {len(display)}")
        if record.delete_count:
            del display[len(display) - record.delete_count:]
        display.extend(record.append_tokens)
    return display
