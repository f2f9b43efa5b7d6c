"""Loading sentence-level references, keyed by audio id.

Two on-disk layouts are accepted:

* JSON: an object mapping audio_id to a list of
  ``{"text": ..., "start_s": ..., "duration_s": ...}`` entries;
* TSV: one segment per line, ``audio_id<TAB>start_s<TAB>duration_s<TAB>text``.

Segments are sorted by start time per audio and must not overlap.
"""

import json
from pathlib import Path

from simulstream.evaluation.latency import ReferenceSegment

_OVERLAP_EPS = 1e-9


class ReferenceError(ValueError):
    """Malformed or inconsistent reference data."""


def load_references(path: str | Path) -> dict[str, list[ReferenceSegment]]:
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    if path.suffix.lower() == ".json" or text.lstrip().startswith("{"):
        return _from_json(text, path)
    return _from_tsv(text, path)


def _from_json(text: str, path: Path) -> dict[str, list[ReferenceSegment]]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ReferenceError(f"{path}: invalid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ReferenceError(f"{path}: expected an object mapping audio_id to segments")
    refs = {}
    for audio_id, entries in data.items():
        segments = []
        for entry in entries:
            try:
                segments.append(ReferenceSegment(
                    text=str(entry["text"]),
                    start_s=float(entry["start_s"]),
                    duration_s=float(entry["duration_s"]),
                ))
            except (KeyError, TypeError, ValueError) as exc:
                raise ReferenceError(f"{path}: bad segment for {audio_id!r}: {exc}") from exc
        refs[audio_id] = _validated(audio_id, segments, path)
    return refs


def _from_tsv(text: str, path: Path) -> dict[str, list[ReferenceSegment]]:
    refs: dict[str, list[ReferenceSegment]] = {}
    for line_number, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        parts = line.split("\t", 3)
        if len(parts) != 4:
            raise ReferenceError(
                f"{path}:{line_number}: expected audio_id<TAB>start_s<TAB>duration_s<TAB>text")
        audio_id, start_s, duration_s, seg_text = parts
        try:
            segment = ReferenceSegment(text=seg_text, start_s=float(start_s),
                                       duration_s=float(duration_s))
        except ValueError as exc:
            raise ReferenceError(f"{path}:{line_number}: {exc}") from exc
        refs.setdefault(audio_id, []).append(segment)
    return {audio_id: _validated(audio_id, segments, path)
            for audio_id, segments in refs.items()}


def _validated(audio_id: str, segments: list[ReferenceSegment],
               path: Path) -> list[ReferenceSegment]:
    if not segments:
        raise ReferenceError(f"{path}: audio_id {audio_id!r} has no segments")
    ordered = sorted(segments, key=lambda s: s.start_s)
    for earlier, later in zip(ordered, ordered[1:]):
        if later.start_s < earlier.start_s + earlier.duration_s - _OVERLAP_EPS:
            raise ReferenceError(
                f"{path}: audio_id {audio_id!r}: segments overlap at {later.start_s}s")
    return ordered
