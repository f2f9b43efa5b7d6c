"""Wire control messages and the incremental output value type.

Text frames carry JSON control messages; binary frames carry PCM16 audio
(see :mod:`simulstream.protocol.audio`). Message types:

* ``{"type": "config", "source_lang": ..., "target_lang": ..., "audio_id": ...}``
* ``{"type": "output", "delete": n, "append": [...], "audio_processed_s": x}``
* ``{"type": "error", "reason": ...}``
* ``{"type": "eos"}``
"""

import json
from dataclasses import dataclass


@dataclass(frozen=True)
class IncrementalOutput:
    """One revision step: drop ``delete_count`` tokens from the tail of the
    current display, then append ``append_tokens``.

    Append-only (incremental) processors always emit ``delete_count == 0``.
    Tokens carry their own leading whitespace; detokenization is plain
    concatenation.
    """

    delete_count: int = 0
    append_tokens: tuple[str, ...] = ()

    def __post_init__(self):
        if self.delete_count < 0:
            raise ValueError("delete_count must be >= 0")
        object.__setattr__(self, "append_tokens", tuple(self.append_tokens))

    def is_empty(self) -> bool:
        return self.delete_count == 0 and not self.append_tokens


@dataclass(frozen=True)
class SessionConfig:
    """Per-session settings sent by the client before any audio."""

    source_lang: str
    target_lang: str
    audio_id: str

    def __post_init__(self):
        if not self.source_lang or not self.target_lang:
            raise ValueError("language codes must be non-empty")
        if not self.audio_id:
            raise ValueError("audio_id must be non-empty")


class ProtocolError(ValueError):
    """A malformed or out-of-order wire message."""


def config_message(config: SessionConfig) -> str:
    return json.dumps({
        "type": "config",
        "source_lang": config.source_lang,
        "target_lang": config.target_lang,
        "audio_id": config.audio_id,
    })


def output_message(output: IncrementalOutput, audio_processed_s: float) -> str:
    return json.dumps({
        "type": "output",
        "delete": output.delete_count,
        "append": list(output.append_tokens),
        "audio_processed_s": audio_processed_s,
    })


def error_message(reason: str) -> str:
    return json.dumps({"type": "error", "reason": reason})


EOS_MESSAGE = json.dumps({"type": "eos"})


def parse_text_message(raw: str) -> dict:
    """Parse a text frame, requiring a JSON object with a ``type`` field."""
    try:
        msg = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ProtocolError(f"text frame is not valid JSON: {exc}") from exc
    if not isinstance(msg, dict) or "type" not in msg:
        raise ProtocolError("text frame must be a JSON object with a 'type' field")
    return msg


def parse_session_config(msg: dict) -> SessionConfig:
    if msg.get("type") != "config":
        raise ProtocolError(f"expected a config message, got type {msg.get('type')!r}")
    try:
        return SessionConfig(
            source_lang=str(msg["source_lang"]),
            target_lang=str(msg["target_lang"]),
            audio_id=str(msg["audio_id"]),
        )
    except KeyError as exc:
        raise ProtocolError(f"config message missing field {exc.args[0]!r}") from exc
    except ValueError as exc:
        raise ProtocolError(str(exc)) from exc


def merge_outputs(outputs: list[IncrementalOutput]) -> IncrementalOutput:
    """Fold a sequence of revisions into a single equivalent one.

    Replaying the merged output against any display produces the same final
    state as replaying the sequence.
    """
    delete_count = 0
    appended: list[str] = []
    for out in outputs:
        if out.delete_count <= len(appended):
            if out.delete_count:
                del appended[len(appended) - out.delete_count:]
        else:
            delete_count += out.delete_count - len(appended)
            appended.clear()
        appended.extend(out.append_tokens)
    return IncrementalOutput(delete_count=delete_count, append_tokens=tuple(appended))
