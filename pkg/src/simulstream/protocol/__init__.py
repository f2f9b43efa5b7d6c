from simulstream.protocol.audio import (
    AudioChunk,
    decode_audio_frame,
    encode_audio_frame,
)
from simulstream.protocol.messages import (
    IncrementalOutput,
    SessionConfig,
    config_message,
    error_message,
    merge_outputs,
    output_message,
    parse_text_message,
)
from simulstream.protocol.logs import (
    LogError,
    MetricLogRecord,
    MetricLogWriter,
    parse_log,
    parse_log_file,
    replay_records,
    write_log_record,
)

__all__ = [
    "AudioChunk",
    "IncrementalOutput",
    "LogError",
    "MetricLogRecord",
    "MetricLogWriter",
    "SessionConfig",
    "config_message",
    "decode_audio_frame",
    "encode_audio_frame",
    "error_message",
    "merge_outputs",
    "output_message",
    "parse_log",
    "parse_log_file",
    "parse_text_message",
    "replay_records",
    "write_log_record",
]
