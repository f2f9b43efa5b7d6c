from simulstream.clients.direct import DirectRunResult, run_direct
from simulstream.clients.wav_io import (
    WavFormatError,
    WavStream,
    load_wav,
    read_wav_list,
    write_wav,
)
from simulstream.clients.ws_client import (
    SessionFailed,
    SessionRefused,
    StreamSummary,
    stream_session,
    stream_wav_files,
    stream_wav_files_async,
)

__all__ = [
    "DirectRunResult",
    "SessionFailed",
    "SessionRefused",
    "StreamSummary",
    "WavFormatError",
    "WavStream",
    "load_wav",
    "read_wav_list",
    "run_direct",
    "stream_session",
    "stream_wav_files",
    "stream_wav_files_async",
    "write_wav",
]
