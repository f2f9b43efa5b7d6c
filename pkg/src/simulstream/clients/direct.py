"""Direct (serverless) runner: process WAV lists straight into metric logs.

The fastest way to evaluate a processor: no sockets, no pacing, same
chunking and record bookkeeping as a served session. Deterministic for
deterministic processors, except computation times.
"""

import logging
from dataclasses import dataclass
from pathlib import Path

from simulstream.clients.wav_io import WavFormatError, load_wav, read_wav_list
from simulstream.processors import build_processor_from_file
from simulstream.protocol import MetricLogWriter
from simulstream.session import SessionPump

LOGGER = logging.getLogger("simulstream.direct")


@dataclass(frozen=True)
class DirectRunResult:
    processed: list[str]
    failures: dict[str, str]

    @property
    def ok(self) -> bool:
        return not self.failures


def run_direct(list_path: str | Path, processor_config: str | Path,
               log_path: str | Path, source_lang: str, target_lang: str) -> DirectRunResult:
    """Process every listed WAV with one processor instance, appending all
    metric records into a single log file.

    A processor that cannot be built or loaded is fatal; a failure on one
    file is recorded and the run continues with the next file.
    """
    processor = build_processor_from_file(processor_config)
    processor.load()
    processed: list[str] = []
    failures: dict[str, str] = {}
    try:
        with MetricLogWriter(log_path) as writer:
            for wav_path in read_wav_list(list_path):
                audio_id = Path(wav_path).stem
                try:
                    stream = load_wav(wav_path)
                    processor.clear_state()
                    processor.set_languages(source_lang, target_lang)
                    pump = SessionPump(processor, audio_id, record_sink=writer.write)
                    pump.feed(stream.samples)
                    pump.finish()
                    processed.append(audio_id)
                except (WavFormatError, OSError, ValueError, RuntimeError) as exc:
                    LOGGER.warning("skipping %s: %s", wav_path, exc)
                    failures[str(wav_path)] = str(exc)
    finally:
        processor.close()
    return DirectRunResult(processed=processed, failures=failures)
