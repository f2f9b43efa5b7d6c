"""Command-line WAV streaming client.

Streams listed WAV files to a running server in fixed 100 ms PCM16 frames,
either paced against the wall clock (``realtime``) or back-to-back
(``max``), and writes each session's final text to the output directory.
Metric logs are produced server-side; this client's job is to be a
faithful, full-duplex audio source.
"""

import asyncio
import logging
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from websockets.asyncio.client import connect
from websockets.exceptions import ConnectionClosed

from simulstream.clients.wav_io import WavFormatError, load_wav, read_wav_list
from simulstream.protocol import AudioChunk, SessionConfig, encode_audio_frame
from simulstream.protocol.messages import EOS_MESSAGE, config_message, parse_text_message

LOGGER = logging.getLogger("simulstream.client")

FRAME_S = 0.1
FRAME_SAMPLES = round(FRAME_S * 16000)
BUSY_PREFIX = "server busy"


class SessionRefused(RuntimeError):
    """The server had no idle processor for us."""


class SessionFailed(RuntimeError):
    """The server reported an error mid-session."""


@dataclass
class StreamSummary:
    transcripts: dict[str, str]
    skipped: dict[str, str]
    failed: dict[str, str]

    @property
    def ok(self) -> bool:
        return not self.skipped and not self.failed


async def stream_session(url: str, config: SessionConfig, samples: np.ndarray,
                         pace: str = "max") -> str:
    """Run one full session; returns the final text the display converged to."""
    if pace not in ("realtime", "max"):
        raise ValueError(f"unknown pace {pace!r}")
    display: list[str] = []
    async with connect(url, max_size=None) as conn:
        await conn.send(config_message(config))
        receiver = asyncio.create_task(_collect_outputs(conn, display))
        try:
            await _send_audio(conn, samples, pace)
            await conn.send(EOS_MESSAGE)
        except ConnectionClosed:
            # the receiver sees the close reason (e.g. refusal) first
            pass
        await receiver
    return "".join(display)


async def _send_audio(conn, samples: np.ndarray, pace: str) -> None:
    loop = asyncio.get_running_loop()
    started = loop.time()
    for index, start in enumerate(range(0, len(samples), FRAME_SAMPLES)):
        frame = samples[start:start + FRAME_SAMPLES]
        if pace == "realtime":
            target = started + index * FRAME_S
            delay = target - loop.time()
            if delay > 0:
                await asyncio.sleep(delay)
        await conn.send(encode_audio_frame(AudioChunk(samples=frame)))


async def _collect_outputs(conn, display: list[str]) -> None:
    try:
        async for message in conn:
            if isinstance(message, bytes):
                continue
            msg = parse_text_message(message)
            if msg.get("type") == "output":
                delete = int(msg.get("delete", 0))
                if delete:
                    del display[len(display) - delete:]
                display.extend(msg.get("append", ()))
            elif msg.get("type") == "error":
                reason = str(msg.get("reason", "unknown error"))
                if reason.startswith(BUSY_PREFIX):
                    raise SessionRefused(reason)
                raise SessionFailed(reason)
    except ConnectionClosed:
        pass


async def stream_wav_files_async(list_path: str | Path, url: str,
                                 source_lang: str, target_lang: str,
                                 pace: str = "max",
                                 out_dir: str | Path | None = None,
                                 concurrency: int = 1,
                                 busy_retries: int = 3) -> StreamSummary:
    """Stream every listed file; sequential unless ``concurrency`` > 1."""
    out = Path(out_dir) if out_dir is not None else None
    if out is not None:
        out.mkdir(parents=True, exist_ok=True)
    summary = StreamSummary(transcripts={}, skipped={}, failed={})
    semaphore = asyncio.Semaphore(max(1, concurrency))
    active = 0

    async def run_one(wav_path: Path) -> None:
        nonlocal active
        try:
            stream = load_wav(wav_path)
        except (WavFormatError, OSError) as exc:
            LOGGER.warning("skipping %s: %s", wav_path, exc)
            summary.skipped[str(wav_path)] = str(exc)
            return
        config = SessionConfig(source_lang=source_lang, target_lang=target_lang,
                               audio_id=stream.audio_id)
        async with semaphore:
            active += 1
            try:
                attempts = 0
                while True:
                    try:
                        text = await stream_session(url, config, stream.samples, pace)
                        break
                    except SessionRefused as exc:
                        attempts += 1
                        if active <= 1 or attempts > busy_retries:
                            summary.failed[stream.audio_id] = str(exc)
                            return
                        # another of our sessions holds a processor; let it finish
                        await asyncio.sleep(0.2 * attempts)
            except (SessionFailed, ConnectionClosed, OSError) as exc:
                summary.failed[stream.audio_id] = str(exc)
                return
            finally:
                active -= 1
        summary.transcripts[stream.audio_id] = text
        if out is not None:
            (out / f"{stream.audio_id}.txt").write_text(text + "\n", encoding="utf-8")

    paths = read_wav_list(list_path)
    if concurrency <= 1:
        for path in paths:
            await run_one(path)
    else:
        await asyncio.gather(*(run_one(path) for path in paths))
    return summary


def stream_wav_files(*args, **kwargs) -> StreamSummary:
    return asyncio.run(stream_wav_files_async(*args, **kwargs))
