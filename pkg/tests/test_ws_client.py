import asyncio
import time

import numpy as np

from simulstream.clients import stream_wav_files_async, write_wav
from simulstream.processors import ScriptedProcessor, ScriptedStep
from simulstream.server import ServerConfig, StreamServer

SAMPLE_RATE = 16000


def factory():
    return ScriptedProcessor([ScriptedStep(at_s=0.5, delete=0, append=("text",))],
                             preferred_chunk_s=0.5)


async def start_server(tmp_path, pool_size=1):
    config = ServerConfig(host="127.0.0.1", port=0, pool_size=pool_size,
                          log_path=tmp_path / "log.jsonl")
    server = StreamServer(config, factory)
    await server.start()
    return server


def make_listing(tmp_path, durations):
    paths = []
    for i, duration in enumerate(durations):
        path = tmp_path / f"clip{i}.wav"
        write_wav(path, 0.2 * np.ones(round(duration * SAMPLE_RATE)))
        paths.append(path)
    listing = tmp_path / "list.txt"
    listing.write_text("\n".join(str(p) for p in paths), encoding="utf-8")
    return listing


async def test_empty_list_no_sessions(tmp_path):
    listing = tmp_path / "list.txt"
    listing.write_text("", encoding="utf-8")
    summary = await stream_wav_files_async(listing, "ws://127.0.0.1:1",
                                           source_lang="en", target_lang="de")
    assert summary.ok
    assert summary.transcripts == {}


async def test_max_pace_session_and_transcript(tmp_path):
    server = await start_server(tmp_path)
    listing = make_listing(tmp_path, [1.0])
    try:
        summary = await stream_wav_files_async(
            listing, f"ws://127.0.0.1:{server.port}",
            source_lang="en", target_lang="de", pace="max", out_dir=tmp_path / "out")
    finally:
        await server.stop()
    assert summary.ok
    assert summary.transcripts == {"clip0": "text"}
    assert (tmp_path / "out" / "clip0.txt").read_text(encoding="utf-8") == "text\n"


async def test_realtime_pace_tracks_wall_clock(tmp_path):
    server = await start_server(tmp_path)
    listing = make_listing(tmp_path, [1.5])
    try:
        started = time.monotonic()
        summary = await stream_wav_files_async(
            listing, f"ws://127.0.0.1:{server.port}",
            source_lang="en", target_lang="de", pace="realtime")
        elapsed = time.monotonic() - started
    finally:
        await server.stop()
    assert summary.ok
    # sending 1.5s of audio in 100ms frames must take about 1.4s of pacing
    # (the first frame goes immediately); allow 5% plus scheduling slack
    assert elapsed >= 1.4 * 0.95
    assert elapsed <= 1.5 * 1.25


async def test_invalid_wav_skipped_with_failure_exit(tmp_path):
    server = await start_server(tmp_path)
    bad = tmp_path / "bad.wav"
    bad.write_bytes(b"nope")
    good_listing = make_listing(tmp_path, [0.6])
    listing = tmp_path / "mixed.txt"
    listing.write_text(f"{bad}\n{good_listing.parent / 'clip0.wav'}\n", encoding="utf-8")
    try:
        summary = await stream_wav_files_async(
            listing, f"ws://127.0.0.1:{server.port}",
            source_lang="en", target_lang="de")
    finally:
        await server.stop()
    assert not summary.ok
    assert str(bad) in summary.skipped
    assert "clip0" in summary.transcripts


async def test_sequential_refusal_aborts_with_message(tmp_path):
    server = await start_server(tmp_path, pool_size=1)
    listing = make_listing(tmp_path, [0.5])
    # occupy the only processor with a foreign session
    from websockets.asyncio.client import connect
    from simulstream.protocol import SessionConfig
    from simulstream.protocol.messages import config_message

    squatter = await connect(f"ws://127.0.0.1:{server.port}")
    await squatter.send(config_message(SessionConfig("en", "de", "squat")))
    await asyncio.sleep(0.1)
    try:
        summary = await stream_wav_files_async(
            listing, f"ws://127.0.0.1:{server.port}",
            source_lang="en", target_lang="de")
        assert not summary.ok
        assert "busy" in summary.failed["clip0"]
    finally:
        await squatter.close()
        await server.stop()


async def test_concurrent_sessions_within_pool(tmp_path):
    server = await start_server(tmp_path, pool_size=2)
    listing = make_listing(tmp_path, [0.6, 0.6, 0.6])
    try:
        summary = await stream_wav_files_async(
            listing, f"ws://127.0.0.1:{server.port}",
            source_lang="en", target_lang="de", concurrency=2)
    finally:
        await server.stop()
    assert summary.ok
    assert set(summary.transcripts) == {"clip0", "clip1", "clip2"}
