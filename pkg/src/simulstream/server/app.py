"""The full-duplex WebSocket service.

One accepted session maps to one pooled processor for its whole lifetime.
Binary frames carry PCM16 audio into the session pump; committed outputs
stream back as JSON text frames while a metric record is appended per
processing step. When every processor is busy, new connections get an
error frame and are closed rather than queued.
"""

import asyncio
import logging
from typing import Callable

from websockets.asyncio.server import ServerConnection, serve
from websockets.exceptions import ConnectionClosed

from simulstream.processors.base import ProcessorError, SpeechProcessor
from simulstream.protocol import MetricLogWriter, decode_audio_frame
from simulstream.protocol.messages import (
    ProtocolError,
    error_message,
    output_message,
    parse_session_config,
    parse_text_message,
)
from simulstream.server.config import ServerConfig
from simulstream.server.pool import ProcessorPool
from simulstream.session import SessionPump

LOGGER = logging.getLogger("simulstream.server")


class StreamServer:
    """Owns the pool, the log sink, and the listening socket."""

    def __init__(self, config: ServerConfig,
                 processor_factory: Callable[[], SpeechProcessor]):
        processors = []
        for _ in range(config.pool_size):
            processor = processor_factory()
            processor.load()
            processors.append(processor)
        self.config = config
        self.pool = ProcessorPool(processors)
        self.log_writer = MetricLogWriter(config.log_path) if config.log_path else None
        self._server = None

    @property
    def port(self) -> int:
        """The bound port (useful when configured with port 0)."""
        if self._server is None:
            raise RuntimeError("server is not running")
        return self._server.sockets[0].getsockname()[1]

    async def start(self) -> None:
        self._server = await serve(self._handle, self.config.host, self.config.port,
                                   max_size=None)
        LOGGER.info("listening on %s:%d (pool of %d)",
                    self.config.host, self.port, self.pool.size)

    async def stop(self) -> None:
        if self._server is not None:
            self._server.close()
            await self._server.wait_closed()
            self._server = None
        if self.log_writer is not None:
            self.log_writer.close()
        self.pool.close()

    async def serve_forever(self) -> None:
        await self.start()
        try:
            await asyncio.get_running_loop().create_future()
        finally:
            await self.stop()

    async def _handle(self, connection: ServerConnection) -> None:
        try:
            first = await connection.recv()
        except ConnectionClosed:
            return
        if isinstance(first, bytes):
            await self._refuse(connection, "expected a config message before audio")
            return
        try:
            session_config = parse_session_config(parse_text_message(first))
        except ProtocolError as exc:
            await self._refuse(connection, str(exc))
            return

        processor = self.pool.acquire()
        if processor is None:
            await self._refuse(
                connection, "server busy: all processors are in use, retry later")
            return
        LOGGER.info("session %s started", session_config.audio_id)
        try:
            await self._run_session(connection, processor, session_config)
        finally:
            try:
                processor.clear_state()
            except Exception:
                LOGGER.exception("clear_state failed while releasing processor")
            self.pool.release(processor)
            LOGGER.info("session %s finished", session_config.audio_id)

    async def _run_session(self, connection: ServerConnection,
                           processor: SpeechProcessor, session_config) -> None:
        loop = asyncio.get_running_loop()
        try:
            processor.set_languages(session_config.source_lang, session_config.target_lang)
            processor.clear_state()
        except (ProcessorError, ValueError) as exc:
            await self._refuse(connection, f"session rejected: {exc}")
            return

        sink = self.log_writer.write if self.log_writer else None
        pump = SessionPump(processor, session_config.audio_id, record_sink=sink)
        try:
            async for message in connection:
                if isinstance(message, bytes):
                    chunk = decode_audio_frame(message)
                    events = await loop.run_in_executor(None, pump.feed, chunk.samples)
                    await self._send_events(connection, events)
                    continue
                msg = parse_text_message(message)
                if msg.get("type") == "eos":
                    break
                await connection.send(error_message(
                    f"unexpected message type {msg.get('type')!r} mid-session"))
        except ConnectionClosed:
            pass
        except (ProtocolError, ProcessorError, ValueError) as exc:
            LOGGER.warning("session %s failed: %s", session_config.audio_id, exc)
            await self._try_send(connection, error_message(str(exc)))
            await connection.close()
            return

        # flush + finalize even when the client vanished, so logs are complete
        try:
            events = await loop.run_in_executor(None, pump.finish)
        except ProcessorError as exc:
            await self._try_send(connection, error_message(str(exc)))
            await connection.close()
            return
        await self._try_send_events(connection, events)
        await connection.close()

    async def _send_events(self, connection, events) -> None:
        for output, audio_processed_s in events:
            await connection.send(output_message(output, audio_processed_s))

    async def _try_send_events(self, connection, events) -> None:
        try:
            await self._send_events(connection, events)
        except ConnectionClosed:
            pass

    async def _try_send(self, connection, payload: str) -> None:
        try:
            await connection.send(payload)
        except ConnectionClosed:
            pass

    async def _refuse(self, connection, reason: str) -> None:
        await self._try_send(connection, error_message(reason))
        await connection.close()


async def run_server(server_config: ServerConfig,
                     processor_factory: Callable[[], SpeechProcessor]) -> None:
    server = StreamServer(server_config, processor_factory)
    await server.serve_forever()
