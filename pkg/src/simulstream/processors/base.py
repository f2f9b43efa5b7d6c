"""The speech processor contract.

A speech processor turns incoming audio chunks into incremental outputs.
Implementations choose their own chunk size; callers are expected to feed
audio in slices of ``preferred_chunk_s`` (a trailing shorter chunk is
allowed at end of stream, followed by :meth:`SpeechProcessor.finalize`).

Instances serve one stream at a time. ``clear_state`` must make behavior on
the next stream independent of anything processed before.
"""

import abc

from simulstream.protocol import AudioChunk, IncrementalOutput


class ProcessorError(RuntimeError):
    """A processor failed in a way that is fatal for its current session."""


class SpeechProcessor(abc.ABC):
    """Base class for all streaming speech processors."""

    #: chunk length, in seconds, this processor wants to be fed
    preferred_chunk_s: float = 1.0

    def load(self) -> None:
        """Prepare resources (models, child processes). Called once."""

    @abc.abstractmethod
    def set_languages(self, source_lang: str, target_lang: str) -> None:
        """Select the translation direction; may reject unsupported pairs."""

    @abc.abstractmethod
    def clear_state(self) -> None:
        """Reset all per-stream state."""

    @abc.abstractmethod
    def process_chunk(self, chunk: AudioChunk) -> list[IncrementalOutput]:
        """Consume one chunk of audio and return zero or more revisions."""

    def finalize(self) -> list[IncrementalOutput]:
        """Flush: produce any outputs still pending at end of stream."""
        return []

    def close(self) -> None:
        """Release resources. Idempotent."""
