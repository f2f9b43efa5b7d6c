"""Fixed pool of speech processors.

Capping concurrency at the pool size is what protects the host from
out-of-memory under load: acquisition never blocks or queues, it either
hands out an idle processor or reports that none is available so the
connection can be refused.
"""

import threading

from simulstream.processors.base import SpeechProcessor


class ProcessorPool:
    def __init__(self, processors: list[SpeechProcessor]):
        if not processors:
            raise ValueError("pool needs at least one processor")
        self._idle = list(processors)
        self._all = list(processors)
        self._lock = threading.Lock()

    @property
    def size(self) -> int:
        return len(self._all)

    @property
    def idle_count(self) -> int:
        with self._lock:
            return len(self._idle)

    def acquire(self) -> SpeechProcessor | None:
        """An idle processor, or None when all are busy. Never blocks."""
        with self._lock:
            return self._idle.pop() if self._idle else None

    def release(self, processor: SpeechProcessor) -> None:
        with self._lock:
            if processor not in self._all:
                raise ValueError("processor does not belong to this pool")
            if processor in self._idle:
                raise ValueError("processor released twice")
            self._idle.append(processor)

    def close(self) -> None:
        for processor in self._all:
            processor.close()
