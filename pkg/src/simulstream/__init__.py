"""Streaming speech-to-text translation serving, clients, and offline evaluation."""

__version__ = "0.1.0"

SAMPLE_RATE = 16000
