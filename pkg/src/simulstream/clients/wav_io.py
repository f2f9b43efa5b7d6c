"""Strict WAV reading for the streaming clients.

Only 16 kHz mono 16-bit PCM is accepted. Anything else is rejected with a
message naming the offending property; silently resampling would corrupt
the latency ground truth derived from stream positions.
"""

import wave
from dataclasses import dataclass
from pathlib import Path

import numpy as np

SAMPLE_RATE = 16000


class WavFormatError(ValueError):
    """The file is not 16 kHz mono PCM16."""


@dataclass(frozen=True)
class WavStream:
    path: Path
    samples: np.ndarray  # floats in [-1, 1), decoded by s / 32768

    @property
    def duration_s(self) -> float:
        return len(self.samples) / SAMPLE_RATE

    @property
    def audio_id(self) -> str:
        return self.path.stem


def load_wav(path: str | Path) -> WavStream:
    path = Path(path)
    try:
        with wave.open(str(path), "rb") as wav:
            if wav.getcomptype() != "NONE":
                raise WavFormatError(
                    f"{path}: compressed WAV ({wav.getcomptype()}) not supported")
            if wav.getframerate() != SAMPLE_RATE:
                raise WavFormatError(
                    f"{path}: sample rate {wav.getframerate()} Hz, expected {SAMPLE_RATE} Hz")
            if wav.getnchannels() != 1:
                raise WavFormatError(
                    f"{path}: {wav.getnchannels()} channels, expected mono")
            if wav.getsampwidth() != 2:
                raise WavFormatError(
                    f"{path}: {wav.getsampwidth() * 8}-bit samples, expected 16-bit PCM")
            frames = wav.readframes(wav.getnframes())
    except (wave.Error, EOFError) as exc:
        raise WavFormatError(f"{path}: not a readable WAV file: {exc}") from exc
    samples = np.frombuffer(frames, dtype="<i2").astype(np.float64) / 32768
    return WavStream(path=path, samples=samples)


def write_wav(path: str | Path, samples: np.ndarray) -> None:
    """Write float samples as 16 kHz mono PCM16 (test fixtures, demos)."""
    ints = np.clip(np.rint(np.asarray(samples) * 32768), -32768, 32767).astype("<i2")
    with wave.open(str(path), "wb") as wav:
        wav.setnchannels(1)
        wav.setsampwidth(2)
        wav.setframerate(SAMPLE_RATE)
        wav.writeframes(ints.tobytes())


def read_wav_list(list_path: str | Path) -> list[Path]:
    """One WAV path per non-empty line, relative paths resolved against the
    list file's directory."""
    list_path = Path(list_path)
    base = list_path.parent
    paths = []
    for line in list_path.read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        candidate = Path(line)
        paths.append(candidate if candidate.is_absolute() else base / candidate)
    return paths
