import struct

import numpy as np
import pytest
from hypothesis import given, strategies as st

from simulstream.protocol import AudioChunk, decode_audio_frame, encode_audio_frame


def reference_pcm16_encode(samples):
    """Scalar PCM16 codec written independently of the library path."""
    out = b""
    for f in samples:
        v = round(f * 32767)
        v = max(-32768, min(32767, v))
        out += struct.pack("<h", v)
    return out


def test_zero_sample():
    assert encode_audio_frame(AudioChunk(samples=[0.0])) == b"\x00\x00"


def test_full_scale_positive():
    assert encode_audio_frame(AudioChunk(samples=[1.0])) == b"\xff\x7f"


def test_negative_half():
    expected = struct.pack("<h", round(-0.5 * 32767))
    assert encode_audio_frame(AudioChunk(samples=[-0.5])) == expected


def test_out_of_range_clamped():
    frame = encode_audio_frame(AudioChunk(samples=[1.5, -1.5]))
    assert frame == struct.pack("<hh", 32767, -32768)


@given(st.lists(st.floats(min_value=-1.0, max_value=1.0, allow_nan=False), max_size=200))
def test_matches_reference_codec(samples):
    chunk = AudioChunk(samples=samples)
    assert encode_audio_frame(chunk) == reference_pcm16_encode(samples)


@given(st.lists(st.integers(min_value=-32768, max_value=32767), min_size=1, max_size=200))
def test_lattice_round_trip(ints):
    frame = struct.pack(f"<{len(ints)}h", *ints)
    decoded = decode_audio_frame(frame)
    assert encode_audio_frame(decoded) == frame


@given(st.lists(st.floats(min_value=-1.0, max_value=1.0, allow_nan=False),
                min_size=1, max_size=200))
def test_quantization_error_bound(samples):
    decoded = decode_audio_frame(encode_audio_frame(AudioChunk(samples=samples)))
    err = np.max(np.abs(decoded.samples - np.asarray(samples)))
    assert err <= 1 / 32767


def test_odd_length_frame_rejected():
    with pytest.raises(ValueError):
        decode_audio_frame(b"\x00")


def test_chunk_validation():
    with pytest.raises(ValueError):
        AudioChunk(samples=[0.0], sample_rate_hz=44100)
    with pytest.raises(ValueError):
        AudioChunk(samples=[0.0], stream_offset_s=-1.0)
    chunk = AudioChunk(samples=np.zeros(16000), stream_offset_s=2.0)
    assert chunk.duration_s == 1.0
    assert chunk.end_offset_s == 3.0
