import struct
import wave

import numpy as np
import pytest

from simulstream.clients import WavFormatError, load_wav, read_wav_list, write_wav


def write_raw_wav(path, ints, rate=16000, channels=1, width=2):
    with wave.open(str(path), "wb") as wav:
        wav.setnchannels(channels)
        wav.setsampwidth(width)
        wav.setframerate(rate)
        if width == 2 and channels == 1:
            wav.writeframes(struct.pack(f"<{len(ints)}h", *ints))
        else:
            wav.writeframes(bytes(len(ints) * width * channels))


def test_duration_of_one_second_file(tmp_path):
    path = tmp_path / "one.wav"
    write_raw_wav(path, [0] * 16000)
    stream = load_wav(path)
    assert stream.duration_s == 1.0
    assert stream.audio_id == "one"


def test_wrong_rate_rejected_by_name(tmp_path):
    path = tmp_path / "cd.wav"
    write_raw_wav(path, [0] * 100, rate=44100)
    with pytest.raises(WavFormatError, match="44100"):
        load_wav(path)


def test_stereo_rejected(tmp_path):
    path = tmp_path / "stereo.wav"
    write_raw_wav(path, [0] * 100, channels=2)
    with pytest.raises(WavFormatError, match="channels"):
        load_wav(path)


def test_8bit_rejected(tmp_path):
    path = tmp_path / "lofi.wav"
    write_raw_wav(path, [0] * 100, width=1)
    with pytest.raises(WavFormatError, match="8-bit"):
        load_wav(path)


def test_not_a_wav_rejected(tmp_path):
    path = tmp_path / "nope.wav"
    path.write_bytes(b"definitely not RIFF")
    with pytest.raises(WavFormatError):
        load_wav(path)


def test_lattice_round_trip(tmp_path):
    rng = np.random.default_rng(11)
    ints = rng.integers(-32768, 32768, size=5000)
    path = tmp_path / "lattice.wav"
    write_raw_wav(path, list(ints))
    stream = load_wav(path)
    # decode is s / 32768, exactly
    assert np.array_equal(stream.samples, ints / 32768)
    # re-encoding restores the original int lattice bit-for-bit
    assert np.array_equal(np.rint(stream.samples * 32768).astype(np.int64), ints)


def test_write_wav_round_trip(tmp_path):
    samples = np.linspace(-0.9, 0.9, 1000)
    path = tmp_path / "ramp.wav"
    write_wav(path, samples)
    loaded = load_wav(path)
    assert np.max(np.abs(loaded.samples - samples)) <= 1 / 32768


def test_read_wav_list_resolves_relative(tmp_path):
    (tmp_path / "a.wav").write_bytes(b"")
    listing = tmp_path / "list.txt"
    listing.write_text("# comment\na.wav\n\n/abs/b.wav\n", encoding="utf-8")
    paths = read_wav_list(listing)
    assert paths[0] == tmp_path / "a.wav"
    assert str(paths[1]) == "/abs/b.wav"
