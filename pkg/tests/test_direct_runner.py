import numpy as np
import pytest
import yaml

from simulstream.clients import run_direct, write_wav
from simulstream.protocol import parse_log_file

SAMPLE_RATE = 16000


def write_fixture(tmp_path, name, duration_s):
    path = tmp_path / f"{name}.wav"
    t = np.arange(round(duration_s * SAMPLE_RATE)) / SAMPLE_RATE
    write_wav(path, 0.3 * np.sin(2 * np.pi * 330 * t))
    return path


def scripted_config(tmp_path, steps, preferred_chunk_s=1.0):
    config = {
        "type": "scripted",
        "preferred_chunk_s": preferred_chunk_s,
        "script": {"steps": steps},
    }
    path = tmp_path / "processor.yaml"
    path.write_text(yaml.safe_dump(config), encoding="utf-8")
    return path


def test_two_files_two_groups(tmp_path):
    wavs = [write_fixture(tmp_path, "first", 2.5), write_fixture(tmp_path, "second", 1.2)]
    listing = tmp_path / "list.txt"
    listing.write_text("\n".join(str(p) for p in wavs), encoding="utf-8")
    config = scripted_config(tmp_path, [
        {"at_s": 1.0, "append": ["hello"]},
        {"at_s": 2.0, "append": [" world"]},
    ])
    log = tmp_path / "run.jsonl"
    result = run_direct(listing, config, log, source_lang="en", target_lang="de")
    assert result.ok
    assert result.processed == ["first", "second"]

    groups = parse_log_file(log)
    assert set(groups) == {"first", "second"}
    # first: 2.5s -> steps at 1.0, 2.0, flush(2.5); second: 1.2s -> 1.0, flush(1.2)
    first = groups["first"]
    assert [r.audio_processed_s for r in first] == [1.0, 2.0, 2.5]
    assert [r.append_tokens for r in first] == [("hello",), (" world",), ()]
    # second: 1.2s -> step at 1.0, flush(1.2), then the finalization step
    # emitting the scripted output that was never reached in-stream
    second = groups["second"]
    assert [r.audio_processed_s for r in second] == [1.0, 1.2, 1.2]
    assert [r.append_tokens for r in second] == [("hello",), (), (" world",)]


def test_zero_length_audio_finalize_only(tmp_path):
    path = tmp_path / "empty.wav"
    write_wav(path, np.zeros(0))
    listing = tmp_path / "list.txt"
    listing.write_text(str(path), encoding="utf-8")
    config = scripted_config(tmp_path, [{"at_s": 1.0, "append": ["late"]}])
    log = tmp_path / "run.jsonl"
    result = run_direct(listing, config, log, source_lang="en", target_lang="de")
    assert result.ok
    groups = parse_log_file(log)
    # at most the finalization step
    assert len(groups.get("empty", [])) == 1
    assert groups["empty"][0].append_tokens == ("late",)


def test_invalid_wav_recorded_and_run_continues(tmp_path):
    good = write_fixture(tmp_path, "good", 1.0)
    bad = tmp_path / "bad.wav"
    bad.write_bytes(b"not audio")
    listing = tmp_path / "list.txt"
    listing.write_text(f"{bad}\n{good}\n", encoding="utf-8")
    config = scripted_config(tmp_path, [{"at_s": 0.5, "append": ["ok"]}])
    log = tmp_path / "run.jsonl"
    result = run_direct(listing, config, log, source_lang="en", target_lang="de")
    assert not result.ok
    assert str(bad) in result.failures
    assert result.processed == ["good"]


def test_unsupported_language_pair_fails_per_file(tmp_path):
    wav = write_fixture(tmp_path, "talk", 1.0)
    listing = tmp_path / "list.txt"
    listing.write_text(str(wav), encoding="utf-8")
    config = {
        "type": "scripted",
        "script": {"steps": []},
        "supported_languages": [["en", "de"]],
    }
    config_path = tmp_path / "processor.yaml"
    config_path.write_text(yaml.safe_dump(config), encoding="utf-8")
    log = tmp_path / "run.jsonl"
    result = run_direct(listing, config_path, log, source_lang="en", target_lang="xx")
    assert not result.ok
    assert "unsupported language" in next(iter(result.failures.values()))


def test_missing_processor_config_is_fatal(tmp_path):
    listing = tmp_path / "list.txt"
    listing.write_text("", encoding="utf-8")
    with pytest.raises(OSError):
        run_direct(listing, tmp_path / "nope.yaml", tmp_path / "log.jsonl",
                   source_lang="en", target_lang="de")
