import numpy as np
import pytest

from simulstream.processors import (
    ProcessorError,
    ScriptedGenerator,
    ScriptEntry,
    StreamAttConfig,
    StreamAttProcessor,
)
from simulstream.protocol import AudioChunk

from conftest import AttentionGenerator, SequenceGenerator, apply_outputs, chunk_stream

SAMPLE_RATE = 16000


def one_chunk(duration_s):
    return AudioChunk(samples=np.zeros(round(duration_s * SAMPLE_RATE)))


def test_threshold_rule_direct():
    # F=100, f=20: emit while argmax <= 79
    gen = AttentionGenerator([(("t1", "t2", "t3"), (10, 40, 95), 100)])
    proc = StreamAttProcessor(gen, StreamAttConfig(cutoff_frames=20, chunk_s=4.0))
    outs = proc.process_chunk(one_chunk(4.0))
    assert len(outs) == 1
    assert outs[0].delete_count == 0
    assert outs[0].append_tokens == ("t1", "t2")


def test_zero_cutoff_emits_everything():
    gen = AttentionGenerator([(("t1", "t2", "t3"), (10, 40, 99), 100)])
    proc = StreamAttProcessor(gen, StreamAttConfig(cutoff_frames=0, chunk_s=4.0))
    outs = proc.process_chunk(one_chunk(4.0))
    assert outs[0].append_tokens == ("t1", "t2", "t3")


def test_cutoff_at_least_frame_count_emits_nothing():
    gen = AttentionGenerator([(("t1", "t2"), (0, 1), 100)])
    proc = StreamAttProcessor(gen, StreamAttConfig(cutoff_frames=100, chunk_s=4.0))
    assert proc.process_chunk(one_chunk(4.0)) == []


def test_generator_without_attention_rejected():
    with pytest.raises(ProcessorError, match="attention"):
        StreamAttProcessor(SequenceGenerator([["x"]]), StreamAttConfig(cutoff_frames=2))


def scripted_word_gen(word_times, frame_duration_s=0.04):
    entries = [
        ScriptEntry(t - 0.2, t + 0.2, (f" w{i}",), (t,))
        for i, t in enumerate(word_times)
    ]
    return ScriptedGenerator(entries, frame_duration_s=frame_duration_s)


def test_history_within_limit_unchanged():
    gen = scripted_word_gen([0.5, 1.5, 2.5])
    proc = StreamAttProcessor(gen, StreamAttConfig(cutoff_frames=0, chunk_s=1.0,
                                                   max_history_words=40))
    display = []
    for chunk in chunk_stream(np.zeros(4 * SAMPLE_RATE), 1.0):
        apply_outputs(display, proc.process_chunk(chunk))
    assert proc.history_tokens == display
    assert proc.buffer_start_s == 0.0


def test_history_pruned_to_limit():
    word_times = [0.5 + i for i in range(8)]  # 8 words, one per second
    gen = scripted_word_gen(word_times)
    proc = StreamAttProcessor(gen, StreamAttConfig(cutoff_frames=0, chunk_s=1.0,
                                                   max_history_words=5))
    for chunk in chunk_stream(np.zeros(9 * SAMPLE_RATE), 1.0):
        proc.process_chunk(chunk)
    # W+3 words seen -> exactly 3 oldest dropped
    assert proc.history_tokens == [" w3", " w4", " w5", " w6", " w7"]


def test_prune_rebases_buffer_to_first_retained_word():
    word_times = [0.5 + i for i in range(8)]
    gen = scripted_word_gen(word_times, frame_duration_s=0.04)
    proc = StreamAttProcessor(gen, StreamAttConfig(cutoff_frames=0, chunk_s=1.0,
                                                   max_history_words=5))
    for chunk in chunk_stream(np.zeros(9 * SAMPLE_RATE), 1.0):
        proc.process_chunk(chunk)
    # first retained word is w3, aligned at 3.5s; its attention peak falls in
    # the frame starting at 3.48s (col 87 of 0.04s frames)
    first_word_time = 3.5
    expected_start = (int(first_word_time / 0.04)) * 0.04
    assert proc.buffer_start_s == pytest.approx(expected_start, abs=0.04)
    # emitted output is never revised by pruning: display retains all words
    assert len(proc.history_tokens) == 5


def test_append_only_across_stream():
    word_times = [0.3 + 0.7 * i for i in range(12)]
    gen = scripted_word_gen(word_times)
    proc = StreamAttProcessor(gen, StreamAttConfig(cutoff_frames=3, chunk_s=1.0,
                                                   max_history_words=6))
    display = []
    for chunk in chunk_stream(np.zeros(10 * SAMPLE_RATE), 1.0):
        for out in proc.process_chunk(chunk):
            assert out.delete_count == 0
            apply_outputs(display, [out])
    for out in proc.finalize():
        assert out.delete_count == 0
        apply_outputs(display, [out])
    assert display == [f" w{i}" for i in range(12)]


def test_emission_respects_cutoff_on_scripted_attention():
    word_times = [0.5 + i * 0.5 for i in range(10)]
    frame = 0.04
    cutoff = 10
    gen = scripted_word_gen(word_times, frame_duration_s=frame)
    proc = StreamAttProcessor(gen, StreamAttConfig(cutoff_frames=cutoff, chunk_s=1.0))
    stream_pos = 0.0
    for chunk in chunk_stream(np.zeros(7 * SAMPLE_RATE), 1.0):
        stream_pos += chunk.duration_s
        buffer_start = proc.buffer_start_s
        frames_total = int(np.ceil((stream_pos - buffer_start) / frame - 1e-9))
        for out in proc.process_chunk(chunk):
            for token in out.append_tokens:
                idx = int(token.strip().lstrip("w"))
                peak_col = int((word_times[idx] - buffer_start) / frame)
                assert peak_col <= frames_total - 1 - cutoff


def test_clear_state_independence():
    gen = scripted_word_gen([0.5, 1.5, 2.2])
    proc = StreamAttProcessor(gen, StreamAttConfig(cutoff_frames=2, chunk_s=1.0))

    def run():
        outs = []
        for chunk in chunk_stream(np.zeros(4 * SAMPLE_RATE), 1.0):
            outs.extend(proc.process_chunk(chunk))
        outs.extend(proc.finalize())
        return outs

    first = run()
    proc.clear_state()
    assert run() == first
