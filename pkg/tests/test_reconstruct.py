import pytest

from simulstream.evaluation import reconstruct_timed_text
from simulstream.protocol import LogError, MetricLogRecord


def rec(step, audio, comp, delete, append, audio_id="a"):
    return MetricLogRecord(audio_id=audio_id, step=step, audio_processed_s=audio,
                           computation_s=comp, delete_count=delete,
                           append_tokens=tuple(append))


def test_single_step_two_tokens():
    words, totals = reconstruct_timed_text([rec(1, 2.0, 0.5, 0, ["Hello", " world"])])
    assert [(w.word, w.ideal_time_s, w.ca_time_s) for w in words] == [
        ("Hello", 2.0, 2.5), ("world", 2.0, 2.5)]
    assert totals.final_tokens == 2
    assert totals.deleted_tokens == 0
    assert totals.total_audio_s == 2.0
    assert totals.total_computation_s == 0.5


def test_delete_then_append():
    words, totals = reconstruct_timed_text([
        rec(1, 1.0, 0.0, 0, ["a", " b"]),
        rec(2, 2.0, 0.0, 1, [" c"]),
    ])
    assert [(w.word, w.ideal_time_s) for w in words] == [("a", 1.0), ("c", 2.0)]
    assert totals.deleted_tokens == 1
    assert totals.final_tokens == 2


def test_empty_log():
    words, totals = reconstruct_timed_text([])
    assert words == []
    assert totals == type(totals)(0, 0, 0.0, 0.0)


def test_ca_time_accumulates_computation():
    words, _ = reconstruct_timed_text([
        rec(1, 1.0, 0.4, 0, ["x"]),
        rec(2, 2.0, 0.6, 0, [" y"]),
    ])
    assert words[0].ca_time_s == pytest.approx(1.4)
    # step 2 pays for both steps' computation
    assert words[1].ca_time_s == pytest.approx(2.0 + 0.4 + 0.6)


def test_word_spanning_tokens_takes_max_times():
    words, _ = reconstruct_timed_text([
        rec(1, 1.0, 0.0, 0, ["wo"]),
        rec(2, 2.0, 0.0, 0, ["rd done"]),
    ])
    assert [(w.word, w.ideal_time_s) for w in words] == [("word", 2.0), ("done", 2.0)]


def test_whitespace_only_tokens_vanish():
    words, totals = reconstruct_timed_text([rec(1, 1.0, 0.0, 0, ["  ", " a "])])
    assert [w.word for w in words] == ["a"]
    assert totals.final_tokens == 2


def test_replay_underflow_raises():
    with pytest.raises(LogError):
        reconstruct_timed_text([rec(1, 1.0, 0.0, 2, [])])


def test_append_only_times_non_decreasing():
    records = [rec(i + 1, float(i + 1), 0.1, 0, [f" w{i}"]) for i in range(5)]
    words, _ = reconstruct_timed_text(records)
    ideal = [w.ideal_time_s for w in words]
    assert ideal == sorted(ideal)
    assert all(w.ca_time_s >= w.ideal_time_s for w in words)
