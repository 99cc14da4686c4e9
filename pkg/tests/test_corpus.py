import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from corelab.corpus import (
    RatingRecord,
    ReasoningTrace,
    atomic_write,
    attach_ratings,
    extract_choice,
    read_corpus,
    read_ratings,
    score_correctness,
    write_corpus,
)
from corelab.errors import InputError, SchemaError


def record(i, **kw):
    rec = {"id": f"t{i}", "model": "m", "prompt_language": "sw", "dataset": "mmlu", "domain": "math",
           "prompt": "swali", "reasoning": "hatua moja\nhatua mbili", "answer": "The answer is (B)", "gold": "B"}
    rec.update(kw)
    return rec


def write_lines(path, recs):
    path.write_text("".join(json.dumps(r, ensure_ascii=False) + "\n" for r in recs), encoding="utf-8")


def test_empty_file(tmp_path):
    (tmp_path / "c.jsonl").write_text("")
    assert read_corpus(tmp_path / "c.jsonl") == []


def test_reads_in_order(tmp_path):
    write_lines(tmp_path / "c.jsonl", [record(i) for i in range(3)])
    assert [t.id for t in read_corpus(tmp_path / "c.jsonl")] == ["t0", "t1", "t2"]


def test_missing_field_names_line(tmp_path):
    bad = record(1)
    del bad["reasoning"]
    write_lines(tmp_path / "c.jsonl", [record(0), bad])
    with pytest.raises(SchemaError, match="^line 2: missing field reasoning$"):
        read_corpus(tmp_path / "c.jsonl")


def test_malformed_json_names_line(tmp_path):
    (tmp_path / "c.jsonl").write_text(json.dumps(record(0)) + "\n{oops\n")
    with pytest.raises(SchemaError, match="line 2"):
        read_corpus(tmp_path / "c.jsonl")


def test_duplicate_id_names_both_lines(tmp_path):
    write_lines(tmp_path / "c.jsonl", [record(0), record(1), record(0)])
    with pytest.raises(SchemaError, match=r"line 3.*line 1"):
        read_corpus(tmp_path / "c.jsonl")


def test_correct_requires_gold(tmp_path):
    rec = record(0, correct=True)
    del rec["gold"]
    write_lines(tmp_path / "c.jsonl", [rec])
    with pytest.raises(SchemaError):
        read_corpus(tmp_path / "c.jsonl")


def test_round_trip_preserves_unknown_fields(tmp_path):
    recs = [record(0, extra={"nested": [1, 2]}, note="ọmọ 任务"), record(1, correct=False)]
    src = tmp_path / "a.jsonl"
    write_lines(src, recs)
    write_corpus(tmp_path / "b.jsonl", read_corpus(src))
    assert (tmp_path / "b.jsonl").read_bytes() == src.read_bytes()


@pytest.mark.parametrize(
    "answer, gold, expected",
    [
        ("The answer is (C)", "C", True),
        ("B. because of the heat", "C", False),
        ("the answer is (c)", "C", True),
        ("[c]", "C", True),
        ("Answer: D.", "d", True),
        ("I think B, not a", "B", True),
    ],
)
def test_score_correctness(answer, gold, expected):
    assert score_correctness(ReasoningTrace("t", "m", "sw", "d", "x", "p", "r", answer, gold)) is expected


def test_unparseable_answer_flags_diagnostic(diagnostics):
    trace = ReasoningTrace("t", "m", "sw", "d", "x", "p", "r", "no letter here", "A")
    assert score_correctness(trace) is False
    assert "unparseable-answer" in diagnostics()


@given(st.sampled_from("ABCD"), st.sampled_from(["", "(", "[", " "]), st.sampled_from(["", ")", ".", "]", " !"]),
       st.booleans())
def test_choice_invariant_to_letter_case_and_punctuation(letter, left, right, lower):
    shown = letter.lower() if lower else letter
    assert extract_choice(f"Final: {left}{shown}{right}") == letter


def _corpus():
    return [ReasoningTrace(f"t{i}", "m", "sw", "d", "x", "p", "r", "(A)", "A") for i in range(2)]


def test_attach_ratings_last_write_wins():
    corpus = _corpus()
    attach_ratings(corpus, [RatingRecord("t0", "accuracy", 3)])
    assert corpus[0].ratings == {"accuracy": 3}
    attach_ratings(corpus, [RatingRecord("t1", "fluency", 2), RatingRecord("t1", "fluency", 3)])
    assert corpus[1].ratings == {"fluency": 3}


def test_out_of_range_score_rejected(diagnostics):
    corpus = _corpus()
    attach_ratings(corpus, [RatingRecord("t0", "accuracy", 5), RatingRecord("t0", "style", 2)])
    assert corpus[0].ratings == {}
    assert len(diagnostics()) == 2


def test_unknown_trace_ids_listed():
    with pytest.raises(InputError, match="ghost"):
        attach_ratings(_corpus(), [RatingRecord("ghost", "accuracy", 2)])


def test_attach_ratings_idempotent():
    ratings = [RatingRecord("t0", "accuracy", 1), RatingRecord("t1", "fluency", 3), RatingRecord("t0", "accuracy", 2)]
    once = attach_ratings(_corpus(), ratings)
    twice = attach_ratings(attach_ratings(_corpus(), ratings), ratings)
    assert [t.ratings for t in once] == [t.ratings for t in twice]


def test_read_ratings(tmp_path):
    p = tmp_path / "r.jsonl"
    write_lines(p, [{"trace_id": "t0", "dimension": "fluency", "score": 2}])
    assert read_ratings(p) == [RatingRecord("t0", "fluency", 2)]
    write_lines(p, [{"trace_id": "t0"}])
    with pytest.raises(SchemaError, match="line 1"):
        read_ratings(p)


def test_atomic_write_leaves_no_temp_files(tmp_path):
    atomic_write(tmp_path / "out.txt", "x")
    atomic_write(tmp_path / "out.txt", "y")
    assert [p.name for p in tmp_path.iterdir()] == ["out.txt"]
    assert (tmp_path / "out.txt").read_text() == "y"
