import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from corelab import curation
from corelab.corpus import ReasoningTrace
from corelab.curation import CurationInstance, Task
from corelab.errors import ConfigurationError, InputError
from corelab.lid import LidConfig

TEMPLATE = "Translate into English:\n{source}"


def trace(i, reasoning, correct=True, lang="sw"):
    return ReasoningTrace(f"t{i}", "m", lang, "d", "x", "swali", reasoning, "(A)", "A", correct)


@pytest.mark.parametrize(
    "lengths, p, expected",
    [(list(range(1, 101)), 0.95, 95), ([7], 0.3, 7), ([7], 1.0, 7), ([5, 5, 5, 5], 0.95, 5), ([3, 1, 2], 0.5, 2)],
)
def test_length_cutoff(lengths, p, expected):
    assert curation.length_cutoff(lengths, p) == expected


def test_length_cutoff_errors():
    with pytest.raises(InputError):
        curation.length_cutoff([])
    with pytest.raises(InputError):
        curation.length_cutoff([1], 0)


def test_filter_correct_and_short(diagnostics):
    traces = [trace(0, "a b c"), trace(1, "a b c d"), trace(2, "a", correct=False),
              ReasoningTrace("t3", "m", "sw", "d", "x", "p", "a", "(A)")]
    kept = curation.filter_correct_and_short(traces, 3)
    assert [t.id for t in kept] == ["t0"]
    assert "missing-correctness" in diagnostics()
    assert curation.filter_correct_and_short(kept, 3) == kept


def test_translation_instances():
    (inst,) = curation.make_translation_instances([("Habari", "Hello")], TEMPLATE, language="sw")
    assert "Habari" in inst.prompt
    assert (inst.reasoning, inst.answer, inst.task) == ("", "Hello", Task.MT_EN)
    assert inst.token_count == 5  # four prompt words + "Hello"
    assert curation.make_translation_instances([], TEMPLATE) == []
    (p,) = curation.make_translation_instances([("Swali?", "Question?")], TEMPLATE, Task.PROMPT_MT_EN)
    assert (p.task, p.reasoning) == (Task.PROMPT_MT_EN, "")
    with pytest.raises(ConfigurationError):
        curation.make_translation_instances([("a", "b")], "no placeholder")


def test_english_reasoning_instances(diagnostics):
    out = curation.make_english_reasoning_instances(
        [{"id": "x", "prompt": "swali", "reasoning_en": "step one", "answer": "jibu"},
         ("swali", "step", "jibu"),
         {"prompt": "swali", "reasoning_en": "", "answer": "jibu"}],
        "sw",
    )
    assert [(i.id, i.task) for i in out] == [("x", Task.ENGLISH_REASONING), ("english_reasoning-000001", Task.ENGLISH_REASONING)]
    assert "record-skipped" in diagnostics()


def test_select_strategic():
    cfg = LidConfig.default()
    mono = trace(0, "hatua hesabu mtoto daktari")
    mixed = trace(1, " ".join(["the"] * 6 + ["hatua"] * 4))
    stray = trace(2, " ".join(["hatua"] * 10 + ["the"] * 2))
    assert [t.id for t in curation.select_strategic([mono, mixed, stray], cfg)] == ["t1"]


def test_splice_examples():
    r_e, r_l = "e0\ne1\ne2\ne3", "l0\nl1\nl2\nl3"
    out = curation.splice_synthetic(r_e, r_l, 11).split("\n")
    chosen = sorted(random.Random(11).sample(range(4), 2))
    assert out == [f"e{i}" if i in chosen else f"l{i}" for i in range(4)]
    assert curation.splice_synthetic("only english", "l0\nl1", 3) == "l0\nl1"
    with pytest.raises(InputError):
        curation.splice_synthetic("\n \n", "l0", 1)


def test_instance_seed_is_stable():
    assert curation.instance_seed(1, "a") == curation.instance_seed(1, "a")
    assert curation.instance_seed(1, "a") != curation.instance_seed(2, "a")
    assert 0 <= curation.instance_seed(0, "x") < 2**64


def test_build_synthetic_is_deterministic():
    recs = [{"id": f"s{i}", "prompt": "p", "reasoning_en": "a\nb\nc", "reasoning_l": "x\ny\nz", "answer": "A"}
            for i in range(5)]
    first = curation.build_synthetic(recs, 42, "sw")
    assert first == curation.build_synthetic(recs, 42, "sw")
    assert all(i.task is Task.SYNTHETIC_CSW for i in first)


def inst(i, n):
    return CurationInstance(f"i{i}", "", "", "", Task.NATIVE, "sw", n)


def test_budget_examples(diagnostics):
    plan = curation.apply_token_budget([inst(0, 400_000), inst(1, 400_000), inst(2, 400_000)])
    assert (plan.selected, plan.total_tokens) == (["i0", "i1"], 800_000)
    assert curation.apply_token_budget([inst(0, 5), inst(1, 6)]).selected == ["i0", "i1"]
    plan = curation.apply_token_budget([inst(0, 1_200_000), inst(1, 1)])
    assert plan.selected == [] and plan.total_tokens == 0
    assert "instance-exceeds-budget" in diagnostics()


def test_budget_with_custom_counter():
    insts = [curation.make_instance("a", "x y", "z", "w", Task.NATIVE, "sw")]
    assert insts[0].token_count == 4
    assert curation.apply_token_budget(insts, 3, counter=len).selected == []


@given(st.lists(st.integers(0, 50), max_size=30), st.integers(0, 400), st.integers(0, 400))
def test_budget_monotone(counts, b1, b2):
    insts = [inst(i, c) for i, c in enumerate(counts)]
    lo, hi = sorted((b1, b2))
    small, big = curation.apply_token_budget(insts, lo), curation.apply_token_budget(insts, hi)
    assert set(small.selected) <= set(big.selected)


@pytest.mark.parametrize(
    "candidate, cleaned",
    [
        ("Translation: X", "X"),
        ("Better translation: the cat sat", "the cat sat"),
        ('"the cat sat"', "the cat sat"),
        ("Here is a better translation: ok", "ok"),
        ("the cat sat\nNote: I kept the tense", "the cat sat"),
    ],
)
def test_clean_candidate(candidate, cleaned):
    assert curation.clean_candidate(candidate) == cleaned


def test_empty_cleaned_candidate_falls_back():
    assert curation.mt_postprocess("Translation: ", "orig text") == curation.MTResult(False, "orig text")


@given(st.text(max_size=200), st.text(min_size=1, max_size=60))
def test_mt_output_length_bound(candidate, original):
    out = curation.mt_postprocess(candidate, original)
    n = len(original.split())
    assert len(out.text.split()) <= max(2 * n - 1, n)


@pytest.mark.parametrize(
    "text, result",
    [
        ("abcd" * 11, (False, "char-quadrigram")),
        ("abcd" * 10, (True, None)),
        ("#" * 11, (False, "symbol-run")),
        ("#" * 10, (True, None)),
        ("*" * 11, (False, "symbol-run")),
        ("one two three four " * 11, (False, "token-quadrigram")),
        ("one two three four " * 10, (True, None)),
        ("x" + "abcd" * 11 + "y", (False, "char-quadrigram")),
    ],
)
def test_repetition_filter(text, result):
    assert curation.repetition_filter(text) == curation.RepetitionResult(*result)


def test_build_native_cutoff():
    traces = [trace(i, " ".join(["w"] * (i + 1))) for i in range(20)] + [trace(99, "w", correct=False)]
    instances, cutoff = curation.build_native(traces, "sw", 0.5)
    assert cutoff == 10
    assert [i.id for i in instances] == [f"t{i}" for i in range(10)]
    assert curation.build_native(traces, "sw", cutoff=3)[0][-1].id == "t2"
